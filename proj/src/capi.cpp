#include "dbcat/dbcat.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>

#include "dbcat/catops.hpp"
#include "dbcat/harness.hpp"
#include "dbcat/text_format.hpp"
#include "dbcat/topos.hpp"

using namespace dbcat;

struct dbcat_universe {
  std::shared_ptr<const Universe> u;
};

struct dbcat_instance {
  Domain domain;
  Instance instance;
};

struct dbcat_instance_list {
  std::vector<dbcat_instance> items;
};

struct dbcat_morphism {
  std::shared_ptr<const Universe> u;
  Morphism m;
};

struct dbcat_report {
  SuiteReport report;
};

namespace {

thread_local std::string last_error;

dbcat_status to_status(ErrorCode code) {
  return static_cast<dbcat_status>(static_cast<int>(code) + 1);
}

// Runs `body`, translating exceptions into status codes.
template <class F>
dbcat_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return DBCAT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DBCAT_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DBCAT_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void same_domain(const Universe& u, const dbcat_instance* inst) {
  require(inst, "instance");
  if (!(inst->domain == u.domain()))
    fail(ErrorCode::DomainMismatch, "instance domain differs from the universe domain");
}

dbcat_instance* wrap(const Universe& u, const ClosedInstance& x) {
  return new dbcat_instance{u.domain(), x.as_instance()};
}

UniverseConfig make_config(Domain domain, int k_max, uint64_t max_universe,
                           uint64_t max_enumeration) {
  UniverseConfig cfg{std::move(domain), k_max};
  if (max_universe) cfg.max_universe = max_universe;
  if (max_enumeration) cfg.max_enumeration = max_enumeration;
  cfg.validate();
  return cfg;
}

template <class Op>
dbcat_status binary_object(const dbcat_universe* u, const dbcat_instance* a,
                           const dbcat_instance* b, dbcat_instance** out, Op op) {
  return guard([&] {
    require(u, "universe");
    require(out, "out");
    same_domain(*u->u, a);
    same_domain(*u->u, b);
    *out = wrap(*u->u, op(a->instance, b->instance, *u->u));
  });
}

SuiteBounds bounds_for(const Universe& u, size_t max_relations) {
  SuiteBounds b = default_bounds(u.config());
  if (max_relations) b.max_relations = max_relations;
  return b;
}

}  // namespace

extern "C" {

const char* dbcat_status_name(dbcat_status status) {
  if (status == DBCAT_OK) return "Ok";
  if (status == DBCAT_INTERNAL_ERROR) return "InternalError";
  const int i = static_cast<int>(status) - 1;
  if (i < 0 || i > static_cast<int>(ErrorCode::InvalidArgument)) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(i)).data();
}

const char* dbcat_last_error(void) { return last_error.c_str(); }

void dbcat_string_free(char* s) { std::free(s); }

dbcat_status dbcat_universe_create(const char* const* symbols, size_t count, int k_max,
                                   uint64_t max_universe, uint64_t max_enumeration,
                                   dbcat_universe** out) {
  return guard([&] {
    require(out, "out");
    if (count) require(symbols, "symbols");
    std::vector<std::string> syms;
    for (size_t i = 0; i < count; ++i) {
      require(symbols[i], "symbol");
      syms.emplace_back(symbols[i]);
    }
    auto cfg = make_config(Domain(std::move(syms)), k_max, max_universe, max_enumeration);
    *out = new dbcat_universe{std::make_shared<const Universe>(std::move(cfg))};
  });
}

dbcat_status dbcat_universe_for_instance(const dbcat_instance* inst, int k_max,
                                         uint64_t max_universe, uint64_t max_enumeration,
                                         dbcat_universe** out) {
  return guard([&] {
    require(inst, "instance");
    require(out, "out");
    auto cfg = make_config(inst->domain, k_max, max_universe, max_enumeration);
    auto u = std::make_shared<const Universe>(std::move(cfg));
    u->validate(inst->instance);
    *out = new dbcat_universe{std::move(u)};
  });
}

void dbcat_universe_free(dbcat_universe* u) { delete u; }

dbcat_status dbcat_instance_load(const char* path, dbcat_instance** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    LoadedInstance li = load_instance_file(path);
    *out = new dbcat_instance{std::move(li.domain), std::move(li.instance)};
  });
}

dbcat_status dbcat_instance_parse(const char* text, dbcat_instance** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    LoadedInstance li = parse_instance_text(text);
    *out = new dbcat_instance{std::move(li.domain), std::move(li.instance)};
  });
}

dbcat_status dbcat_instance_to_text(const dbcat_instance* inst, char** out) {
  return guard([&] {
    require(inst, "instance");
    require(out, "out");
    *out = copy_string(write_instance_text(inst->domain, inst->instance));
  });
}

size_t dbcat_instance_size(const dbcat_instance* inst) {
  return inst ? inst->instance.relations().size() : 0;
}

void dbcat_instance_free(dbcat_instance* inst) { delete inst; }

dbcat_status dbcat_eval(const dbcat_universe* u, const dbcat_instance* inst, const char* query,
                        dbcat_instance** out) {
  return guard([&] {
    require(u, "universe");
    require(query, "query");
    require(out, "out");
    same_domain(*u->u, inst);
    u->u->validate(inst->instance);
    QueryTerm q = parse(query, schema_of(inst->instance), inst->domain);
    Relation r = eval(q, inst->instance);
    std::optional<int> arity = q.arity();
    if (!r.is_bottom()) arity = r.arity();
    *out = new dbcat_instance{inst->domain, Instance{std::vector<Label>{{"result", arity, r}}}};
  });
}

dbcat_status dbcat_power_view(const dbcat_universe* u, const dbcat_instance* inst,
                              dbcat_instance** out) {
  return guard([&] {
    require(u, "universe");
    require(out, "out");
    same_domain(*u->u, inst);
    *out = wrap(*u->u, power_view(inst->instance, *u->u));
  });
}

dbcat_status dbcat_total_object(const dbcat_universe* u, dbcat_instance** out) {
  return guard([&] {
    require(u, "universe");
    require(out, "out");
    *out = wrap(*u->u, total_object(*u->u));
  });
}

dbcat_status dbcat_match(const dbcat_universe* u, const dbcat_instance* a,
                         const dbcat_instance* b, dbcat_instance** out) {
  return binary_object(u, a, b, out, [](auto& x, auto& y, auto& uu) { return matching(x, y, uu); });
}

dbcat_status dbcat_merge(const dbcat_universe* u, const dbcat_instance* a,
                         const dbcat_instance* b, dbcat_instance** out) {
  return binary_object(u, a, b, out, [](auto& x, auto& y, auto& uu) { return merging(x, y, uu); });
}

dbcat_status dbcat_hom_object(const dbcat_universe* u, const dbcat_instance* b,
                              const dbcat_instance* c, dbcat_instance** out) {
  return binary_object(u, b, c, out,
                       [](auto& x, auto& y, auto& uu) { return hom_object(x, y, uu); });
}

dbcat_status dbcat_distance(const dbcat_universe* u, const dbcat_instance* a,
                            const dbcat_instance* b, dbcat_instance** out) {
  return binary_object(u, a, b, out, [](auto& x, auto& y, auto& uu) { return distance(x, y, uu); });
}

dbcat_status dbcat_iso(const dbcat_universe* u, const dbcat_instance* a, const dbcat_instance* b,
                       int* is_iso) {
  return guard([&] {
    require(u, "universe");
    require(is_iso, "out");
    same_domain(*u->u, a);
    same_domain(*u->u, b);
    *is_iso = iso(a->instance, b->instance, *u->u) ? 1 : 0;
  });
}

dbcat_status dbcat_omega_chain(const dbcat_universe* u, const dbcat_instance* a, int steps,
                               dbcat_instance_list** out) {
  return guard([&] {
    require(u, "universe");
    require(out, "out");
    same_domain(*u->u, a);
    auto list = std::make_unique<dbcat_instance_list>();
    for (const auto& x : omega_chain(a->instance, *u->u, steps))
      list->items.push_back({u->u->domain(), x.as_instance()});
    *out = list.release();
  });
}

size_t dbcat_instance_list_size(const dbcat_instance_list* list) {
  return list ? list->items.size() : 0;
}

const dbcat_instance* dbcat_instance_list_get(const dbcat_instance_list* list, size_t index) {
  if (!list || index >= list->items.size()) return nullptr;
  return &list->items[index];
}

void dbcat_instance_list_free(dbcat_instance_list* list) { delete list; }

dbcat_status dbcat_morphism_load(const char* path, int k_max, uint64_t max_universe,
                                 uint64_t max_enumeration, dbcat_morphism** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    MorphismFile mf = load_morphism_file(path);
    LoadedInstance src = load_instance_file(mf.source);
    LoadedInstance tgt = load_instance_file(mf.target);
    if (!(src.domain == tgt.domain))
      fail(ErrorCode::DomainMismatch, "source and target use different domains");
    auto u = std::make_shared<const Universe>(
        make_config(src.domain, k_max, max_universe, max_enumeration));
    Morphism m = atomic_morphism(src.instance, tgt.instance, mf.queries, *u);
    *out = new dbcat_morphism{std::move(u), std::move(m)};
  });
}

dbcat_status dbcat_morphism_atomic(const dbcat_universe* u, const dbcat_instance* a,
                                   const dbcat_instance* b, const char* const* queries,
                                   size_t count, dbcat_morphism** out) {
  return guard([&] {
    require(u, "universe");
    require(out, "out");
    same_domain(*u->u, a);
    same_domain(*u->u, b);
    if (count) require(queries, "queries");
    std::vector<std::string> qs;
    for (size_t i = 0; i < count; ++i) {
      require(queries[i], "query");
      qs.emplace_back(queries[i]);
    }
    *out = new dbcat_morphism{u->u, atomic_morphism(a->instance, b->instance, qs, *u->u)};
  });
}

dbcat_status dbcat_morphism_compose(const dbcat_morphism* g, const dbcat_morphism* f,
                                    dbcat_morphism** out) {
  return guard([&] {
    require(g, "g");
    require(f, "f");
    require(out, "out");
    if (!(g->u->domain() == f->u->domain()))
      fail(ErrorCode::DomainMismatch, "arrows live over different domains");
    *out = new dbcat_morphism{f->u, compose(g->m, f->m)};
  });
}

dbcat_status dbcat_morphism_flux(const dbcat_morphism* m, dbcat_instance** out) {
  return guard([&] {
    require(m, "morphism");
    require(out, "out");
    *out = wrap(*m->u, m->m.flux());
  });
}

dbcat_status dbcat_morphism_describe(const dbcat_morphism* m, char** out) {
  return guard([&] {
    require(m, "morphism");
    require(out, "out");
    std::string text;
    for (const auto& line : describe_trees(m->m, m->u->domain())) text += line + "\n";
    *out = copy_string(text);
  });
}

dbcat_status dbcat_morphism_classify(const dbcat_morphism* m, int* mono, int* epi, int* iso_out) {
  return guard([&] {
    require(m, "morphism");
    if (mono) *mono = is_mono(m->m) ? 1 : 0;
    if (epi) *epi = is_epi(m->m) ? 1 : 0;
    if (iso_out) *iso_out = is_iso(m->m) ? 1 : 0;
  });
}

dbcat_status dbcat_morphism_equivalent(const dbcat_morphism* f, const dbcat_morphism* g,
                                       int* equivalent_out) {
  return guard([&] {
    require(f, "f");
    require(g, "g");
    require(equivalent_out, "out");
    *equivalent_out = equivalent(f->m, g->m) ? 1 : 0;
  });
}

void dbcat_morphism_free(dbcat_morphism* m) { delete m; }

dbcat_status dbcat_classify_subobject(const dbcat_universe* u, const dbcat_instance* a,
                                      const dbcat_instance* b, size_t max_relations,
                                      dbcat_report** out) {
  return guard([&] {
    require(u, "universe");
    require(out, "out");
    same_domain(*u->u, a);
    same_domain(*u->u, b);
    *out = new dbcat_report{
        classify_subobject(a->instance, b->instance, *u->u, bounds_for(*u->u, max_relations))};
  });
}

dbcat_status dbcat_run_suite(const dbcat_universe* u, const char* suite, size_t max_relations,
                             dbcat_report** out) {
  return guard([&] {
    require(u, "universe");
    require(suite, "suite");
    require(out, "out");
    *out = new dbcat_report{run_suite(suite, *u->u, bounds_for(*u->u, max_relations))};
  });
}

dbcat_status dbcat_report_to_text(const dbcat_report* r, int with_timing, char** out) {
  return guard([&] {
    require(r, "report");
    require(out, "out");
    *out = copy_string(format_report(r->report, with_timing != 0));
  });
}

int dbcat_report_passed(const dbcat_report* r) { return r && r->report.passed() ? 1 : 0; }

size_t dbcat_report_count(const dbcat_report* r, dbcat_law_status status) {
  if (!r) return 0;
  switch (status) {
    case DBCAT_LAW_PASS: return r->report.count(Status::Pass);
    case DBCAT_LAW_FAIL: return r->report.count(Status::Fail);
    case DBCAT_LAW_FLAGGED: return r->report.count(Status::Flagged);
  }
  return 0;
}

void dbcat_report_free(dbcat_report* r) { delete r; }

}  // extern "C"
