// Command-line front end. Talks to the library only through dbcat.h.
//
// Exit status: 0 on success, 1 when a report contains a FAIL entry, 2 on
// errors (bad input, I/O, bounds).

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbcat/dbcat.h"

namespace {

struct CliError {
  dbcat_status status;
  std::string message;
};

void check(dbcat_status s) {
  if (s != DBCAT_OK) throw CliError{s, dbcat_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using InstancePtr = std::unique_ptr<dbcat_instance, Deleter<dbcat_instance, dbcat_instance_free>>;
using UniversePtr = std::unique_ptr<dbcat_universe, Deleter<dbcat_universe, dbcat_universe_free>>;
using MorphismPtr = std::unique_ptr<dbcat_morphism, Deleter<dbcat_morphism, dbcat_morphism_free>>;
using ReportPtr = std::unique_ptr<dbcat_report, Deleter<dbcat_report, dbcat_report_free>>;
using ListPtr =
    std::unique_ptr<dbcat_instance_list, Deleter<dbcat_instance_list, dbcat_instance_list_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  dbcat_string_free(s);
  return out;
}

// DBCAT_ENUM_BOUND caps enumerations (closed subsets, instance spaces).
std::uint64_t enum_bound() {
  const char* env = std::getenv("DBCAT_ENUM_BOUND");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0)
    throw CliError{DBCAT_INVALID_ARGUMENT, "DBCAT_ENUM_BOUND must be a positive integer"};
  return v;
}

InstancePtr load(const std::string& path) {
  dbcat_instance* out = nullptr;
  check(dbcat_instance_load(path.c_str(), &out));
  return InstancePtr(out);
}

UniversePtr universe_for(const dbcat_instance* inst, int k_max) {
  dbcat_universe* out = nullptr;
  check(dbcat_universe_for_instance(inst, k_max, 0, enum_bound(), &out));
  return UniversePtr(out);
}

UniversePtr universe_over(const std::vector<std::string>& domain, int k_max) {
  std::vector<const char*> syms;
  for (const auto& s : domain) syms.push_back(s.c_str());
  dbcat_universe* out = nullptr;
  check(dbcat_universe_create(syms.data(), syms.size(), k_max, 0, enum_bound(), &out));
  return UniversePtr(out);
}

MorphismPtr load_morphism(const std::string& path, int k_max) {
  dbcat_morphism* out = nullptr;
  check(dbcat_morphism_load(path.c_str(), k_max, 0, enum_bound(), &out));
  return MorphismPtr(out);
}

void print(const dbcat_instance* inst) {
  char* text = nullptr;
  check(dbcat_instance_to_text(inst, &text));
  std::cout << take(text);
}

int print_report(ReportPtr report, bool timing) {
  char* text = nullptr;
  check(dbcat_report_to_text(report.get(), timing ? 1 : 0, &text));
  std::cout << take(text);
  return dbcat_report_passed(report.get()) ? 0 : 1;
}

using Binary = dbcat_status (*)(const dbcat_universe*, const dbcat_instance*,
                                const dbcat_instance*, dbcat_instance**);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive checker for the category of databases and SPJRU views"};
  app.require_subcommand(1);

  int k_max = 1;
  std::string file_a, file_b, query;
  std::vector<std::string> domain{"a", "b"};
  int steps = 3;
  std::size_t max_relations = 0;
  bool timing = false;
  std::string suite;
  std::function<int()> action;

  auto kmax_opt = [&](CLI::App* c) {
    c->add_option("--kmax", k_max, "Arity cap of the universe")->check(CLI::Range(1, 8));
  };

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a query over an instance");
  eval_cmd->add_option("instance", file_a)->required();
  eval_cmd->add_option("query", query)->required();
  kmax_opt(eval_cmd);
  eval_cmd->callback([&] {
    action = [&] {
      auto a = load(file_a);
      auto u = universe_for(a.get(), k_max);
      dbcat_instance* r = nullptr;
      check(dbcat_eval(u.get(), a.get(), query.c_str(), &r));
      InstancePtr res(r);
      print(res.get());
      return 0;
    };
  });

  auto* closure_cmd = app.add_subcommand("closure", "Print the power-view TA");
  closure_cmd->add_option("instance", file_a)->required();
  kmax_opt(closure_cmd);
  closure_cmd->callback([&] {
    action = [&] {
      auto a = load(file_a);
      auto u = universe_for(a.get(), k_max);
      dbcat_instance* r = nullptr;
      check(dbcat_power_view(u.get(), a.get(), &r));
      InstancePtr res(r);
      print(res.get());
      return 0;
    };
  });

  auto* total_cmd = app.add_subcommand("total", "Print the total object of a configuration");
  total_cmd->add_option("--domain", domain, "Constants, comma separated")->delimiter(',');
  kmax_opt(total_cmd);
  total_cmd->callback([&] {
    action = [&] {
      auto u = universe_over(domain, k_max);
      dbcat_instance* r = nullptr;
      check(dbcat_total_object(u.get(), &r));
      InstancePtr res(r);
      print(res.get());
      return 0;
    };
  });

  auto binary = [&](const char* name, const char* help, Binary fn) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("A", file_a)->required();
    cmd->add_option("B", file_b)->required();
    kmax_opt(cmd);
    cmd->callback([&, fn] {
      action = [&, fn] {
        auto a = load(file_a);
        auto b = load(file_b);
        auto u = universe_for(a.get(), k_max);
        dbcat_instance* r = nullptr;
        check(fn(u.get(), a.get(), b.get(), &r));
        InstancePtr res(r);
        print(res.get());
        return 0;
      };
    });
  };
  binary("match", "Matching TA meet TB", dbcat_match);
  binary("merge", "Merging T(A u B)", dbcat_merge);
  binary("homobj", "Internal hom B^A", dbcat_hom_object);
  binary("distance", "Database distance", dbcat_distance);

  auto* chain_cmd = app.add_subcommand("chain", "Print the omega chain of an instance");
  chain_cmd->add_option("instance", file_a)->required();
  chain_cmd->add_option("--steps", steps)->check(CLI::Range(1, 64));
  kmax_opt(chain_cmd);
  chain_cmd->callback([&] {
    action = [&] {
      auto a = load(file_a);
      auto u = universe_for(a.get(), k_max);
      dbcat_instance_list* l = nullptr;
      check(dbcat_omega_chain(u.get(), a.get(), steps, &l));
      ListPtr list(l);
      for (std::size_t i = 0; i < dbcat_instance_list_size(list.get()); ++i) {
        std::cout << "# step " << i << "\n";
        print(dbcat_instance_list_get(list.get(), i));
        std::cout << "\n";
      }
      return 0;
    };
  });

  auto* compose_cmd = app.add_subcommand("compose", "Compose morphism files f then g");
  compose_cmd->add_option("f", file_a)->required();
  compose_cmd->add_option("g", file_b)->required();
  kmax_opt(compose_cmd);
  compose_cmd->callback([&] {
    action = [&] {
      auto f = load_morphism(file_a, k_max);
      auto g = load_morphism(file_b, k_max);
      dbcat_morphism* m = nullptr;
      check(dbcat_morphism_compose(g.get(), f.get(), &m));
      MorphismPtr gf(m);
      char* trees = nullptr;
      check(dbcat_morphism_describe(gf.get(), &trees));
      std::cout << "# trees\n" << take(trees) << "# flux\n";
      dbcat_instance* x = nullptr;
      check(dbcat_morphism_flux(gf.get(), &x));
      InstancePtr flux(x);
      print(flux.get());
      return 0;
    };
  });

  auto* flux_cmd = app.add_subcommand("flux", "Print the information flux of a morphism file");
  flux_cmd->add_option("morphism", file_a)->required();
  kmax_opt(flux_cmd);
  flux_cmd->callback([&] {
    action = [&] {
      auto f = load_morphism(file_a, k_max);
      dbcat_instance* x = nullptr;
      check(dbcat_morphism_flux(f.get(), &x));
      InstancePtr flux(x);
      print(flux.get());
      return 0;
    };
  });

  auto* classify_cmd = app.add_subcommand("classify", "Report whether a morphism is mono, epi, iso");
  classify_cmd->add_option("morphism", file_a)->required();
  kmax_opt(classify_cmd);
  classify_cmd->callback([&] {
    action = [&] {
      auto f = load_morphism(file_a, k_max);
      int mono = 0, epi = 0, iso = 0;
      check(dbcat_morphism_classify(f.get(), &mono, &epi, &iso));
      auto yn = [](int v) { return v ? "yes" : "no"; };
      std::cout << "mono " << yn(mono) << "\nepi " << yn(epi) << "\niso " << yn(iso) << "\n";
      return 0;
    };
  });

  auto* sub_cmd = app.add_subcommand("classify-subobject", "Classify the monic A -> B");
  sub_cmd->add_option("A", file_a)->required();
  sub_cmd->add_option("B", file_b)->required();
  sub_cmd->add_option("--max-relations", max_relations, "Relations per test instance");
  sub_cmd->add_flag("--timing", timing);
  kmax_opt(sub_cmd);
  sub_cmd->callback([&] {
    action = [&] {
      auto a = load(file_a);
      auto b = load(file_b);
      auto u = universe_for(a.get(), k_max);
      dbcat_report* r = nullptr;
      check(dbcat_classify_subobject(u.get(), a.get(), b.get(), max_relations, &r));
      return print_report(ReportPtr(r), timing);
    };
  });

  auto suite_cmd = [&](CLI::App* cmd) {
    cmd->add_option("--domain", domain, "Constants, comma separated")->delimiter(',');
    cmd->add_option("--max-relations", max_relations, "Relations per enumerated instance");
    cmd->add_flag("--timing", timing, "Append timing to the summary line");
    kmax_opt(cmd);
    cmd->callback([&] {
      action = [&] {
        auto u = universe_over(domain, k_max);
        dbcat_report* r = nullptr;
        check(dbcat_run_suite(u.get(), suite.c_str(), max_relations, &r));
        return print_report(ReportPtr(r), timing);
      };
    });
  };
  auto* check_cmd = app.add_subcommand("check", "Run a law suite over every small instance");
  check_cmd->add_option("suite", suite)->required();
  suite_cmd(check_cmd);
  auto* probe_cmd = app.add_subcommand("probe", "Run a law suite (flag form)");
  probe_cmd->add_option("--suite", suite)->required();
  suite_cmd(probe_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const CliError& e) {
    std::cerr << "error: " << dbcat_status_name(e.status) << ": " << e.message << "\n";
    return 2;
  }
}
