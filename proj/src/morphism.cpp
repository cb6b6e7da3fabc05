#include "dbcat/morphism.hpp"

#include <algorithm>

namespace dbcat {

namespace {

ViewMap make_view_map(const QueryTerm& q, const Instance& source, Relation result) {
  ViewMap vm{q, {}, {}, std::move(result)};
  for (const auto& name : base_names(q)) {
    const Label* l = source.find_label(name);
    if (!l) fail(ErrorCode::UnknownRelation, "unknown relation '" + name + "'");
    vm.arg_names.push_back(name);
    vm.args.push_back(l->relation);
  }
  return vm;
}

void collect_arguments(const ViewTree& t, std::vector<Relation>& out) {
  if (!t.below) {
    out.insert(out.end(), t.node.args.begin(), t.node.args.end());
    return;
  }
  for (const auto& g : *t.below)
    for (const auto& s : g.subtrees) collect_arguments(*s, out);
}

TreePtr graft_onto(const TreePtr& tree, const std::vector<TreePtr>& lower) {
  auto out = std::make_shared<ViewTree>(ViewTree{tree->node, std::vector<Graft>{}});
  if (!tree->below) {
    for (std::size_t i = 0; i < tree->node.args.size(); ++i) {
      Graft g{tree->node.arg_names[i], tree->node.args[i], {}};
      for (const auto& f : lower)
        if (f->node.result == g.arg) g.subtrees.push_back(f);
      out->below->push_back(std::move(g));
    }
    return out;
  }
  for (const auto& g : *tree->below) {
    Graft copy{g.name, g.arg, {}};
    for (const auto& s : g.subtrees) copy.subtrees.push_back(graft_onto(s, lower));
    out->below->push_back(std::move(copy));
  }
  return out;
}

bool meets(const std::vector<Relation>& args, const std::vector<Relation>& results) {
  for (const auto& a : args)
    if (std::find(results.begin(), results.end(), a) != results.end()) return true;
  return false;
}

}  // namespace

std::vector<Relation> tree_arguments(const ViewTree& tree) {
  std::vector<Relation> out;
  collect_arguments(tree, out);
  canonicalize(out);
  return out;
}

QueryTerm flatten_tree(const ViewTree& tree) {
  if (!tree.below) return tree.node.query;
  std::map<std::string, QueryTerm> subs;
  for (const auto& g : *tree.below)
    subs.emplace(g.name, g.subtrees.empty() ? QueryTerm::bot() : flatten_tree(*g.subtrees.front()));
  return substitute_bases(tree.node.query, subs);
}

const std::vector<TreePtr>& Morphism::trees() const {
  std::call_once(d_->once, [this] {
    if (d_->build) d_->trees = d_->build();
  });
  return d_->trees;
}

std::vector<Relation> Morphism::results() const {
  std::vector<Relation> out;
  for (const auto& t : trees()) out.push_back(t->node.result);
  canonicalize(out);
  return out;
}

Morphism Morphism::make(Instance source, Instance target, ClosedInstance t_source,
                        ClosedInstance t_target, ClosedInstance flux, Kind kind,
                        std::function<std::vector<TreePtr>()> build) {
  auto d = std::make_shared<Data>();
  d->source = std::make_shared<const Instance>(std::move(source));
  d->target = std::make_shared<const Instance>(std::move(target));
  d->t_source = std::make_shared<const ClosedInstance>(std::move(t_source));
  d->t_target = std::make_shared<const ClosedInstance>(std::move(t_target));
  d->flux = std::move(flux);
  d->kind = kind;
  d->build = std::move(build);
  return Morphism(std::move(d));
}

Morphism atomic_morphism(const Instance& a, const Instance& b,
                         const std::vector<QueryTerm>& queries, const Universe& u) {
  Instance src = a.with_auto_labels();
  Instance tgt = b.with_auto_labels();
  auto trees = std::make_shared<std::vector<TreePtr>>();
  std::vector<Relation> results;
  for (const auto& q : queries) {
    Relation r = eval(q, src);
    if (!r.is_bottom() && !tgt.contains(r))
      fail(ErrorCode::ResultNotInTarget, "result of " + to_string(q) + " is " +
                                             to_string(r, u.domain()) + ", not in the target");
    results.push_back(r);
    trees->push_back(std::make_shared<const ViewTree>(
        ViewTree{make_view_map(q, src, std::move(r)), std::nullopt}));
  }
  ClosedInstance flux = power_view(Instance{std::move(results)}, u);
  ClosedInstance ts = power_view(src, u);
  ClosedInstance tt = power_view(tgt, u);
  return Morphism::make(std::move(src), std::move(tgt), std::move(ts), std::move(tt),
                        std::move(flux), Morphism::Kind::Atomic,
                        [trees] { return *trees; });
}

Morphism atomic_morphism(const Instance& a, const Instance& b,
                         const std::vector<std::string>& queries, const Universe& u) {
  Instance src = a.with_auto_labels();
  Schema schema = schema_of(src);
  std::vector<QueryTerm> terms;
  for (const auto& q : queries) terms.push_back(parse(q, schema, u.domain()));
  return atomic_morphism(src, b, terms, u);
}

Morphism semantic_morphism(const Instance& a, const Instance& b, const ClosedInstance& flux,
                           const Universe& u) {
  Instance src = a.with_auto_labels();
  Instance tgt = b.with_auto_labels();
  auto sat = u.saturate(src);
  ClosedInstance tt = power_view(tgt, u);
  if (!flux.is_subset_of(sat->closed) || !flux.is_subset_of(tt))
    fail(ErrorCode::FluxOutOfRange, "flux is not contained in both closures");
  auto build = [sat, src, flux] {
    std::vector<TreePtr> trees;
    for (const auto& v : flux.relations())
      trees.push_back(std::make_shared<const ViewTree>(
          ViewTree{make_view_map(sat->generator_of(v), src, v), std::nullopt}));
    return trees;
  };
  return Morphism::make(src, std::move(tgt), sat->closed, std::move(tt), flux,
                        Morphism::Kind::Semantic, build);
}

Morphism empty_arrow(const Instance& a, const Instance& b, const Universe& u) {
  return atomic_morphism(a, b, std::vector<QueryTerm>{}, u);
}

Morphism identity(const Instance& a, const Universe& u) {
  return semantic_morphism(a, a, power_view(a, u), u);
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.d_->target != g.d_->source && !(f.target() == g.source()))
    fail(ErrorCode::DomainMismatch, "codomain of the first arrow differs from the domain of the second");
  auto build = [g, f] {
    const auto& lower = f.trees();
    std::vector<Relation> results;
    for (const auto& t : lower) results.push_back(t->node.result);
    std::vector<TreePtr> out;
    for (const auto& t : g.trees())
      if (meets(tree_arguments(*t), results)) out.push_back(graft_onto(t, lower));
    return out;
  };
  auto d = std::make_shared<Morphism::Data>();
  d->source = f.d_->source;
  d->target = g.d_->target;
  d->t_source = f.d_->t_source;
  d->t_target = g.d_->t_target;
  d->flux = closed_intersection(g.flux(), f.flux());
  d->kind = Morphism::Kind::Composite;
  d->build = std::move(build);
  return Morphism(std::move(d));
}

bool equivalent(const Morphism& f, const Morphism& g) { return f.flux() == g.flux(); }
bool is_mono(const Morphism& f) { return f.flux() == f.t_source(); }
bool is_epi(const Morphism& f) { return f.flux() == f.t_target(); }
bool is_iso(const Morphism& f) { return is_mono(f) && is_epi(f); }

Morphism lift_T(const Morphism& f, const Universe& u) {
  Instance ta = f.t_source().as_instance();
  Instance tb = f.t_target().as_instance();
  std::vector<QueryTerm> queries;
  for (const auto& v : f.flux().relations()) {
    const Label* l = ta.label_of(v);
    queries.push_back(QueryTerm::base(l->name, l->declared_arity));
  }
  return atomic_morphism(ta, tb, queries, u);
}

Morphism invert(const Morphism& f, const Universe& u) {
  return semantic_morphism(f.target(), f.source(), f.flux(), u);
}

std::vector<std::pair<Relation, Relation>> totalize(const Morphism& f, const Universe& u) {
  if (!is_closed(f.source(), u) || !is_closed(f.target(), u))
    fail(ErrorCode::NotClosedDomain, "totalize needs closed source and target");
  std::vector<std::pair<Relation, Relation>> table;
  for (const auto& v : f.source().relations())
    table.emplace_back(v, f.flux().contains(v) ? v : Relation::bottom());
  return table;
}

bool arrow_po_leq(const Morphism& f, const Morphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    fail(ErrorCode::NotParallel, "arrows are not parallel");
  return f.flux().is_subset_of(g.flux());
}

std::vector<ClosedInstance> semantic_homset(const Instance& a, const Instance& b,
                                            const Universe& u) {
  return closed_subsets(closed_intersection(power_view(a, u), power_view(b, u)), u);
}

std::vector<Morphism> homset_arrows(const Instance& a, const Instance& b, const Universe& u) {
  std::vector<Morphism> out;
  for (const auto& x : semantic_homset(a, b, u)) out.push_back(semantic_morphism(a, b, x, u));
  return out;
}

std::vector<std::string> describe_trees(const Morphism& f, const Domain& domain) {
  std::vector<std::string> out;
  for (const auto& t : f.trees())
    out.push_back(to_string(flatten_tree(*t)) + " -> " + to_string(t->node.result, domain));
  return out;
}

const std::vector<Morphism>& HomCache::operator()(const Instance& a, const Instance& b) {
  auto it = cache_.find(KeyRef{a.relations(), b.relations()});
  if (it == cache_.end())
    it = cache_.emplace(Key{a.relations(), b.relations()}, homset_arrows(a, b, u_)).first;
  return it->second;
}

}  // namespace dbcat
