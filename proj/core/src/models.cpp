#include "ditop/models.hpp"
#include "ditop/errors.hpp"

#include <algorithm>
#include <set>

namespace ditop {

namespace {

std::optional<RetractData> step_data(const HomTable& table, const ChainStep& step,
                                     std::string* why) {
  std::vector<int> A;
  for (GridComplex::Vertex v : step.targets) {
    auto idx = table.index_of(v);
    if (!idx) {
      if (why) *why = "target " + table.grid().label_of(v) + " is not an object of the stage";
      return std::nullopt;
    }
    A.push_back(*idx);
  }
  if (!step.assignment) {
    auto found = find_retract(table, A, step.direction);
    if (!found && why) *why = "no retract found onto the requested objects";
    return found;
  }
  RetractData data;
  data.direction = step.direction;
  std::sort(A.begin(), A.end());
  A.erase(std::unique(A.begin(), A.end()), A.end());
  data.codomain = A;
  data.assign.resize(table.object_count());
  for (int x = 0; x < table.object_count(); ++x) {
    GridComplex::Vertex vx = table.object(x);
    auto it = step.assignment->find(vx);
    if (it == step.assignment->end()) {
      if (why) *why = "assignment misses object " + table.grid().label_of(vx);
      return std::nullopt;
    }
    auto tgt = table.index_of(it->second.first);
    if (!tgt) {
      if (why) *why = "assignment target is not an object";
      return std::nullopt;
    }
    LatticePath witness;
    witness.steps = it->second.second;
    std::optional<int> cls;
    if (step.direction == Direction::future) {
      witness.start = vx;
      cls = table.hom(x, *tgt).class_of(witness);
    } else {
      witness.start = it->second.first;
      cls = table.hom(*tgt, x).class_of(witness);
    }
    if (!cls) {
      if (why) *why = "witness path for " + table.grid().label_of(vx) + " names no class";
      return std::nullopt;
    }
    data.assign[x] = {*tgt, *cls};
  }
  return data;
}

} // namespace

ChainResult run_chain(const HomTable& base, const RetractChain& chain) {
  ChainResult result;
  result.passed = true;
  result.tables.push_back(base);
  for (size_t k = 0; k < chain.steps.size(); ++k) {
    const HomTable& cur = result.tables.back();
    std::string why;
    auto data = step_data(cur, chain.steps[k], &why);
    if (!data) {
      result.passed = false;
      result.failures.push_back("stage " + std::to_string(k + 1) + ": " + why);
      return result;
    }
    RetractReport report = verify_retract(cur, *data);
    if (!report.passed) {
      result.passed = false;
      for (const std::string& f : report.failures)
        result.failures.push_back("stage " + std::to_string(k + 1) + ": " + f);
      return result;
    }
    result.data.push_back(*data);
    result.tables.push_back(cur.restrict(data->codomain));
  }
  return result;
}

ModelReport verify_extremal_model(const GridComplex& g, const RetractChain& chain,
                                  const Budget& budget) {
  ModelReport model;
  HomTable base = HomTable::full_subcategory(g, g.allowed_vertices(), budget);
  model.chain = run_chain(base, chain);
  model.failures = model.chain.failures;

  std::vector<GridComplex::Vertex> ext = extremal_points(g).all();
  const HomTable& final_table = model.chain.tables.back();
  model.ext_covered = true;
  for (GridComplex::Vertex v : ext) {
    if (!final_table.index_of(v)) {
      model.ext_covered = false;
      model.failures.push_back("extremal point " + g.label_of(v) + " missing from the model");
    }
  }
  model.passed = model.chain.passed && model.ext_covered;
  return model;
}

ExtremalPoints table_extremal(const HomTable& t) {
  ExtremalPoints out;
  int n = t.object_count();
  for (int a = 0; a < n; ++a) {
    bool on_cycle = false;
    for (int x = 0; x < n && !on_cycle; ++x) {
      // a nontrivial endomorphism or a two-way connection marks a cycle
      if (x == a && t.hom(a, a).classes.size() > 1) on_cycle = true;
      if (x != a && !t.hom(a, x).classes.empty() && !t.hom(x, a).classes.empty()) on_cycle = true;
    }
    bool minimal = !on_cycle, maximal = !on_cycle;
    for (int x = 0; x < n; ++x) {
      if (x == a) continue;
      if (!t.hom(x, a).classes.empty()) minimal = false;
      if (!t.hom(a, x).classes.empty()) maximal = false;
    }
    if (minimal) out.minimals.push_back(t.object(a));
    if (maximal) out.maximals.push_back(t.object(a));
  }
  return out;
}

bool is_minimal(const GridComplex& g, const ModelReport& model, long long subset_budget,
                std::vector<std::vector<GridComplex::Vertex>>* minimal_targets) {
  const HomTable& t = model.final_table();
  std::vector<GridComplex::Vertex> ext = extremal_points(g).all();
  std::vector<int> free_objects; // objects we may drop
  std::set<GridComplex::Vertex> ext_set(ext.begin(), ext.end());
  for (int i = 0; i < t.object_count(); ++i) {
    if (!ext_set.count(t.object(i))) free_objects.push_back(i);
  }
  if (free_objects.size() >= 63 ||
      (1LL << free_objects.size()) - 1 > subset_budget)
    throw Error(Errc::subset_budget_exceeded, "too many subsets to scan");

  bool minimal = true;
  long long all = (1LL << free_objects.size()) - 1; // skip the full set
  for (long long mask = 0; mask < all; ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < t.object_count(); ++i) {
      if (ext_set.count(t.object(i))) subset.push_back(i);
    }
    for (size_t j = 0; j < free_objects.size(); ++j) {
      if (mask & (1LL << j)) subset.push_back(free_objects[j]);
    }
    std::sort(subset.begin(), subset.end());
    if (find_retract(t, subset, Direction::future) || find_retract(t, subset, Direction::past)) {
      minimal = false;
      if (!minimal_targets) return false;
      std::vector<GridComplex::Vertex> verts;
      for (int i : subset) verts.push_back(t.object(i));
      minimal_targets->push_back(std::move(verts));
    }
  }
  return minimal;
}

bool check_bipartite_injection(const GridComplex& g, const ModelReport& model,
                               const Budget& budget) {
  if (!model.chain.passed) return false;
  const HomTable& t = model.final_table();
  HomTable direct = bipartite_graph(g, budget);
  for (int a = 0; a < direct.object_count(); ++a) {
    if (!t.index_of(direct.object(a))) return false;
  }
  for (int a = 0; a < direct.object_count(); ++a) {
    for (int b = 0; b < direct.object_count(); ++b) {
      int ia = *t.index_of(direct.object(a));
      int ib = *t.index_of(direct.object(b));
      const auto& lhs = direct.hom(a, b).classes;
      const auto& rhs = t.hom(ia, ib).classes;
      if (lhs.size() != rhs.size()) return false;
      for (size_t k = 0; k < lhs.size(); ++k) {
        if (lhs[k].canonical.steps != rhs[k].canonical.steps) return false;
      }
    }
  }
  return true;
}

bool check_bipartite_iso(const GridComplex& g, const ModelReport& model, const Budget& budget) {
  if (!g.loop_free())
    throw Error(Errc::not_a_pospace, "grid has a directed cycle");
  if (!check_bipartite_injection(g, model, budget)) return false;
  // the model's own extremal objects must already be Ext(X)
  std::vector<GridComplex::Vertex> ext = extremal_points(g).all();
  std::vector<GridComplex::Vertex> text = table_extremal(model.final_table()).all();
  return ext == text;
}

} // namespace ditop
