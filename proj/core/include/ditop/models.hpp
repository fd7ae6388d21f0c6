#ifndef DITOP_MODELS_HPP
#define DITOP_MODELS_HPP

#include "ditop/retracts.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ditop {

// One stage of a retract chain: retract the current table onto `targets`.
// Without an explicit assignment the stage is found by find_retract.
struct ChainStep {
  Direction direction = Direction::future;
  std::vector<GridComplex::Vertex> targets;
  // x -> (target vertex, witness path steps); witness runs x->target for
  // future stages and target->x for past ones
  std::optional<std::map<GridComplex::Vertex, std::pair<GridComplex::Vertex, std::vector<int>>>>
      assignment;
};

struct RetractChain {
  std::vector<ChainStep> steps;
};

struct ChainResult {
  bool passed = false;
  std::vector<std::string> failures;
  std::vector<HomTable> tables;    // tables[0] = base, tables[k] = after step k
  std::vector<RetractData> data;   // stage data on tables[k-1]
};

// Run and verify each stage on the successively restricted tables.
ChainResult run_chain(const HomTable& base, const RetractChain& chain);

struct ModelReport {
  bool passed = false;
  bool ext_covered = false;
  ChainResult chain;
  std::vector<std::string> failures;

  const HomTable& final_table() const { return chain.tables.back(); }
};

// Chain over the full vertex category of the grid, plus Ext(X) containment.
ModelReport verify_extremal_model(const GridComplex& g, const RetractChain& chain,
                                  const Budget& budget);

// Extremal objects of a finite exact table (minimal/maximal under
// hom-nonemptiness, cycles excluded as in the grid case).
ExtremalPoints table_extremal(const HomTable& t);

// True iff no proper subset A' of the final objects with Ext(X) included
// admits a retract in either direction.  Throws Error{subset_budget_exceeded}
// when 2^(|A|-|Ext|) exceeds the guard.
bool is_minimal(const GridComplex& g, const ModelReport& model,
                long long subset_budget = 4096,
                std::vector<std::vector<GridComplex::Vertex>>* minimal_targets = nullptr);

// Ext(X) embeds in the model's table with identical hom-sets.
bool check_bipartite_injection(const GridComplex& g, const ModelReport& model,
                               const Budget& budget);

// Loop-free case: the model's extremal objects are exactly Ext(X) and the
// bipartite hom-tables agree.  Throws Error{not_a_pospace} on directed cycles.
bool check_bipartite_iso(const GridComplex& g, const ModelReport& model, const Budget& budget);

} // namespace ditop

#endif
