#ifndef DITOP_RETRACTS_HPP
#define DITOP_RETRACTS_HPP

#include "ditop/category.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace ditop {

enum class Direction { future, past };

inline const char* direction_name(Direction d) {
  return d == Direction::future ? "future" : "past";
}

// Per-object reflection data: x maps to the object `target` of A with witness
// class x -> target (future) or target -> x (past).
struct RetractAssignment {
  int target = -1;  // object index in the table
  int witness = -1; // class index in hom(x, target) / hom(target, x)

  bool operator==(const RetractAssignment&) const = default;
};

struct RetractData {
  Direction direction = Direction::future;
  std::vector<int> codomain;             // sorted object indices forming A
  std::vector<RetractAssignment> assign; // indexed by table object
};

struct RetractReport {
  bool passed = false;
  std::vector<std::string> failures;
};

// Bijection criterion: for every object x and every a in A, composition with
// the witness is a bijection hom(x^+, a) -> hom(x, a) (future; dual for past),
// and the assignment is the identity on A.  Throws Error{inexact_hom_set} when
// a referenced hom-set is truncated.
RetractReport verify_retract(const HomTable& table, const RetractData& data);

// Deterministic search: first candidate (target, witness) in canonical order
// satisfying the bijection criterion for each object; nothing if some object
// admits none.
std::optional<RetractData> find_retract(const HomTable& table, const std::vector<int>& A,
                                        Direction direction);

struct InducedFunctor {
  Direction direction = Direction::future;
  std::vector<int> object_map;                      // object -> object of A
  std::map<std::tuple<int, int, int>, int> arrows;  // (a, b, class) -> image class

  std::optional<int> apply(int a, int b, int cls) const {
    auto it = arrows.find({a, b, cls});
    if (it == arrows.end()) return std::nullopt;
    return it->second;
  }
};

// Unique fill-in of the naturality square for every class; nothing when some
// square has no (or no unique) fill-in — which happens exactly when the data
// is not a genuine retract.
std::optional<InducedFunctor> induced_functor(const HomTable& table, const RetractData& data);

// Unit/counit formulation: the witnesses form a natural transformation, the
// functor restricts to the identity on A, and both triangle identities hold.
bool check_adjunction(const HomTable& table, const RetractData& data, const InducedFunctor& fun);

} // namespace ditop

#endif
