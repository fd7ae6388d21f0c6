#include "ditop/retracts.hpp"
#include "ditop/errors.hpp"

#include <algorithm>
#include <set>

namespace ditop {

namespace {

void require_exact(const HomTable& t, const std::vector<int>& A) {
  // every hom-set between an object and A (either direction) and within A
  // participates in the criterion
  for (int x = 0; x < t.object_count(); ++x) {
    for (int a = 0; a < t.object_count(); ++a) {
      if (!t.exact(x, a))
        throw Error(Errc::inexact_hom_set,
                    "hom(" + t.grid().label_of(t.object(x)) + "," + t.grid().label_of(t.object(a)) +
                        ") is truncated; retract verification refused");
    }
  }
  (void)A;
}

// forward composite through the witness: future s in hom(x+, a) -> hom(x, a)
std::optional<int> push_future(const HomTable& t, int x, const RetractAssignment& asg, int a,
                               int s) {
  return t.compose(x, asg.target, asg.witness, a, s);
}

// past: s in hom(a, x-) -> hom(a, x)
std::optional<int> push_past(const HomTable& t, int x, const RetractAssignment& asg, int a,
                             int s) {
  return t.compose(a, asg.target, s, x, asg.witness);
}

bool bijection_holds(const HomTable& t, Direction dir, int x, const RetractAssignment& asg,
                     int a, std::string* why) {
  size_t source = dir == Direction::future ? t.hom(asg.target, a).classes.size()
                                           : t.hom(a, asg.target).classes.size();
  size_t dest = dir == Direction::future ? t.hom(x, a).classes.size()
                                         : t.hom(a, x).classes.size();
  if (source != dest) {
    if (why) *why = "cardinalities differ";
    return false;
  }
  std::set<int> image;
  for (size_t s = 0; s < source; ++s) {
    std::optional<int> img = dir == Direction::future
                                 ? push_future(t, x, asg, a, static_cast<int>(s))
                                 : push_past(t, x, asg, a, static_cast<int>(s));
    if (!img) {
      if (why) *why = "composite escaped the hom table";
      return false;
    }
    if (!image.insert(*img).second) {
      if (why) *why = "composition with the witness is not injective";
      return false;
    }
  }
  return true; // injective + equal finite cardinalities = bijective
}

bool valid_witness(const HomTable& t, Direction dir, int x, const RetractAssignment& asg) {
  if (asg.target < 0 || asg.target >= t.object_count() || asg.witness < 0) return false;
  size_t n = dir == Direction::future ? t.hom(x, asg.target).classes.size()
                                      : t.hom(asg.target, x).classes.size();
  return static_cast<size_t>(asg.witness) < n;
}

} // namespace

RetractReport verify_retract(const HomTable& table, const RetractData& data) {
  require_exact(table, data.codomain);
  RetractReport report;
  report.passed = true;
  auto fail = [&](std::string msg) {
    report.passed = false;
    report.failures.push_back(std::move(msg));
  };

  if (static_cast<int>(data.assign.size()) != table.object_count()) {
    fail("assignment arity does not match the table");
    return report;
  }
  std::set<int> A(data.codomain.begin(), data.codomain.end());
  for (int a : A) {
    if (a < 0 || a >= table.object_count()) {
      fail("codomain object out of range");
      return report;
    }
  }

  for (int x = 0; x < table.object_count(); ++x) {
    const RetractAssignment& asg = data.assign[x];
    std::string xl = table.grid().label_of(table.object(x));
    if (!valid_witness(table, data.direction, x, asg)) {
      fail("object " + xl + ": witness class out of range");
      continue;
    }
    if (!A.count(asg.target)) {
      fail("object " + xl + ": target lies outside A");
      continue;
    }
    if (A.count(x)) {
      if (asg.target != x || asg.witness != table.identity(x)) {
        fail("object " + xl + " of A must map to itself with the identity witness");
        continue;
      }
    }
    for (int a : A) {
      std::string why;
      if (!bijection_holds(table, data.direction, x, asg, a, &why)) {
        fail("object " + xl + " against " + table.grid().label_of(table.object(a)) + ": " + why);
      }
    }
  }
  return report;
}

std::optional<RetractData> find_retract(const HomTable& table, const std::vector<int>& A,
                                        Direction direction) {
  require_exact(table, A);
  std::set<int> Aset(A.begin(), A.end());
  RetractData data;
  data.direction = direction;
  data.codomain.assign(Aset.begin(), Aset.end());
  data.assign.resize(table.object_count());

  for (int x = 0; x < table.object_count(); ++x) {
    if (Aset.count(x)) {
      data.assign[x] = {x, table.identity(x)};
      continue;
    }
    bool found = false;
    for (int a0 : data.codomain) {
      size_t n = direction == Direction::future ? table.hom(x, a0).classes.size()
                                                : table.hom(a0, x).classes.size();
      for (size_t g0 = 0; g0 < n && !found; ++g0) {
        RetractAssignment cand{a0, static_cast<int>(g0)};
        bool ok = true;
        for (int a : data.codomain) {
          if (!bijection_holds(table, direction, x, cand, a, nullptr)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          data.assign[x] = cand;
          found = true;
        }
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  return data;
}

std::optional<InducedFunctor> induced_functor(const HomTable& table, const RetractData& data) {
  InducedFunctor fun;
  fun.direction = data.direction;
  fun.object_map.resize(table.object_count());
  if (static_cast<int>(data.assign.size()) != table.object_count()) return std::nullopt;
  for (int x = 0; x < table.object_count(); ++x) {
    if (!valid_witness(table, data.direction, x, data.assign[x])) return std::nullopt;
    fun.object_map[x] = data.assign[x].target;
  }

  for (int x = 0; x < table.object_count(); ++x) {
    for (int y = 0; y < table.object_count(); ++y) {
      int xp = fun.object_map[x], yp = fun.object_map[y];
      for (size_t f = 0; f < table.hom(x, y).classes.size(); ++f) {
        // unique fill-in of the naturality square
        std::optional<int> rhs, chosen;
        int hits = 0;
        if (data.direction == Direction::future) {
          rhs = table.compose(x, y, static_cast<int>(f), yp, data.assign[y].witness);
          if (!rhs) return std::nullopt;
          for (size_t beta = 0; beta < table.hom(xp, yp).classes.size(); ++beta) {
            auto lhs = table.compose(x, xp, data.assign[x].witness, yp, static_cast<int>(beta));
            if (lhs && *lhs == *rhs) {
              ++hits;
              chosen = static_cast<int>(beta);
            }
          }
        } else {
          rhs = table.compose(xp, x, data.assign[x].witness, y, static_cast<int>(f));
          if (!rhs) return std::nullopt;
          for (size_t beta = 0; beta < table.hom(xp, yp).classes.size(); ++beta) {
            auto lhs = table.compose(xp, yp, static_cast<int>(beta), y, data.assign[y].witness);
            if (lhs && *lhs == *rhs) {
              ++hits;
              chosen = static_cast<int>(beta);
            }
          }
        }
        if (hits != 1) return std::nullopt;
        fun.arrows[{x, y, static_cast<int>(f)}] = *chosen;
      }
    }
  }
  return fun;
}

bool check_adjunction(const HomTable& table, const RetractData& data, const InducedFunctor& fun) {
  int n = table.object_count();
  if (static_cast<int>(fun.object_map.size()) != n ||
      static_cast<int>(data.assign.size()) != n)
    return false;
  std::set<int> A(data.codomain.begin(), data.codomain.end());

  // unit (future) / counit (past) is the identity on A
  for (int a : A) {
    if (data.assign[a].target != a || data.assign[a].witness != table.identity(a)) return false;
  }

  for (int x = 0; x < n; ++x) {
    if (!valid_witness(table, data.direction, x, data.assign[x])) return false;
    int xp = fun.object_map[x];
    if (xp != data.assign[x].target) return false;
    // functor preserves identities
    if (fun.apply(x, x, table.identity(x)) != table.identity(xp)) return false;
    // triangle: the image of the witness is the identity at x^p
    auto wimg = data.direction == Direction::future
                    ? fun.apply(x, xp, data.assign[x].witness)
                    : fun.apply(xp, x, data.assign[x].witness);
    if (wimg != table.identity(xp)) return false;
  }

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int xp = fun.object_map[x], yp = fun.object_map[y];
      for (size_t f = 0; f < table.hom(x, y).classes.size(); ++f) {
        auto ff = fun.apply(x, y, static_cast<int>(f));
        if (!ff) return false;
        // naturality of the witness family
        if (data.direction == Direction::future) {
          auto lhs = table.compose(x, xp, data.assign[x].witness, yp, *ff);
          auto rhs = table.compose(x, y, static_cast<int>(f), yp, data.assign[y].witness);
          if (!lhs || !rhs || *lhs != *rhs) return false;
        } else {
          auto lhs = table.compose(xp, yp, *ff, y, data.assign[y].witness);
          auto rhs = table.compose(xp, x, data.assign[x].witness, y, static_cast<int>(f));
          if (!lhs || !rhs || *lhs != *rhs) return false;
        }
        // functoriality on composable pairs
        for (int z = 0; z < n; ++z) {
          int zp = fun.object_map[z];
          for (size_t gcls = 0; gcls < table.hom(y, z).classes.size(); ++gcls) {
            auto comp = table.compose(x, y, static_cast<int>(f), z, static_cast<int>(gcls));
            auto gg = fun.apply(y, z, static_cast<int>(gcls));
            if (!comp || !gg) return false;
            auto img = fun.apply(x, z, *comp);
            auto expected = table.compose(xp, yp, *ff, zp, *gg);
            if (!img || !expected || *img != *expected) return false;
          }
        }
      }
    }
  }
  return true;
}

} // namespace ditop
