#ifndef DITOP_TESTS_RANDOM_SCENES_HPP
#define DITOP_TESTS_RANDOM_SCENES_HPP

#include "scenes.hpp"

#include <random>

namespace ditop::testing {

// Random 2D box-complement scene on the lattice {0, 1/n, ..., 1}; corners are
// always allowed (boxes are open subsets of the open square's closure), so a
// and b mark the global bottom and top.
inline CubicalScene random_box_scene(std::mt19937_64& rng, int n, int max_boxes) {
  std::uniform_int_distribution<int> box_count(0, max_boxes);
  std::uniform_int_distribution<int> coord(0, n);
  CubicalScene s;
  s.dim = 2;
  int k = box_count(rng);
  for (int i = 0; i < k; ++i) {
    Box b;
    for (int ax = 0; ax < 2; ++ax) {
      int lo = coord(rng), hi = coord(rng);
      if (lo == hi) hi = lo < n ? lo + 1 : lo - 1;
      if (lo > hi) std::swap(lo, hi);
      b.intervals.push_back({Rat(lo, n), Rat(hi, n)});
    }
    s.forbidden.push_back(b);
  }
  s.marked_points = {{"a", {Rat(0), Rat(0)}}, {"b", {Rat(1), Rat(1)}}};
  return s;
}

} // namespace ditop::testing

#endif
