#ifndef DITOP_SCENE_HPP
#define DITOP_SCENE_HPP

#include "ditop/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ditop {

// Open isothetic box: one open interval (lo, hi) per axis.
struct Box {
  std::vector<std::pair<Rat, Rat>> intervals;

  bool contains_open(const std::vector<Rat>& p) const;
  bool operator==(const Box&) const = default;
};

// Glues the hyperplane x_axis = target onto x_axis = source by translation;
// the regions x_axis < source and x_axis > target are discarded.
struct SlabIdentification {
  int axis = 0;
  Rat source, target;
  bool operator==(const SlabIdentification&) const = default;
};

struct CubicalScene {
  int dim = 0;
  std::vector<Box> forbidden;
  std::vector<SlabIdentification> identifications;
  std::map<std::string, std::vector<Rat>> marked_points;
};

// Returns the scene unchanged if all invariants hold, else throws Error with
// one of: degenerate_box, box_out_of_ambient, marked_point_forbidden,
// identification_conflict.
const CubicalScene& validate_scene(const CubicalScene& scene);

// True iff p lies in the kept region of the ambient cube and is not interior
// to any forbidden box.
bool point_allowed(const CubicalScene& scene, const std::vector<Rat>& p);

} // namespace ditop

#endif
