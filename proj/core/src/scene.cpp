#include "ditop/scene.hpp"
#include "ditop/errors.hpp"

#include <set>

namespace ditop {

bool Box::contains_open(const std::vector<Rat>& p) const {
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (!(intervals[i].first < p[i] && p[i] < intervals[i].second)) return false;
  }
  return true;
}

const CubicalScene& validate_scene(const CubicalScene& scene) {
  if (scene.dim < 1) throw Error(Errc::input_error, "scene dimension must be positive");

  for (const Box& b : scene.forbidden) {
    if (static_cast<int>(b.intervals.size()) != scene.dim)
      throw Error(Errc::input_error, "box arity does not match scene dimension");
    for (const auto& [lo, hi] : b.intervals) {
      if (lo >= hi)
        throw Error(Errc::degenerate_box,
                    "empty box interval (" + format_rational(lo) + "," + format_rational(hi) + ")");
      if (lo < Rat(0) || hi > Rat(1))
        throw Error(Errc::box_out_of_ambient,
                    "box interval (" + format_rational(lo) + "," + format_rational(hi) +
                        ") leaves the unit cube");
    }
  }

  std::set<int> seen_axes;
  for (const SlabIdentification& id : scene.identifications) {
    if (id.axis < 0 || id.axis >= scene.dim)
      throw Error(Errc::input_error, "identification axis out of range");
    if (!seen_axes.insert(id.axis).second)
      throw Error(Errc::identification_conflict,
                  "two identifications on axis " + std::to_string(id.axis));
    if (!(Rat(0) <= id.source && id.source < id.target && id.target <= Rat(1)))
      throw Error(Errc::identification_conflict,
                  "identification needs 0 <= source < target <= 1 on axis " +
                      std::to_string(id.axis));
    for (const Box& b : scene.forbidden) {
      const auto& [lo, hi] = b.intervals[id.axis];
      if ((lo < id.source && id.source < hi) || (lo < id.target && id.target < hi))
        throw Error(Errc::identification_conflict,
                    "forbidden box interior meets the glued hyperplane on axis " +
                        std::to_string(id.axis));
    }
  }

  for (const auto& [name, p] : scene.marked_points) {
    if (static_cast<int>(p.size()) != scene.dim)
      throw Error(Errc::input_error, "marked point '" + name + "' has wrong arity");
    if (!point_allowed(scene, p))
      throw Error(Errc::marked_point_forbidden,
                  "marked point '" + name + "' = " + format_point(p) + " is not allowed");
  }
  return scene;
}

bool point_allowed(const CubicalScene& scene, const std::vector<Rat>& p) {
  for (int ax = 0; ax < scene.dim; ++ax) {
    Rat lo(0), hi(1);
    for (const SlabIdentification& id : scene.identifications) {
      if (id.axis == ax) {
        lo = id.source;
        hi = id.target;
      }
    }
    if (p[ax] < lo || p[ax] > hi) return false;
  }
  for (const Box& b : scene.forbidden) {
    if (b.contains_open(p)) return false;
  }
  return true;
}

} // namespace ditop
