#ifndef DITOP_JSON_IO_HPP
#define DITOP_JSON_IO_HPP

#include "ditop/retracts.hpp"
#include "ditop/scene.hpp"
#include "ditop/van_kampen.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ditop {

// Exact number parsing: integers, fraction strings ("1/3") and exact decimal
// strings ("0.25"); binary floats are rejected.
Rat rat_from_string(const std::string& text);
std::string rat_to_string(const Rat& r); // "n" or "n/d", canonical form

struct RetractSpec {
  Direction direction = Direction::future;
  std::vector<std::string> objects; // point names forming A
  // point name -> (target name, witness path steps); omitted = search
  std::optional<std::map<std::string, std::pair<std::string, std::vector<int>>>> assignment;

  bool operator==(const RetractSpec&) const = default;
};

struct ChainSpec {
  std::vector<RetractSpec> steps;

  bool operator==(const ChainSpec&) const = default;
};

struct CoverSpec {
  Window window1, window2; // lo > hi on a wrapped axis crosses the seam
  std::vector<std::string> a1, a2; // per-piece object point names
  std::vector<std::string> b1, b2; // optional intermediate level

  bool operator==(const CoverSpec&) const;
};

struct SceneDocument {
  CubicalScene scene;
  std::optional<RetractSpec> retract;
  std::optional<ChainSpec> chain;
  std::optional<CoverSpec> cover;
};

// Fields: dim, boxes ([[lo,hi],...] per box), identifications
// ({axis,source,target}), points (name -> coordinates), plus optional
// retract/chain/cover blocks.  Throws Error{input_error} with line/column on
// malformed input.
SceneDocument parse_scene_json(const std::string& text);

// Canonical serialization; parse_scene_json(scene_to_json(d)) reproduces d.
std::string scene_to_json(const SceneDocument& doc);

} // namespace ditop

#endif
