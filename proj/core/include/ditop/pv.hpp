#ifndef DITOP_PV_HPP
#define DITOP_PV_HPP

#include "ditop/scene.hpp"

#include <string>
#include <vector>

namespace ditop {

struct PvAction {
  bool acquire = true; // P(r) when true, V(r) when false
  std::string resource;

  bool operator==(const PvAction&) const = default;
};

struct PvProgram {
  std::map<std::string, int> resources; // name -> capacity (>= 1)
  std::vector<std::vector<PvAction>> processes;
};

// Grammar: "sem" name "=" capacity ";" declarations first, then
// "proc" "{" (("P"|"V") "(" name ")" ";")* "}" blocks.  Whitespace-
// insensitive; errors carry 1-based line/column.
PvProgram parse_pv(const std::string& text);

// Geometric semantics: axis i parameterizes process i, its k-th action at
// coordinate (k+1)/(n_i+1).  For each resource the forbidden region is the
// union, over every way to pick per-process hold counts summing to
// capacity+1, of the product of the matching maximal holding intervals
// (non-participating axes span the full open interval).  Boxes are open, so
// states exactly at an action coordinate, or of unstarted/finished
// processes, hold nothing.
CubicalScene to_scene(const PvProgram& prog, int max_processes = 3);

struct DeadlockReport {
  struct Point {
    std::vector<Rat> coords;
    // per-axis position in the compacted grid; for a compiled program every
    // action coordinate bounding a forbidden box survives compaction, so
    // this is the number of completed actions of each process
    std::vector<int> counters;

    bool operator==(const Point&) const = default;
  };
  std::vector<Point> deadlocks;   // maximal vertices other than the top
  std::vector<Point> unreachable; // minimal vertices other than the bottom
};

// Extremal-point reading of a loop-free scene: deadlocks are states with no
// way forward, unreachable witnesses states with no way back.
DeadlockReport analyze_deadlocks(const CubicalScene& scene);

} // namespace ditop

#endif
