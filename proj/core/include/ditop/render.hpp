#ifndef DITOP_RENDER_HPP
#define DITOP_RENDER_HPP

#include "ditop/category.hpp"
#include "ditop/van_kampen.hpp"

#include <string>

namespace ditop {

// Quiver of a hom-table as DOT: one node per object (labelled), one edge per
// non-identity class; identity classes are suppressed, parallel classes give
// parallel edges.
std::string quiver_dot(const HomTable& table);

// Pushout presentation quiver: objects and generating classes, edges tagged
// with the piece they come from.
std::string presentation_dot(const CatPresentation& pres);

// Two-dimensional scene drawing: ambient square, forbidden boxes, extremal
// points, and the canonical representative dipath of every class between each
// ordered pair of marked points.  Throws Error{not_two_dimensional} otherwise.
std::string scene_svg(const GridComplex& g, const Budget& budget);

} // namespace ditop

#endif
