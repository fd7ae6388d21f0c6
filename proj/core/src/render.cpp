#include "ditop/render.hpp"

#include "ditop/errors.hpp"

#include <boost/rational.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace ditop {

namespace {

std::string escaped(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string steps_label(const std::vector<int>& steps) {
  if (steps.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(steps[i]);
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

double approx(const Rat& r) { return boost::rational_cast<double>(r); }

} // namespace

std::string quiver_dot(const HomTable& table) {
  const GridComplex& g = table.grid();
  std::string out = "digraph quiver {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (int i = 0; i < table.object_count(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + escaped(g.label_of(table.object(i))) +
           "\"];\n";
  for (int a = 0; a < table.object_count(); ++a)
    for (int b = 0; b < table.object_count(); ++b) {
      const ClassSet& cs = table.hom(a, b);
      for (std::size_t k = 0; k < cs.classes.size(); ++k) {
        if (a == b && static_cast<int>(k) == table.identity(a)) continue;
        out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + " [label=\"" +
               steps_label(cs.classes[k].canonical.steps) + "\"];\n";
      }
    }
  out += "}\n";
  return out;
}

std::string presentation_dot(const CatPresentation& pres) {
  std::string out = "digraph pushout {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (int i = 0; i < pres.object_count; ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + escaped(pres.object_labels[i]) + "\"];\n";
  for (std::size_t k = 0; k < pres.generators.size(); ++k) {
    const auto& gen = pres.generators[k];
    out += "  n" + std::to_string(gen.src) + " -> n" + std::to_string(gen.dst) + " [label=\"g" +
           std::to_string(k) + "\" color=\"" + (gen.piece == 1 ? "blue" : "red") + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string scene_svg(const GridComplex& g, const Budget& budget) {
  if (g.dim() != 2)
    throw Error(Errc::not_two_dimensional, "SVG rendering needs a two-dimensional scene");

  const double margin = 20, scale = 400;
  auto px = [&](const Rat& x) { return margin + approx(x) * scale; };
  auto py = [&](const Rat& y) { return margin + (1.0 - approx(y)) * scale; };

  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"440\" "
      "viewBox=\"0 0 440 440\">\n";
  out += "  <rect x=\"" + fmt(margin) + "\" y=\"" + fmt(margin) + "\" width=\"" + fmt(scale) +
         "\" height=\"" + fmt(scale) + "\" fill=\"white\" stroke=\"black\"/>\n";

  for (const Box& b : g.forbidden()) {
    const auto& [x0, x1] = b.intervals[0];
    const auto& [y0, y1] = b.intervals[1];
    out += "  <rect x=\"" + fmt(px(x0)) + "\" y=\"" + fmt(py(y1)) + "\" width=\"" +
           fmt(approx(x1 - x0) * scale) + "\" height=\"" + fmt(approx(y1 - y0) * scale) +
           "\" fill=\"#cccccc\" stroke=\"#888888\"/>\n";
  }

  const std::vector<std::string> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                            "#9467bd", "#8c564b"};
  int color = 0;
  for (const auto& [from, u] : g.marked())
    for (const auto& [to, v] : g.marked()) {
      if (from == to) continue;
      ClassSet cs = classes(g, u, v, budget);
      for (const DihomotopyClass& cls : cs.classes) {
        if (cls.canonical.steps.empty()) continue;
        std::string pts;
        for (std::size_t i = 0; i <= cls.canonical.steps.size(); ++i) {
          std::vector<Rat> c = g.coords_of(path_vertex_at(g, cls.canonical, i));
          if (!pts.empty()) pts += ' ';
          pts += fmt(px(c[0])) + "," + fmt(py(c[1]));
        }
        out += "  <polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               palette[color % palette.size()] + "\" stroke-width=\"2\"/>\n";
        ++color;
      }
    }

  ExtremalPoints ext = extremal_points(g);
  auto dot = [&](GridComplex::Vertex v, const char* fill) {
    std::vector<Rat> c = g.coords_of(v);
    out += "  <circle cx=\"" + fmt(px(c[0])) + "\" cy=\"" + fmt(py(c[1])) +
           "\" r=\"5\" fill=\"" + std::string(fill) + "\"/>\n";
  };
  for (GridComplex::Vertex v : ext.minimals) dot(v, "#2ca02c");
  for (GridComplex::Vertex v : ext.maximals) dot(v, "#d62728");

  for (const auto& [name, v] : g.marked()) {
    std::vector<Rat> c = g.coords_of(v);
    out += "  <circle cx=\"" + fmt(px(c[0])) + "\" cy=\"" + fmt(py(c[1])) +
           "\" r=\"3\" fill=\"black\"/>\n";
    out += "  <text x=\"" + fmt(px(c[0]) + 6) + "\" y=\"" + fmt(py(c[1]) - 6) +
           "\" font-size=\"14\">" + escaped(name) + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

} // namespace ditop
