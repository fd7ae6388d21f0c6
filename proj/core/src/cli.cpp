#include "ditop/cli.hpp"

#include "ditop/category.hpp"
#include "ditop/errors.hpp"
#include "ditop/json_io.hpp"
#include "ditop/models.hpp"
#include "ditop/pv.hpp"
#include "ditop/render.hpp"
#include "ditop/van_kampen.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ditop {

namespace {

using ojson = nlohmann::ordered_json;

int exit_code_for(Errc c) {
  switch (c) {
  case Errc::inexact_hom_set:
  case Errc::subset_budget_exceeded:
  case Errc::not_a_pospace:
  case Errc::inclusion_not_functorial:
  case Errc::incompatible_retracts:
  case Errc::analysis_error:
    return 1;
  default:
    return 2;
  }
}

struct TaskOutput {
  ojson json;
  std::string text;
  std::optional<std::string> dot;
  bool failed = false;
};

Budget budget_from_env() {
  Budget b;
  if (const char* env = std::getenv("DITOP_BUDGET")) {
    std::string s = env;
    auto comma = s.find(',');
    try {
      if (comma == std::string::npos) {
        b.max_paths = std::stoll(s);
      } else {
        b.max_paths = std::stoll(s.substr(0, comma));
        b.max_steps = std::stoi(s.substr(comma + 1));
      }
    } catch (const std::exception&) {
      throw Error(Errc::input_error, "DITOP_BUDGET must be \"max_paths[,max_steps]\"");
    }
  }
  return b;
}

std::vector<GridComplex::Vertex> named_vertices(const GridComplex& g,
                                                const std::vector<std::string>& names) {
  std::vector<GridComplex::Vertex> out;
  for (const std::string& n : names) out.push_back(g.marked_vertex(n));
  return out;
}

ojson class_list_json(const ClassSet& cs) {
  ojson arr = ojson::array();
  for (const DihomotopyClass& cls : cs.classes) {
    ojson jc;
    jc["steps"] = cls.canonical.steps;
    jc["size"] = cls.size;
    arr.push_back(std::move(jc));
  }
  return arr;
}

TaskOutput task_classes(const GridComplex& g, const Budget& budget) {
  TaskOutput out;
  out.json["task"] = "classes";
  ojson pairs = ojson::array();
  out.text = "classes:\n";
  for (const auto& [from, u] : g.marked())
    for (const auto& [to, v] : g.marked()) {
      if (from == to) continue;
      ClassSet cs = classes(g, u, v, budget);
      ojson jp;
      jp["from"] = from;
      jp["to"] = to;
      jp["exact"] = cs.exact;
      jp["count"] = cs.classes.size();
      jp["classes"] = class_list_json(cs);
      pairs.push_back(std::move(jp));
      out.text += "  " + from + " -> " + to + ": " + std::to_string(cs.classes.size()) +
                  (cs.exact ? " classes (exact)\n" : " classes (truncated)\n");
    }
  out.json["pairs"] = std::move(pairs);
  return out;
}

TaskOutput task_extremal(const GridComplex& g) {
  TaskOutput out;
  ExtremalPoints ext = extremal_points(g);
  auto labels = [&](const std::vector<GridComplex::Vertex>& vs) {
    std::vector<std::string> ls;
    for (GridComplex::Vertex v : vs) ls.push_back(g.label_of(v));
    std::sort(ls.begin(), ls.end());
    return ls;
  };
  out.json["task"] = "extremal";
  out.json["minimals"] = labels(ext.minimals);
  out.json["maximals"] = labels(ext.maximals);
  out.text = "extremal:\n  minimals:";
  for (const auto& l : labels(ext.minimals)) out.text += " " + l;
  out.text += "\n  maximals:";
  for (const auto& l : labels(ext.maximals)) out.text += " " + l;
  out.text += "\n";
  return out;
}

TaskOutput task_bipartite(const GridComplex& g, const Budget& budget) {
  TaskOutput out;
  HomTable bg = bipartite_graph(g, budget);
  out.json["task"] = "bipartite";
  out.json["exact"] = bg.all_exact();
  std::vector<std::string> nodes;
  for (int i = 0; i < bg.object_count(); ++i) nodes.push_back(g.label_of(bg.object(i)));
  out.json["nodes"] = nodes;
  ojson edges = ojson::array();
  int total = 0;
  for (int a = 0; a < bg.object_count(); ++a)
    for (int b = 0; b < bg.object_count(); ++b) {
      int count = 0;
      const ClassSet& cs = bg.hom(a, b);
      for (std::size_t k = 0; k < cs.classes.size(); ++k)
        if (!(a == b && static_cast<int>(k) == bg.identity(a))) ++count;
      if (count == 0) continue;
      ojson je;
      je["from"] = nodes[a];
      je["to"] = nodes[b];
      je["count"] = count;
      edges.push_back(std::move(je));
      total += count;
    }
  out.json["edges"] = std::move(edges);
  out.text = "bipartite: " + std::to_string(nodes.size()) + " nodes, " + std::to_string(total) +
             " edges" + (bg.all_exact() ? " (exact)\n" : " (truncated)\n");
  out.dot = quiver_dot(bg);
  return out;
}

RetractData retract_from_spec(const GridComplex& g, const HomTable& table,
                              const RetractSpec& spec) {
  RetractData data;
  data.direction = spec.direction;
  for (GridComplex::Vertex v : named_vertices(g, spec.objects)) {
    auto idx = table.index_of(v);
    if (!idx) throw Error(Errc::input_error, "point is not an object of the table");
    data.codomain.push_back(*idx);
  }
  std::sort(data.codomain.begin(), data.codomain.end());
  if (!spec.assignment) return data;

  data.assign.resize(table.object_count());
  std::vector<bool> seen(table.object_count(), false);
  for (const auto& [name, entry] : *spec.assignment) {
    auto xi = table.index_of(g.marked_vertex(name));
    auto ti = table.index_of(g.marked_vertex(entry.first));
    if (!xi || !ti) throw Error(Errc::input_error, "assignment point is not a table object");
    LatticePath witness;
    witness.start =
        spec.direction == Direction::future ? table.object(*xi) : table.object(*ti);
    witness.steps = entry.second;
    const ClassSet& cs = spec.direction == Direction::future ? table.hom(*xi, *ti)
                                                             : table.hom(*ti, *xi);
    auto cls = cs.class_of(witness);
    if (!cls)
      throw Error(Errc::input_error, "witness path of '" + name + "' is not a valid class");
    data.assign[*xi] = RetractAssignment{*ti, *cls};
    seen[*xi] = true;
  }
  for (int i = 0; i < table.object_count(); ++i)
    if (!seen[i])
      throw Error(Errc::input_error,
                  "explicit assignment must cover every object; missing " +
                      g.label_of(table.object(i)));
  return data;
}

TaskOutput task_retract(const GridComplex& g, const Budget& budget, const SceneDocument& doc,
                        bool find_only) {
  if (!doc.retract)
    throw Error(Errc::input_error, "scene has no retract block");
  TaskOutput out;
  out.json["task"] = find_only ? "retract-find" : "retract-verify";
  out.json["direction"] = direction_name(doc.retract->direction);

  HomTable table = HomTable::full_subcategory(g, g.allowed_vertices(), budget);
  std::optional<RetractData> data;
  if (find_only || !doc.retract->assignment) {
    std::vector<int> A;
    for (GridComplex::Vertex v : named_vertices(g, doc.retract->objects)) {
      auto idx = table.index_of(v);
      if (!idx) throw Error(Errc::input_error, "point is not an object of the table");
      A.push_back(*idx);
    }
    std::sort(A.begin(), A.end());
    data = find_retract(table, A, doc.retract->direction);
    if (!data) {
      out.json["passed"] = false;
      out.json["failures"] = std::vector<std::string>{"no retract onto A exists"};
      out.text = std::string(find_only ? "retract-find" : "retract-verify") + ": failed\n";
      out.failed = true;
      return out;
    }
  } else {
    data = retract_from_spec(g, table, *doc.retract);
  }

  RetractReport report = verify_retract(table, *data);
  out.json["passed"] = report.passed;
  out.json["failures"] = report.failures;
  std::map<std::string, std::string> assignment;
  for (int i = 0; i < table.object_count(); ++i)
    if (data->assign.size() > static_cast<std::size_t>(i) && data->assign[i].target >= 0)
      assignment[g.label_of(table.object(i))] = g.label_of(table.object(data->assign[i].target));
  out.json["assignment"] = assignment;
  out.text = std::string(find_only ? "retract-find" : "retract-verify") + ": " +
             (report.passed ? "passed" : "failed") + "\n";
  out.failed = !report.passed;
  return out;
}

RetractChain chain_from_spec(const GridComplex& g, const ChainSpec& spec) {
  RetractChain chain;
  for (const RetractSpec& s : spec.steps) {
    ChainStep step;
    step.direction = s.direction;
    step.targets = named_vertices(g, s.objects);
    std::sort(step.targets.begin(), step.targets.end());
    if (s.assignment) {
      std::map<GridComplex::Vertex, std::pair<GridComplex::Vertex, std::vector<int>>> assign;
      for (const auto& [name, entry] : *s.assignment)
        assign[g.marked_vertex(name)] = {g.marked_vertex(entry.first), entry.second};
      step.assignment = std::move(assign);
    }
    chain.steps.push_back(std::move(step));
  }
  return chain;
}

TaskOutput task_model(const GridComplex& g, const Budget& budget, const SceneDocument& doc,
                      bool minimal) {
  if (!doc.chain)
    throw Error(Errc::input_error, "scene has no chain block");
  TaskOutput out;
  out.json["task"] = minimal ? "model-minimal" : "model-verify";
  ModelReport report = verify_extremal_model(g, chain_from_spec(g, *doc.chain), budget);
  out.json["passed"] = report.passed;
  out.json["ext_covered"] = report.ext_covered;
  out.json["failures"] = report.failures;
  std::vector<std::string> finals;
  if (!report.chain.tables.empty())
    for (GridComplex::Vertex v : report.final_table().objects()) finals.push_back(g.label_of(v));
  std::sort(finals.begin(), finals.end());
  out.json["final_objects"] = finals;
  out.failed = !report.passed;
  out.text = std::string(minimal ? "model-minimal" : "model-verify") + ": " +
             (report.passed ? "passed" : "failed") + "\n";
  if (minimal && report.passed) {
    bool min = is_minimal(g, report);
    out.json["minimal"] = min;
    out.text += std::string("  minimal: ") + (min ? "yes" : "no") + "\n";
  }
  return out;
}

TaskOutput task_vankampen(const GridComplex& g, const Budget& budget, const SceneDocument& doc) {
  if (!doc.cover)
    throw Error(Errc::input_error, "scene has no cover block");
  const CoverSpec& spec = *doc.cover;
  Cover cover = make_cover(g, spec.window1, spec.window2, named_vertices(g, spec.a1),
                           named_vertices(g, spec.a2), named_vertices(g, spec.b1),
                           named_vertices(g, spec.b2));
  PushoutReport report = verify_pushout(g, cover, budget);
  TaskOutput out;
  out.json["task"] = "vankampen";
  out.json["passed"] = report.passed;
  out.json["exact"] = report.exact;
  out.json["failures"] = report.failures;
  out.json["objects"] = report.presentation.object_count;
  out.json["generators"] = report.presentation.generators.size();
  out.json["indecomposables"] = report.presentation.indecomposable().size();
  out.failed = !report.passed;
  out.text = std::string("vankampen: ") + (report.passed ? "passed" : "failed") +
             (report.exact ? " (exact)" : " (truncated)") + ", " +
             std::to_string(report.presentation.object_count) + " objects, " +
             std::to_string(report.presentation.generators.size()) + " generators\n";
  out.dot = presentation_dot(report.presentation);
  return out;
}

TaskOutput task_pv_compile(const SceneDocument& doc, bool from_pv) {
  if (!from_pv)
    throw Error(Errc::input_error, "pv-compile needs a .pv program as input");
  TaskOutput out;
  std::string scene_json = scene_to_json(SceneDocument{doc.scene, {}, {}, {}});
  out.json["task"] = "pv-compile";
  out.json["scene"] = nlohmann::ordered_json::parse(scene_json);
  out.text = scene_json;
  return out;
}

TaskOutput task_deadlocks(const SceneDocument& doc) {
  DeadlockReport report = analyze_deadlocks(doc.scene);
  auto points = [](const std::vector<DeadlockReport::Point>& pts) {
    ojson arr = ojson::array();
    for (const auto& p : pts) {
      ojson jp;
      std::vector<std::string> coords;
      for (const Rat& c : p.coords) coords.push_back(rat_to_string(c));
      jp["coords"] = coords;
      jp["counters"] = p.counters;
      arr.push_back(std::move(jp));
    }
    return arr;
  };
  TaskOutput out;
  out.json["task"] = "deadlocks";
  out.json["deadlocks"] = points(report.deadlocks);
  out.json["unreachable"] = points(report.unreachable);
  out.text = "deadlocks: " + std::to_string(report.deadlocks.size()) + " deadlock(s), " +
             std::to_string(report.unreachable.size()) + " unreachable\n";
  for (const auto& p : report.deadlocks) {
    out.text += "  deadlock at (";
    for (std::size_t i = 0; i < p.coords.size(); ++i)
      out.text += (i ? ", " : "") + rat_to_string(p.coords[i]);
    out.text += ")\n";
  }
  for (const auto& p : report.unreachable) {
    out.text += "  unreachable at (";
    for (std::size_t i = 0; i < p.coords.size(); ++i)
      out.text += (i ? ", " : "") + rat_to_string(p.coords[i]);
    out.text += ")\n";
  }
  return out;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(Errc::input_error, "cannot write to '" + out_path + "'");
  f << content;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"exact dihomotopy analysis of cubical scenes and PV programs"};
  std::string scene_path;
  std::vector<std::string> tasks;
  long long max_paths = -1;
  int max_steps = -1;
  std::string format = "text", out_path;
  app.add_option("--scene", scene_path, "scene JSON file or .pv program")->required();
  app.add_option("--task", tasks,
                 "classes, extremal, bipartite, retract-verify, retract-find, model-verify, "
                 "model-minimal, vankampen, pv-compile, deadlocks")
      ->required();
  app.add_option("--max-paths", max_paths, "path enumeration budget");
  app.add_option("--max-steps", max_steps, "path length budget");
  app.add_option("--format", format, "text | json | dot | svg");
  app.add_option("--out", out_path, "output file (default stdout)");

  std::string out_path_for_errors;
  auto emit_error = [&](Errc code, const std::string& message, int line, int column) {
    ojson j;
    j["error"]["code"] = errc_name(code);
    j["error"]["message"] = message;
    if (line >= 0) {
      j["error"]["line"] = line;
      j["error"]["column"] = column;
    }
    std::cout << j.dump(2) << "\n";
    return exit_code_for(code);
  };

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      throw Error(Errc::input_error, e.what());
    }

    static const std::set<std::string> known = {
        "classes",      "extremal",     "bipartite", "retract-verify", "retract-find",
        "model-verify", "model-minimal", "vankampen", "pv-compile",     "deadlocks"};
    for (const std::string& t : tasks)
      if (!known.count(t)) throw Error(Errc::input_error, "unknown task '" + t + "'");
    if (format != "text" && format != "json" && format != "dot" && format != "svg")
      throw Error(Errc::input_error, "unknown format '" + format + "'");
    if (format == "dot" && tasks.size() != 1)
      throw Error(Errc::input_error, "dot output needs exactly one task");

    Budget budget = budget_from_env();
    if (max_paths >= 0) budget.max_paths = max_paths;
    if (max_steps >= 0) budget.max_steps = max_steps;

    std::ifstream f(scene_path, std::ios::binary);
    if (!f) throw Error(Errc::input_error, "cannot read '" + scene_path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();

    bool from_pv = scene_path.size() >= 3 && scene_path.ends_with(".pv");
    SceneDocument doc;
    if (from_pv)
      doc.scene = to_scene(parse_pv(text));
    else
      doc = parse_scene_json(text);
    validate_scene(doc.scene);
    GridComplex g = compactify(doc.scene);

    std::vector<TaskOutput> outputs;
    for (const std::string& t : tasks) {
      if (t == "classes")
        outputs.push_back(task_classes(g, budget));
      else if (t == "extremal")
        outputs.push_back(task_extremal(g));
      else if (t == "bipartite")
        outputs.push_back(task_bipartite(g, budget));
      else if (t == "retract-verify")
        outputs.push_back(task_retract(g, budget, doc, false));
      else if (t == "retract-find")
        outputs.push_back(task_retract(g, budget, doc, true));
      else if (t == "model-verify")
        outputs.push_back(task_model(g, budget, doc, false));
      else if (t == "model-minimal")
        outputs.push_back(task_model(g, budget, doc, true));
      else if (t == "vankampen")
        outputs.push_back(task_vankampen(g, budget, doc));
      else if (t == "pv-compile")
        outputs.push_back(task_pv_compile(doc, from_pv));
      else if (t == "deadlocks")
        outputs.push_back(task_deadlocks(doc));
    }

    std::string content;
    if (format == "json") {
      ojson root;
      root["budget"]["max_paths"] = budget.max_paths;
      root["budget"]["max_steps"] = budget.max_steps;
      ojson arr = ojson::array();
      for (const TaskOutput& o : outputs) arr.push_back(o.json);
      root["tasks"] = std::move(arr);
      content = root.dump(2) + "\n";
    } else if (format == "dot") {
      if (!outputs[0].dot)
        throw Error(Errc::input_error, "task '" + tasks[0] + "' has no dot rendering");
      content = *outputs[0].dot;
    } else if (format == "svg") {
      content = scene_svg(g, budget);
    } else {
      for (const TaskOutput& o : outputs) content += o.text;
    }
    write_output(out_path, content);

    for (const TaskOutput& o : outputs)
      if (o.failed) return 1;
    return 0;
  } catch (const Error& e) {
    return emit_error(e.code(), e.what(), e.line(), e.column());
  } catch (const std::exception& e) {
    return emit_error(Errc::input_error, e.what(), -1, -1);
  }
}

} // namespace ditop
