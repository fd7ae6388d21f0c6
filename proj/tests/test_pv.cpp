#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ditop/errors.hpp"
#include "ditop/grid.hpp"
#include "ditop/paths.hpp"
#include "ditop/pv.hpp"

#include "scenes.hpp"

#include <optional>
#include <random>
#include <string>

using namespace ditop;
using namespace ditop::testing;

namespace {

const char* kDijkstra =
    "sem a = 1; sem b = 1;\n"
    "proc { P(a); P(b); V(b); V(a); }\n"
    "proc { P(b); P(a); V(a); V(b); }\n";

template <typename Fn> std::optional<Error> thrown(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return std::nullopt;
}

} // namespace

TEST_CASE("parsing the crossed acquisition pair") {
  PvProgram prog = parse_pv(kDijkstra);
  REQUIRE(prog.resources.size() == 2);
  CHECK(prog.resources.at("a") == 1);
  CHECK(prog.resources.at("b") == 1);
  REQUIRE(prog.processes.size() == 2);
  std::vector<PvAction> first = {{true, "a"}, {true, "b"}, {false, "b"}, {false, "a"}};
  std::vector<PvAction> second = {{true, "b"}, {true, "a"}, {false, "a"}, {false, "b"}};
  CHECK(prog.processes[0] == first);
  CHECK(prog.processes[1] == second);
}

TEST_CASE("parse errors carry positions") {
  SUBCASE("release before any acquisition") {
    auto e = thrown([] { parse_pv("proc{V(a);}"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::release_before_acquire);
    CHECK(e->line() == 1);
    CHECK(e->column() == 8);
  }
  SUBCASE("unterminated action") {
    auto e = thrown([] { parse_pv("sem a=1; proc{P(a)"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::syntax_error);
    CHECK(e->line() == 1);
    CHECK(e->column() == 19);
  }
  SUBCASE("undeclared resource") {
    auto e = thrown([] { parse_pv("sem a=1; proc{P(b);}"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::unknown_resource);
  }
  SUBCASE("second release without a matching acquisition") {
    auto e = thrown([] { parse_pv("sem a=1; proc{P(a);V(a);V(a);}"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::unmatched_release);
  }
  SUBCASE("zero capacity") {
    auto e = thrown([] { parse_pv("sem a=0; proc{}"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::syntax_error);
  }
  SUBCASE("duplicate declaration") {
    auto e = thrown([] { parse_pv("sem a=1; sem a=2; proc{}"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::syntax_error);
  }
  SUBCASE("declaration after a process block") {
    auto e = thrown([] { parse_pv("proc{} sem a=1;"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::syntax_error);
  }
  SUBCASE("errors report multi-line positions") {
    auto e = thrown([] { parse_pv("sem a=1;\nproc{\n  Q(a);\n}"); });
    REQUIRE(e.has_value());
    CHECK(e->code() == Errc::syntax_error);
    CHECK(e->line() == 3);
    CHECK(e->column() == 3);
  }
}

TEST_CASE("the crossed pair compiles to the cross-shaped region") {
  CubicalScene scene = to_scene(parse_pv(kDijkstra));
  CHECK(scene.dim == 2);
  CHECK(scene.forbidden == swiss_flag().forbidden);
  CHECK_NOTHROW(validate_scene(scene));

  // mutual exclusion leaves exactly the two ways around the cross
  GridComplex g = compactify(scene);
  auto bottom = g.vertex_at({r(0), r(0)});
  auto top = g.vertex_at({r(1), r(1)});
  REQUIRE(bottom.has_value());
  REQUIRE(top.has_value());
  ClassSet cs = classes(g, *bottom, *top, Budget{});
  CHECK(cs.exact);
  CHECK(cs.classes.size() == 2);
}

TEST_CASE("trivial and capacity-saturating programs") {
  SUBCASE("a single process forbids nothing") {
    CubicalScene scene = to_scene(parse_pv("sem a=1; proc{P(a);V(a);}"));
    CHECK(scene.dim == 1);
    CHECK(scene.forbidden.empty());
  }
  SUBCASE("capacity two saturated by three processes") {
    CubicalScene scene = to_scene(
        parse_pv("sem a=2; proc{P(a);V(a);} proc{P(a);V(a);} proc{P(a);V(a);}"));
    REQUIRE(scene.forbidden.size() == 1);
    Box expect{{{r(1, 3), r(2, 3)}, {r(1, 3), r(2, 3)}, {r(1, 3), r(2, 3)}}};
    CHECK(scene.forbidden[0] == expect);
  }
  SUBCASE("capacity two left slack by two processes") {
    CubicalScene scene = to_scene(parse_pv("sem a=2; proc{P(a);V(a);} proc{P(a);V(a);}"));
    CHECK(scene.forbidden.empty());
  }
  SUBCASE("reentrant acquisition counts its units") {
    CubicalScene scene = to_scene(parse_pv("sem a=1; proc{P(a);P(a);V(a);V(a);}"));
    REQUIRE(scene.forbidden.size() == 1);
    Box expect{{{r(2, 5), r(3, 5)}}};
    CHECK(scene.forbidden[0] == expect);
    DeadlockReport report = analyze_deadlocks(scene);
    REQUIRE(report.deadlocks.size() == 1);
    CHECK(report.deadlocks[0].coords == std::vector<Rat>{r(2, 5)});
    REQUIRE(report.unreachable.size() == 1);
    CHECK(report.unreachable[0].coords == std::vector<Rat>{r(3, 5)});
  }
}

TEST_CASE("process dimension guard") {
  PvProgram prog =
      parse_pv("sem a=1; proc{P(a);V(a);} proc{P(a);V(a);} proc{P(a);V(a);} proc{P(a);V(a);}");
  auto e = thrown([&] { to_scene(prog); });
  REQUIRE(e.has_value());
  CHECK(e->code() == Errc::too_many_processes);

  CubicalScene scene = to_scene(prog, 4);
  CHECK(scene.dim == 4);
  CHECK(scene.forbidden.size() == 6); // one box per pair of processes
  for (const Box& b : scene.forbidden) {
    int tight = 0;
    for (const auto& [lo, hi] : b.intervals)
      if (lo == r(1, 3) && hi == r(2, 3)) ++tight;
    CHECK(tight == 2);
  }
}

TEST_CASE("deadlock analysis of the crossed pair") {
  DeadlockReport report = analyze_deadlocks(to_scene(parse_pv(kDijkstra)));
  REQUIRE(report.deadlocks.size() == 1);
  CHECK(report.deadlocks[0].coords == std::vector<Rat>{r(2, 5), r(2, 5)});
  CHECK(report.deadlocks[0].counters == std::vector<int>{2, 2});
  REQUIRE(report.unreachable.size() == 1);
  CHECK(report.unreachable[0].coords == std::vector<Rat>{r(3, 5), r(3, 5)});
  CHECK(report.unreachable[0].counters == std::vector<int>{3, 3});
}

TEST_CASE("deadlock analysis preconditions and benign scenes") {
  DeadlockReport report = analyze_deadlocks(square_annulus());
  CHECK(report.deadlocks.empty());
  CHECK(report.unreachable.empty());

  auto e = thrown([] { analyze_deadlocks(glued_cylinder()); });
  REQUIRE(e.has_value());
  CHECK(e->code() == Errc::input_error);
}

TEST_CASE("deadlocks and unreachable witnesses are sound on random programs") {
  std::mt19937 rng(20260823);
  auto rand_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const std::vector<std::string> names = {"a", "b"};

  for (int trial = 0; trial < 60; ++trial) {
    int n_res = rand_int(1, 2);
    std::string text;
    std::vector<int> caps(n_res);
    for (int r_ = 0; r_ < n_res; ++r_) {
      caps[r_] = rand_int(1, 2);
      text += "sem " + names[r_] + "=" + std::to_string(caps[r_]) + "; ";
    }
    int n_proc = rand_int(2, 3);
    for (int p = 0; p < n_proc; ++p) {
      text += "proc{";
      std::vector<int> held(n_res, 0);
      int len = rand_int(1, 4);
      for (int k = 0; k < len; ++k) {
        int r_ = rand_int(0, n_res - 1);
        bool acquire = held[r_] == 0 || rand_int(0, 1) == 0;
        if (acquire)
          ++held[r_];
        else
          --held[r_];
        text += (acquire ? "P(" : "V(") + names[r_] + ");";
      }
      text += "} ";
    }

    CAPTURE(text);
    CubicalScene scene = to_scene(parse_pv(text));
    CHECK_NOTHROW(validate_scene(scene));
    GridComplex g = compactify(scene);

    DeadlockReport report = analyze_deadlocks(scene);
    for (const auto& pt : report.deadlocks) {
      auto v = g.vertex_at(pt.coords);
      REQUIRE(v.has_value());
      CHECK(g.vertex_allowed(*v));
      for (int ax = 0; ax < g.dim(); ++ax)
        CHECK_FALSE((g.has_edge(*v, ax) && g.edge_allowed(*v, ax)));
    }
    for (const auto& pt : report.unreachable) {
      auto v = g.vertex_at(pt.coords);
      REQUIRE(v.has_value());
      CHECK(g.vertex_allowed(*v));
      std::vector<int> idx = g.index_of(*v);
      for (int ax = 0; ax < g.dim(); ++ax) {
        if (idx[ax] == 0) continue;
        std::vector<int> below = idx;
        --below[ax];
        GridComplex::Vertex u = g.vertex_of(below);
        CHECK_FALSE(g.edge_allowed(u, ax));
      }
    }
  }
}

TEST_CASE("two-process mutual exclusion is serializable both ways") {
  // padded critical sections still leave exactly the two interleavings
  const std::vector<std::string> programs = {
      "sem a=1; proc{P(a);V(a);} proc{P(a);V(a);}",
      "sem a=1; sem b=9; proc{P(b);P(a);V(a);V(b);} proc{P(a);V(a);}",
      "sem a=1; proc{P(a);P(a);V(a);V(a);} proc{P(a);V(a);}",
  };
  for (const std::string& text : programs) {
    CAPTURE(text);
    CubicalScene scene = to_scene(parse_pv(text));
    GridComplex g = compactify(scene);
    std::vector<int> top_idx(g.dim());
    for (int ax = 0; ax < g.dim(); ++ax) top_idx[ax] = g.axis(ax).vertex_count() - 1;
    ClassSet cs = classes(g, g.vertex_of(std::vector<int>(g.dim(), 0)),
                          g.vertex_of(top_idx), Budget{});
    CHECK(cs.exact);
    CHECK(cs.classes.size() == 2);
  }
}
