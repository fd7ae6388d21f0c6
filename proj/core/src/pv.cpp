#include "ditop/pv.hpp"

#include "ditop/category.hpp"
#include "ditop/errors.hpp"
#include "ditop/grid.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

namespace ditop {

namespace {

struct Token {
  enum Kind { word, number, punct, end } kind = end;
  std::string text;
  long long value = 0; // for number
  int line = 1, column = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Token::end;
      return t;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::word;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' && d != '\'') break;
        t.text += d;
        advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        t.text += text_[pos_];
        advance();
      }
      t.value = std::stoll(t.text);
      return t;
    }
    t.kind = Token::punct;
    t.text = std::string(1, c);
    advance();
    return t;
  }

private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, column_ = 1;
};

[[noreturn]] void fail(Errc code, const std::string& msg, const Token& at) {
  throw Error(code, msg, at.line, at.column);
}

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

  PvProgram run() {
    PvProgram prog;
    bool seen_proc = false;
    while (cur_.kind != Token::end) {
      if (cur_.kind != Token::word)
        fail(Errc::syntax_error, "expected 'sem' or 'proc'", cur_);
      if (cur_.text == "sem") {
        if (seen_proc)
          fail(Errc::syntax_error, "resource declarations must precede processes", cur_);
        parse_decl(prog);
      } else if (cur_.text == "proc") {
        seen_proc = true;
        parse_proc(prog);
      } else {
        fail(Errc::syntax_error, "expected 'sem' or 'proc', got '" + cur_.text + "'", cur_);
      }
    }
    return prog;
  }

private:
  void parse_decl(PvProgram& prog) {
    Token kw = cur_;
    advance();
    Token name = expect_word("resource name");
    expect_punct("=");
    Token cap = cur_;
    if (cap.kind != Token::number) fail(Errc::syntax_error, "expected capacity", cap);
    advance();
    expect_punct(";");
    if (cap.value < 1) fail(Errc::syntax_error, "capacity must be at least 1", cap);
    if (prog.resources.count(name.text))
      fail(Errc::syntax_error, "duplicate resource '" + name.text + "'", name);
    (void)kw;
    prog.resources[name.text] = static_cast<int>(cap.value);
  }

  void parse_proc(PvProgram& prog) {
    advance();
    expect_punct("{");
    std::vector<PvAction> actions;
    std::map<std::string, int> held;
    std::set<std::string> ever_acquired;
    while (!(cur_.kind == Token::punct && cur_.text == "}")) {
      Token op = cur_;
      if (op.kind != Token::word || (op.text != "P" && op.text != "V"))
        fail(Errc::syntax_error, "expected 'P', 'V' or '}'", op);
      advance();
      expect_punct("(");
      Token name = expect_word("resource name");
      expect_punct(")");
      expect_punct(";");
      bool acquire = op.text == "P";
      if (acquire) {
        if (!prog.resources.count(name.text))
          fail(Errc::unknown_resource, "unknown resource '" + name.text + "'", name);
        ++held[name.text];
        ever_acquired.insert(name.text);
      } else {
        if (!ever_acquired.count(name.text))
          fail(Errc::release_before_acquire,
               "release of '" + name.text + "' before any acquisition", name);
        if (held[name.text] == 0)
          fail(Errc::unmatched_release, "release of '" + name.text + "' without a matching acquisition",
               name);
        --held[name.text];
      }
      actions.push_back(PvAction{acquire, name.text});
    }
    advance(); // consume '}'
    prog.processes.push_back(std::move(actions));
  }

  Token expect_word(const std::string& what) {
    if (cur_.kind != Token::word)
      fail(Errc::syntax_error, "expected " + what, cur_);
    Token t = cur_;
    advance();
    return t;
  }

  void expect_punct(const std::string& p) {
    if (cur_.kind != Token::punct || cur_.text != p)
      fail(Errc::syntax_error, "expected '" + p + "'", cur_);
    advance();
  }

  void advance() { cur_ = lex_.next(); }

  Lexer lex_;
  Token cur_;
};

using Interval = std::pair<Rat, Rat>;

// Maximal open intervals where the process holds at least `level` units of the
// resource, for every level >= 1.  A hold still open at the end of the program
// extends to the final coordinate.
std::vector<std::vector<Interval>> hold_levels(const std::vector<PvAction>& actions,
                                               const std::string& resource) {
  int n = static_cast<int>(actions.size());
  std::vector<std::vector<Interval>> levels;
  std::vector<Rat> open_at; // open_at[l-1] = start of the current >= l stretch
  int count = 0;
  for (int k = 0; k < n; ++k) {
    if (actions[k].resource != resource) continue;
    Rat coord(k + 1, n + 1);
    if (actions[k].acquire) {
      ++count;
      if (static_cast<int>(levels.size()) < count) levels.emplace_back();
      open_at.push_back(coord);
    } else {
      levels[count - 1].push_back({open_at.back(), coord});
      open_at.pop_back();
      --count;
    }
  }
  while (count > 0) {
    levels[count - 1].push_back({open_at.back(), Rat(1)});
    open_at.pop_back();
    --count;
  }
  return levels;
}

} // namespace

PvProgram parse_pv(const std::string& text) {
  return Parser(text).run();
}

CubicalScene to_scene(const PvProgram& prog, int max_processes) {
  int n = static_cast<int>(prog.processes.size());
  if (n == 0) throw Error(Errc::input_error, "program has no processes");
  if (n > max_processes)
    throw Error(Errc::too_many_processes,
                "program has " + std::to_string(n) + " processes, limit is " +
                    std::to_string(max_processes));

  CubicalScene scene;
  scene.dim = n;

  auto box_less = [](const Box& a, const Box& b) { return a.intervals < b.intervals; };
  std::set<Box, decltype(box_less)> boxes(box_less);
  for (const auto& [name, capacity] : prog.resources) {
    std::vector<std::vector<std::vector<Interval>>> levels(n);
    for (int i = 0; i < n; ++i) levels[i] = hold_levels(prog.processes[i], name);

    // choose per-process hold counts summing to capacity+1, then one maximal
    // interval per positive count
    std::vector<int> units(n, 0);
    auto emit = [&]() {
      std::vector<int> pick(n, 0);
      auto rec_pick = [&](auto&& self, int i) -> void {
        if (i == n) {
          Box box;
          box.intervals.resize(n);
          for (int j = 0; j < n; ++j)
            box.intervals[j] =
                units[j] == 0 ? Interval{Rat(0), Rat(1)} : levels[j][units[j] - 1][pick[j]];
          boxes.insert(std::move(box));
          return;
        }
        if (units[i] == 0) {
          self(self, i + 1);
          return;
        }
        for (pick[i] = 0; pick[i] < static_cast<int>(levels[i][units[i] - 1].size()); ++pick[i])
          self(self, i + 1);
      };
      rec_pick(rec_pick, 0);
    };
    auto rec = [&](auto&& self, int i, int remaining) -> void {
      if (i == n) {
        if (remaining == 0) emit();
        return;
      }
      int avail = static_cast<int>(levels[i].size());
      for (int u = 0; u <= std::min(avail, remaining); ++u) {
        if (u > 0 && levels[i][u - 1].empty()) break;
        units[i] = u;
        self(self, i + 1, remaining - u);
      }
      units[i] = 0;
    };
    rec(rec, 0, capacity + 1);
  }

  scene.forbidden.assign(boxes.begin(), boxes.end());
  return validate_scene(scene);
}

DeadlockReport analyze_deadlocks(const CubicalScene& scene) {
  validate_scene(scene);
  if (!scene.identifications.empty())
    throw Error(Errc::input_error, "deadlock analysis requires a scene without identifications");

  GridComplex g = compactify(scene);
  std::vector<int> bottom(g.dim(), 0), top(g.dim());
  for (int ax = 0; ax < g.dim(); ++ax) top[ax] = g.axis(ax).vertex_count() - 1;
  GridComplex::Vertex vbot = g.vertex_of(bottom), vtop = g.vertex_of(top);

  auto point = [&](GridComplex::Vertex v) {
    DeadlockReport::Point p;
    p.coords = g.coords_of(v);
    p.counters = g.index_of(v);
    return p;
  };

  ExtremalPoints ext = extremal_points(g);
  DeadlockReport report;
  for (GridComplex::Vertex v : ext.maximals)
    if (v != vtop) report.deadlocks.push_back(point(v));
  for (GridComplex::Vertex v : ext.minimals)
    if (v != vbot) report.unreachable.push_back(point(v));
  return report;
}

} // namespace ditop
