#include "ditop/json_io.hpp"

#include "ditop/errors.hpp"

#include "json.hpp"

#include <utility>

namespace ditop {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg, int line = -1, int column = -1) {
  throw Error(Errc::input_error, msg, line, column);
}

long long ll_from_digits(const std::string& s, const std::string& orig) {
  if (s.empty()) bad("malformed number '" + orig + "'");
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    bad("number out of range '" + orig + "'");
  }
}

Rat rat_from_json(const ojson& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_float()) bad("binary floats rejected; use exact strings like \"1/3\"");
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  bad("expected an exact number, got " + std::string(j.type_name()));
}

ojson rat_json(const Rat& r) { return ojson(rat_to_string(r)); }

std::pair<Rat, Rat> interval_from_json(const ojson& j) {
  if (!j.is_array() || j.size() != 2) bad("expected an interval [lo, hi]");
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

std::vector<std::string> names_from_json(const ojson& j, const std::string& what) {
  if (!j.is_array()) bad("expected an array of point names for " + what);
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) bad("expected a point name in " + what);
    out.push_back(e.get<std::string>());
  }
  return out;
}

Direction direction_from_json(const ojson& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "future") return Direction::future;
    if (s == "past") return Direction::past;
  }
  bad("direction must be \"future\" or \"past\"");
}

RetractSpec retract_from_json(const ojson& j) {
  if (!j.is_object()) bad("retract block must be an object");
  RetractSpec spec;
  if (!j.contains("direction")) bad("retract block needs a direction");
  spec.direction = direction_from_json(j.at("direction"));
  if (!j.contains("A")) bad("retract block needs an object list A");
  spec.objects = names_from_json(j.at("A"), "A");
  if (j.contains("assignment")) {
    const ojson& a = j.at("assignment");
    if (!a.is_object()) bad("assignment must map point names to targets");
    std::map<std::string, std::pair<std::string, std::vector<int>>> assign;
    for (const auto& [name, entry] : a.items()) {
      if (!entry.is_object() || !entry.contains("target") || !entry.at("target").is_string())
        bad("assignment entry for '" + name + "' needs a target name");
      std::vector<int> steps;
      if (entry.contains("witness_path")) {
        for (const auto& s : entry.at("witness_path")) {
          if (!s.is_number_integer()) bad("witness_path must list axis indices");
          steps.push_back(s.get<int>());
        }
      }
      assign[name] = {entry.at("target").get<std::string>(), std::move(steps)};
    }
    spec.assignment = std::move(assign);
  }
  return spec;
}

ojson retract_json(const RetractSpec& spec) {
  ojson j;
  j["direction"] = direction_name(spec.direction);
  j["A"] = spec.objects;
  if (spec.assignment) {
    ojson a = ojson::object();
    for (const auto& [name, entry] : *spec.assignment) {
      ojson e;
      e["target"] = entry.first;
      if (!entry.second.empty()) e["witness_path"] = entry.second;
      a[name] = std::move(e);
    }
    j["assignment"] = std::move(a);
  }
  return j;
}

Window window_from_json(const ojson& j) {
  if (!j.is_array()) bad("window must be an array of intervals");
  Window w;
  for (const auto& e : j) w.intervals.push_back(interval_from_json(e));
  return w;
}

ojson window_json(const Window& w) {
  ojson j = ojson::array();
  for (const auto& [lo, hi] : w.intervals) j.push_back(ojson::array({rat_json(lo), rat_json(hi)}));
  return j;
}

CoverSpec cover_from_json(const ojson& j) {
  if (!j.is_object()) bad("cover block must be an object");
  for (const char* key : {"window1", "window2", "A1", "A2"})
    if (!j.contains(key)) bad(std::string("cover block needs ") + key);
  CoverSpec spec;
  spec.window1 = window_from_json(j.at("window1"));
  spec.window2 = window_from_json(j.at("window2"));
  spec.a1 = names_from_json(j.at("A1"), "A1");
  spec.a2 = names_from_json(j.at("A2"), "A2");
  if (j.contains("B1")) spec.b1 = names_from_json(j.at("B1"), "B1");
  if (j.contains("B2")) spec.b2 = names_from_json(j.at("B2"), "B2");
  return spec;
}

ojson cover_json(const CoverSpec& spec) {
  ojson j;
  j["window1"] = window_json(spec.window1);
  j["window2"] = window_json(spec.window2);
  j["A1"] = spec.a1;
  j["A2"] = spec.a2;
  if (!spec.b1.empty()) j["B1"] = spec.b1;
  if (!spec.b2.empty()) j["B2"] = spec.b2;
  return j;
}

} // namespace

Rat rat_from_string(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  auto digits = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      bad("malformed number '" + text + "'");
    return ll_from_digits(part, text);
  };
  Rat value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    long long num = digits(s.substr(0, slash));
    long long den = digits(s.substr(slash + 1));
    if (den == 0) bad("zero denominator in '" + text + "'");
    value = Rat(num, den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    long long scale = 1;
    for (char c : frac) {
      (void)c;
      if (scale > 1000000000000000LL) bad("too many decimal places in '" + text + "'");
      scale *= 10;
    }
    value = Rat(digits(whole)) + Rat(frac.empty() ? 0 : digits(frac), scale);
  } else {
    value = Rat(digits(s));
  }
  return negative ? -value : value;
}

std::string rat_to_string(const Rat& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

bool CoverSpec::operator==(const CoverSpec& o) const {
  return window1.intervals == o.window1.intervals && window2.intervals == o.window2.intervals &&
         a1 == o.a1 && a2 == o.a2 && b1 == o.b1 && b2 == o.b2;
}

SceneDocument parse_scene_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(Errc::input_error, e.what(), line, column);
  }
  if (!j.is_object()) bad("scene must be a JSON object");

  SceneDocument doc;
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) bad("scene needs an integer dim");
  doc.scene.dim = j.at("dim").get<int>();
  if (j.contains("boxes")) {
    if (!j.at("boxes").is_array()) bad("boxes must be an array");
    for (const auto& jb : j.at("boxes")) {
      if (!jb.is_array()) bad("each box must be an array of intervals");
      Box box;
      for (const auto& ji : jb) box.intervals.push_back(interval_from_json(ji));
      doc.scene.forbidden.push_back(std::move(box));
    }
  }
  if (j.contains("identifications")) {
    for (const auto& ji : j.at("identifications")) {
      if (!ji.is_object() || !ji.contains("axis") || !ji.contains("source") ||
          !ji.contains("target"))
        bad("identification needs axis, source and target");
      SlabIdentification id;
      if (!ji.at("axis").is_number_integer()) bad("identification axis must be an integer");
      id.axis = ji.at("axis").get<int>();
      id.source = rat_from_json(ji.at("source"));
      id.target = rat_from_json(ji.at("target"));
      doc.scene.identifications.push_back(id);
    }
  }
  if (j.contains("points")) {
    if (!j.at("points").is_object()) bad("points must map names to coordinates");
    for (const auto& [name, jc] : j.at("points").items()) {
      if (!jc.is_array()) bad("coordinates of '" + name + "' must be an array");
      std::vector<Rat> coords;
      for (const auto& c : jc) coords.push_back(rat_from_json(c));
      doc.scene.marked_points[name] = std::move(coords);
    }
  }
  if (j.contains("retract")) doc.retract = retract_from_json(j.at("retract"));
  if (j.contains("chain")) {
    if (!j.at("chain").is_array()) bad("chain must be an array of retract blocks");
    ChainSpec chain;
    for (const auto& js : j.at("chain")) chain.steps.push_back(retract_from_json(js));
    doc.chain = std::move(chain);
  }
  if (j.contains("cover")) doc.cover = cover_from_json(j.at("cover"));
  return doc;
}

std::string scene_to_json(const SceneDocument& doc) {
  ojson j;
  j["dim"] = doc.scene.dim;
  ojson boxes = ojson::array();
  for (const Box& b : doc.scene.forbidden) {
    ojson jb = ojson::array();
    for (const auto& [lo, hi] : b.intervals) jb.push_back(ojson::array({rat_json(lo), rat_json(hi)}));
    boxes.push_back(std::move(jb));
  }
  j["boxes"] = std::move(boxes);
  if (!doc.scene.identifications.empty()) {
    ojson ids = ojson::array();
    for (const SlabIdentification& id : doc.scene.identifications) {
      ojson ji;
      ji["axis"] = id.axis;
      ji["source"] = rat_json(id.source);
      ji["target"] = rat_json(id.target);
      ids.push_back(std::move(ji));
    }
    j["identifications"] = std::move(ids);
  }
  ojson points = ojson::object();
  for (const auto& [name, coords] : doc.scene.marked_points) {
    ojson jc = ojson::array();
    for (const Rat& c : coords) jc.push_back(rat_json(c));
    points[name] = std::move(jc);
  }
  j["points"] = std::move(points);
  if (doc.retract) j["retract"] = retract_json(*doc.retract);
  if (doc.chain) {
    ojson steps = ojson::array();
    for (const RetractSpec& s : doc.chain->steps) steps.push_back(retract_json(s));
    j["chain"] = std::move(steps);
  }
  if (doc.cover) j["cover"] = cover_json(*doc.cover);
  return j.dump(2) + "\n";
}

} // namespace ditop
