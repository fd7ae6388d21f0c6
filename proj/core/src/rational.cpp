#include "ditop/rational.hpp"
#include "ditop/errors.hpp"

#include <cctype>
#include <cstdint>

namespace ditop {

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(Errc::input_error, "not an exact rational literal: '" + std::string(text) + "'");
}

long long parse_digits(std::string_view text, std::string_view& s) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) bad(text);
  long long v = 0;
  while (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
    int d = s[0] - '0';
    if (v > (INT64_MAX - d) / 10) bad(text);
    v = v * 10 + d;
    s.remove_prefix(1);
  }
  return v;
}

} // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text);

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    s.remove_prefix(1);
  }

  long long num = 0, den = 1;
  if (!s.empty() && s[0] == '.') {
    // ".5" style
    num = 0;
  } else {
    num = parse_digits(text, s);
  }

  if (!s.empty() && s[0] == '/') {
    s.remove_prefix(1);
    den = parse_digits(text, s);
    if (den == 0) bad(text);
  } else if (!s.empty() && s[0] == '.') {
    s.remove_prefix(1);
    if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) bad(text);
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
      int d = s[0] - '0';
      if (num > (INT64_MAX - d) / 10 || den > INT64_MAX / 10) bad(text);
      num = num * 10 + d;
      den *= 10;
      s.remove_prefix(1);
    }
  }
  if (!s.empty()) bad(text);
  Rat r(num, den);
  return neg ? -r : r;
}

std::string format_rational(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_point(const std::vector<Rat>& coords) {
  std::string out = "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += format_rational(coords[i]);
  }
  out += ")";
  return out;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::degenerate_box: return "DegenerateBox";
    case Errc::box_out_of_ambient: return "BoxOutOfAmbient";
    case Errc::marked_point_forbidden: return "MarkedPointForbidden";
    case Errc::identification_conflict: return "IdentificationConflict";
    case Errc::not_two_dimensional: return "NotTwoDimensional";
    case Errc::inexact_hom_set: return "InexactHomSet";
    case Errc::subset_budget_exceeded: return "SubsetBudgetExceeded";
    case Errc::not_a_pospace: return "NotAPospace";
    case Errc::cover_invalid: return "CoverInvalid";
    case Errc::inclusion_not_functorial: return "InclusionNotFunctorial";
    case Errc::incompatible_retracts: return "IncompatibleRetracts";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_resource: return "UnknownResource";
    case Errc::unmatched_release: return "UnmatchedRelease";
    case Errc::release_before_acquire: return "ReleaseBeforeAcquire";
    case Errc::too_many_processes: return "TooManyProcesses";
    case Errc::input_error: return "InputError";
    case Errc::analysis_error: return "AnalysisError";
  }
  return "Unknown";
}

} // namespace ditop
