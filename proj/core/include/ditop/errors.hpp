#ifndef DITOP_ERRORS_HPP
#define DITOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ditop {

enum class Errc {
  // scene validation
  degenerate_box,
  box_out_of_ambient,
  marked_point_forbidden,
  identification_conflict,
  // dipath engine
  not_two_dimensional,
  // retracts / models
  inexact_hom_set,
  subset_budget_exceeded,
  not_a_pospace,
  // van Kampen
  cover_invalid,
  inclusion_not_functorial,
  incompatible_retracts,
  // PV front-end
  syntax_error,
  unknown_resource,
  unmatched_release,
  release_before_acquire,
  too_many_processes,
  // I/O & misc
  input_error,
  analysis_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message, int line = -1, int column = -1)
      : std::runtime_error(std::move(message)), code_(code), line_(line), column_(column) {}

  Errc code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  Errc code_;
  int line_, column_;
};

} // namespace ditop

#endif
