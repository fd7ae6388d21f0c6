#ifndef DITOP_RATIONAL_HPP
#define DITOP_RATIONAL_HPP

#include <boost/rational.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace ditop {

using Rat = boost::rational<long long>;

// Accepts "3", "-1", "1/3", "0.25", "+.5".  Exact decimal and fraction
// notation only; anything else (exponents, hex floats, junk) throws
// ditop::Error{input_error}.
Rat parse_rational(std::string_view text);

// Shortest exact form: integers as "n", otherwise "p/q".
std::string format_rational(const Rat& r);

std::string format_point(const std::vector<Rat>& coords);

} // namespace ditop

#endif
