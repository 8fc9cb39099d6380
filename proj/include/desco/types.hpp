#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

#include "desco/gf.hpp"

namespace desco {

using Time = std::int64_t;
using Rational = boost::rational<std::int64_t>;

/// One source sub-symbol: row `row` of the source packet sent at `time`.
struct SubSymbolId {
  Time time = 0;
  int row = 0;
  friend constexpr auto operator<=>(const SubSymbolId&, const SubSymbolId&) = default;
};

/// coefficient * s_row[time], one summand of a parity sub-symbol.
struct Term {
  SubSymbolId symbol;
  gf::Element coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Bad parameters handed to a constructor or operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No certified code could be produced for the requested parameters.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace desco
