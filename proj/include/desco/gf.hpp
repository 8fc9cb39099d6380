#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace desco::gf {

/// An element of GF(2^m), m <= 8. The field exponent lives in the Field the
/// element is used with; elements themselves are just the polynomial bits.
struct Element {
  std::uint8_t value = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint8_t v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Addition is carry-less: XOR of the bit patterns. Same in every GF(2^m).
constexpr Element add(Element a, Element b) {
  return Element(static_cast<std::uint8_t>(a.value ^ b.value));
}

/// GF(2^m) with a fixed reduction polynomial per m:
///
///   m=1 x+1           m=5 x^5+x^2+1
///   m=2 x^2+x+1       m=6 x^6+x+1
///   m=3 x^3+x+1       m=7 x^7+x^3+1
///   m=4 x^4+x+1       m=8 x^8+x^4+x^3+x+1 (0x11B)
///
/// 0x11B is irreducible but x is not a generator, so the log tables are
/// built from the smallest element whose order is 2^m - 1.
class Field {
 public:
  static const Field& get(int m);

  int bits() const { return m_; }
  unsigned size() const { return 1u << m_; }
  unsigned polynomial() const { return poly_; }
  Element generator() const { return generator_; }

  bool contains(Element a) const { return a.value < size(); }

  Element mul(Element a, Element b) const {
    if (a.is_zero() || b.is_zero()) return Element{};
    return exp_[log_[a.value] + log_[b.value]];
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, unsigned e) const;
  /// generator^e
  Element exp(unsigned e) const { return exp_[e % (size() - 1)]; }

  /// Shift-and-reduce product; independent of the tables.
  Element mul_slow(Element a, Element b) const;

 private:
  explicit Field(int m);

  int m_;
  unsigned poly_;
  Element generator_;
  std::array<Element, 512> exp_{};
  std::array<std::uint16_t, 256> log_{};
};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace desco::gf
