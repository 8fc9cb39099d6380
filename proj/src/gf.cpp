#include "desco/gf.hpp"

#include <string>

namespace desco::gf {
namespace {

constexpr std::array<unsigned, 9> kPolynomials = {
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11B};

unsigned order_of(const Field& f, Element a) {
  Element x = a;
  unsigned n = 1;
  while (x != Element(1)) {
    x = f.mul_slow(x, a);
    ++n;
    if (n > f.size()) return 0;
  }
  return n;
}

}  // namespace

const Field& Field::get(int m) {
  static const std::array<Field, 8> fields = {Field(1), Field(2), Field(3), Field(4),
                                              Field(5), Field(6), Field(7), Field(8)};
  if (m < 1 || m > 8) {
    throw FieldError("field exponent must be in [1, 8], got " + std::to_string(m));
  }
  return fields[m - 1];
}

Field::Field(int m) : m_(m), poly_(kPolynomials[m]) {
  const unsigned q = size();
  if (q == 2) {
    generator_ = Element(1);
  } else {
    for (unsigned g = 2; g < q; ++g) {
      if (order_of(*this, Element(static_cast<std::uint8_t>(g))) == q - 1) {
        generator_ = Element(static_cast<std::uint8_t>(g));
        break;
      }
    }
  }
  Element x(1);
  for (unsigned e = 0; e < q - 1; ++e) {
    exp_[e] = x;
    exp_[e + q - 1] = x;
    log_[x.value] = static_cast<std::uint16_t>(e);
    x = mul_slow(x, generator_);
  }
}

Element Field::mul_slow(Element a, Element b) const {
  unsigned acc = 0;
  unsigned x = a.value;
  unsigned y = b.value;
  while (y != 0) {
    if (y & 1u) acc ^= x;
    y >>= 1;
    x <<= 1;
    if (x & size()) x ^= poly_;
  }
  return Element(static_cast<std::uint8_t>(acc));
}

Element Field::inv(Element a) const {
  if (a.is_zero()) throw FieldError("zero has no multiplicative inverse");
  const unsigned q1 = size() - 1;
  return exp_[(q1 - log_[a.value]) % q1];
}

Element Field::pow(Element a, unsigned e) const {
  if (e == 0) return Element(1);
  if (a.is_zero()) return Element{};
  const unsigned q1 = size() - 1;
  return exp_[(static_cast<unsigned long long>(log_[a.value]) * e) % q1];
}

}  // namespace desco::gf
