#include "desco/stream.hpp"

#include <random>

namespace desco {

gf::Element evaluate(const gf::Field& field, std::span<const Term> terms, const SourceStream& source) {
  gf::Element acc;
  for (const auto& term : terms) {
    acc = gf::add(acc, field.mul(term.coef, source.at(term.symbol.time, term.symbol.row)));
  }
  return acc;
}

ParityVector parity_at(const StreamCode& code, const SourceStream& source, Time t) {
  const auto& field = gf::Field::get(code.field_bits());
  ParityVector out{t, std::vector<gf::Element>(static_cast<std::size_t>(code.parity_rows()))};
  std::vector<Term> terms;
  for (int k = 0; k < code.parity_rows(); ++k) {
    terms.clear();
    code.parity_terms(t, k, terms);
    out.checks[static_cast<std::size_t>(k)] = evaluate(field, terms, source);
  }
  return out;
}

SourceSymbol source_at(const SourceStream& source, Time t) {
  SourceSymbol s{t, {}};
  for (int r = 0; r < source.rows(); ++r) s.subs.push_back(source.at(t, r));
  return s;
}

ParityStream encode_serial(const StreamCode& code, const SourceStream& source) {
  ParityStream parity(code.parity_rows(), source.horizon());
  for (Time t = 0; t < source.horizon(); ++t) {
    const auto p = parity_at(code, source, t);
    for (int k = 0; k < code.parity_rows(); ++k) parity.set(t, k, p.checks[static_cast<std::size_t>(k)]);
  }
  return parity;
}

ParityStream encode(const StreamCode& code, const SourceStream& source) {
  ParityStream parity(code.parity_rows(), source.horizon());
  const auto& field = gf::Field::get(code.field_bits());
  const Time horizon = source.horizon();
  const int rows = code.parity_rows();
#pragma omp parallel
  {
    std::vector<Term> terms;
#pragma omp for schedule(static)
    for (Time t = 0; t < horizon; ++t) {
      for (int k = 0; k < rows; ++k) {
        terms.clear();
        code.parity_terms(t, k, terms);
        parity.set(t, k, evaluate(field, terms, source));
      }
    }
  }
  return parity;
}

SourceStream random_source(int rows, Time horizon, int field_bits, std::uint64_t seed) {
  SourceStream s(rows, horizon);
  std::mt19937_64 rng(seed);
  const auto mask = static_cast<std::uint64_t>((1u << field_bits) - 1);
  for (Time t = 0; t < horizon; ++t) {
    for (int r = 0; r < rows; ++r) s.set(t, r, gf::Element(static_cast<std::uint8_t>(rng() & mask)));
  }
  return s;
}

}  // namespace desco
