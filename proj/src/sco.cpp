#include "desco/sco.hpp"

#include "desco/composite.hpp"
#include "desco/oracle.hpp"

namespace desco {

std::string to_string(Orientation o) { return o == Orientation::main ? "main" : "opposite"; }

Orientation orientation_from_string(const std::string& s) {
  if (s == "main") return Orientation::main;
  if (s == "opposite") return Orientation::opposite;
  throw ParameterError("unknown orientation '" + s + "'");
}

DiagonalIndex diagonal_main(Time i, int T, int ell) {
  DiagonalIndex d{i, {}};
  for (int r = 0; r < T; ++r) d.entries.push_back({i + static_cast<Time>(r) * ell, r});
  return d;
}

DiagonalIndex diagonal_opposite(Time i, int T, int ell) {
  DiagonalIndex d{i, {}};
  for (int r = 0; r < T; ++r) d.entries.push_back({i - static_cast<Time>(r) * ell, r});
  return d;
}

ScoCode::ScoCode(int B, int T, Orientation orientation, int ell, int field_bits, Table coeffs)
    : b_(B), t_(T), orientation_(orientation), ell_(ell), m_(field_bits), coeffs_(std::move(coeffs)) {
  if (T < 1 || B < 0 || ell < 1) {
    throw ParameterError("streaming code needs T >= 1, B >= 0, l >= 1");
  }
  const auto& field = gf::Field::get(field_bits);
  if (coeffs_.size() != static_cast<std::size_t>(B)) throw ParameterError("coefficient table must have B rows");
  for (const auto& row : coeffs_) {
    if (row.size() != static_cast<std::size_t>(T)) throw ParameterError("coefficient rows must have T entries");
    for (auto c : row) {
      if (!field.contains(c)) throw ParameterError("coefficient outside GF(2^m)");
    }
  }
}

Time ScoCode::parity_anchor(Time i, int k) const {
  const Time l = ell_;
  return orientation_ == Orientation::main ? i - l * t_ - k * l : i - l - k * l;
}

Time ScoCode::parity_time(Time anchor, int k) const {
  const Time l = ell_;
  return orientation_ == Orientation::main ? anchor + l * t_ + k * l : anchor + l + k * l;
}

Time ScoCode::anchor_of(SubSymbolId s) const {
  const Time step = static_cast<Time>(s.row) * ell_;
  return orientation_ == Orientation::main ? s.time - step : s.time + step;
}

DiagonalIndex ScoCode::diagonal(Time anchor) const {
  return orientation_ == Orientation::main ? diagonal_main(anchor, t_, ell_) : diagonal_opposite(anchor, t_, ell_);
}

void ScoCode::parity_terms(Time t, int k, std::vector<Term>& out) const {
  const Time anchor = parity_anchor(t, k);
  const Time l = orientation_ == Orientation::main ? ell_ : -ell_;
  for (int r = 0; r < t_; ++r) {
    const gf::Element c = coeff(k, r);
    const Time time = anchor + r * l;
    if (c.is_zero() || time < 0) continue;
    out.push_back({{time, r}, c});
  }
}

bool ScoCode::certify() {
  certified_ = verify_code(*this).certified;
  return certified_;
}

ParityVector sco_parity(const ScoCode& code, const SourceStream& history, Time i) {
  return parity_at(code, history, i);
}

DecodeReport sco_decode_burst(const ScoCode& code, const ReceivedStream& received, Time j, int b) {
  if (b == 0) return DecodeReport{j, 0, {}, {}, {}, 0, true, std::nullopt};
  CompositeCode single(code.field_bits(), code.row_count(), code.parity_count(), {Component{code, 0, 0, {}}});
  auto report = cancellation_decode(single, {0}, received, code.delay(), "single-user");
  return restrict_report(std::move(report), j, b, code.delay());
}

Certification verify_code(const ScoCode& code) {
  const int period = code.ell() * (code.row_count() + code.parity_count());
  for (Time j = 0; j < period; ++j) {
    for (int b = 1; b <= code.burst(); ++b) {
      const Time horizon = j + b + code.delay() + code.burst() + 1;
      const auto source = random_source(code.row_count(), horizon, code.field_bits(),
                                        static_cast<std::uint64_t>(j * 131 + b));
      const auto rx = apply(single_burst(j, b, horizon), transmit(code, source));
      auto report = oracle_decode(code, rx, code.delay());
      bool values_ok = true;
      for (const auto& [id, v] : report.values) values_ok = values_ok && v == source.at(id.time, id.row);
      if (!report.meets(code.delay()) || !values_ok) return {false, std::move(report)};
    }
  }
  return {true, std::nullopt};
}

bool is_urgent_row(int row, int B, int T, Orientation orientation) {
  const int position = orientation == Orientation::main ? row : T - 1 - row;
  return position < B;
}

std::optional<ScoCode::Table> urgent_repetition_table(int B, int T, Orientation orientation, int field_bits) {
  const auto& f = gf::Field::get(field_bits);
  const int nonurgent = T - B;
  // parity[k][n]: MDS parity coefficient of non-urgent position n in check k.
  std::vector<std::vector<gf::Element>> parity(static_cast<std::size_t>(B),
                                               std::vector<gf::Element>(static_cast<std::size_t>(nonurgent)));
  if (B == 1 || nonurgent <= 1) {
    for (auto& row : parity) std::fill(row.begin(), row.end(), gf::Element(1));
  } else {
    if (static_cast<unsigned>(T) > f.size()) return std::nullopt;
    // Cauchy block 1/(x_k + y_n) with x_k = k, y_n = B + n: every square
    // submatrix is invertible.
    for (int k = 0; k < B; ++k) {
      for (int n = 0; n < nonurgent; ++n) {
        parity[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] =
            f.inv(gf::add(gf::Element(static_cast<std::uint8_t>(k)), gf::Element(static_cast<std::uint8_t>(B + n))));
      }
    }
  }
  ScoCode::Table table(static_cast<std::size_t>(B), std::vector<gf::Element>(static_cast<std::size_t>(T)));
  for (int k = 0; k < B; ++k) {
    for (int pos = 0; pos < T; ++pos) {
      const int row = orientation == Orientation::main ? pos : T - 1 - pos;
      gf::Element c;
      if (pos < B) {
        c = gf::Element(pos == k ? 1 : 0);
      } else {
        c = parity[static_cast<std::size_t>(k)][static_cast<std::size_t>(pos - B)];
      }
      table[static_cast<std::size_t>(k)][static_cast<std::size_t>(row)] = c;
    }
  }
  return table;
}

ScoCode choose_coefficients(int B, int T, Orientation orientation, int ell, int field_bits) {
  if (B < 1 || B > T) throw ParameterError("choose_coefficients needs 1 <= B <= T");
  if (ell < 1) throw ParameterError("interleave step must be >= 1");

  // Urgent-repetition first: its urgent taps are single, which the two-user
  // decoders rely on when peeling one component off the combined parity.
  std::vector<ScoCode::Table> candidates;
  if (auto t = urgent_repetition_table(B, T, orientation, field_bits)) candidates.push_back(std::move(*t));
  candidates.emplace_back(static_cast<std::size_t>(B), std::vector<gf::Element>(static_cast<std::size_t>(T), gf::Element(1)));

  for (auto& table : candidates) {
    ScoCode code(B, T, orientation, ell, field_bits, std::move(table));
    if (code.certify()) return code;
  }
  throw ConstructionError("no certified (" + std::to_string(B) + "," + std::to_string(T) + ") " +
                          to_string(orientation) + " code over GF(2^" + std::to_string(field_bits) + ")");
}

}  // namespace desco
