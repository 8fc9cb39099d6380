#include "desco/musco.hpp"

#include <numeric>
#include <stdexcept>

namespace desco {

CapacityAnswer capacity(const MulticastParams& p) {
  if (p.B1 < 1 || p.T1 < p.B1 || p.T2 < 1) throw ParameterError("capacity needs 1 <= B1 <= T1 and T2 >= 1");
  if (p.B2 <= p.B1 || p.B2 % p.B1 != 0) throw ParameterError("capacity needs B2 = alpha*B1 with integer alpha > 1");
  const int alpha = p.B2 / p.B1;
  const int t2_star = alpha * p.T1 + p.B1;

  std::vector<CapacityAnswer> cases;
  if (p.T2 >= t2_star) cases.push_back({"a/b", Rational(p.T1, p.T1 + p.B1)});
  if (std::max(p.B2, p.T1) + p.B1 <= p.T2 && p.T2 <= t2_star) {
    cases.push_back({"c", Rational(p.T2 - p.B1, p.T2 - p.B1 + p.B2)});
  }
  if (p.T1 <= p.T2 && p.T2 <= p.T1 + p.B1 && p.B2 <= p.T1) cases.push_back({"f", Rational(p.T1, p.T1 + p.B2)});
  if (p.T2 <= p.T1) cases.push_back({"g", Rational(p.T2, p.T2 + p.B2)});

  if (!cases.empty()) {
    for (const auto& c : cases) {
      if (c.rate != cases.front().rate) {
        throw std::logic_error("capacity cases " + cases.front().region + " and " + c.region + " disagree");
      }
    }
    return cases.front();
  }
  if (p.T1 == p.B1 && p.T2 == p.B2) {
    const std::int64_t t12 = static_cast<std::int64_t>(p.T1) * p.T2;
    return {"d/e", Rational(t12, t12 + static_cast<std::int64_t>(p.B1) * p.T2 + static_cast<std::int64_t>(p.B2) * p.T1)};
  }
  return {"open", std::nullopt};
}

Rational converse_rate_bound(int B, int T2, int alpha) {
  if (alpha < 2 || T2 < 1 || B < 1) throw ParameterError("converse bound needs alpha >= 2, B >= 1, T2 >= 1");
  return Rational(1) - Rational(alpha * B, (alpha - 1) * B + T2);
}

std::optional<Receiver> first_violation(const MulticastCode& code) {
  for (Receiver r : {Receiver::user1, Receiver::user2}) {
    const Contract c = code.contract(r);
    for (Time j = 0; j < code.sweep_period(); ++j) {
      for (int b = 1; b <= c.burst; ++b) {
        const Time horizon = j + c.burst + code.decode_window(r);
        const auto source = random_source(code.source_rows(), horizon, code.field_bits(),
                                          static_cast<std::uint64_t>(j * 257 + b));
        const auto rx = apply(single_burst(j, b, horizon), transmit(code, source));
        const auto report = code.structural_decode(r, rx, j, b);
        if (!report.meets(c.delay)) return r;
        for (const auto& [id, v] : report.values) {
          if (v != source.at(id.time, id.row)) return r;
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

DecodeReport decode_targets(const CompositeCode& code, std::vector<std::size_t> targets, const ReceivedStream& rx,
                            Time j, int b, Contract c, const std::string& stage) {
  if (b == 0) return DecodeReport{j, 0, {}, {}, {}, 0, true, std::nullopt};
  const auto widened = widen_erasure(rx, j, std::max(b, c.burst));
  auto report = cancellation_decode(code, targets, widened, c.delay, stage);
  return restrict_report(std::move(report), j, b, c.delay);
}

std::vector<int> lane(int first, int rows) {
  std::vector<int> out(static_cast<std::size_t>(rows));
  std::iota(out.begin(), out.end(), first);
  return out;
}

}  // namespace

CcScoCode::CcScoCode(MulticastParams p, CompositeCode composite, std::size_t user1_components)
    : p_(p), composite_(std::move(composite)), n1_(user1_components) {}

Contract CcScoCode::contract(Receiver r) const {
  return r == Receiver::user1 ? Contract{p_.B1, p_.T1} : Contract{p_.B2, p_.T2};
}

Time CcScoCode::sweep_period() const { return std::max(p_.T1 + p_.B1, p_.T2 + p_.B2); }

DecodeReport CcScoCode::structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const {
  std::vector<std::size_t> targets;
  for (std::size_t c = 0; c < composite_.components().size(); ++c) {
    if ((c < n1_) == (r == Receiver::user1)) targets.push_back(c);
  }
  return decode_targets(composite_, std::move(targets), rx, j, b, contract(r), r == Receiver::user1 ? "user1" : "user2");
}

CcScoCode ccsco_construct(const MulticastParams& p, int field_bits) {
  if (p.B1 < 1 || p.B1 > p.T1 || p.B2 < 1 || p.B2 > p.T2) {
    throw ParameterError("Cc-SCo needs 1 <= B1 <= T1 and 1 <= B2 <= T2");
  }
  if (p.B2 < p.B1) throw ParameterError("Cc-SCo needs B1 <= B2");

  if (p.B2 % p.B1 == 0 && p.T2 % p.T1 == 0 && p.B2 / p.B1 == p.T2 / p.T1) {
    const int ell = p.B2 / p.B1;
    auto c1 = choose_coefficients(p.B1, p.T1, Orientation::main, 1, field_bits);
    auto c2 = choose_coefficients(p.B1, p.T1, Orientation::main, ell, field_bits);
    CompositeCode composite(field_bits, p.T1, 2 * p.B1, {Component{c1, 0, 0, {}}, Component{c2, 0, p.B1, {}}});
    return CcScoCode(p, std::move(composite), 1);
  }

  const int rows = std::lcm(p.T1, p.T2);
  const int lanes1 = rows / p.T1;
  const int lanes2 = rows / p.T2;
  auto c1 = choose_coefficients(p.B1, p.T1, Orientation::main, 1, field_bits);
  auto c2 = choose_coefficients(p.B2, p.T2, Orientation::main, 1, field_bits);
  std::vector<Component> comps;
  for (int l = 0; l < lanes1; ++l) comps.push_back(Component{c1, 0, l * p.B1, lane(l * p.T1, p.T1)});
  for (int l = 0; l < lanes2; ++l) {
    comps.push_back(Component{c2, 0, lanes1 * p.B1 + l * p.B2, lane(l * p.T2, p.T2)});
  }
  CompositeCode composite(field_bits, rows, lanes1 * p.B1 + lanes2 * p.B2, std::move(comps));
  return CcScoCode(p, std::move(composite), static_cast<std::size_t>(lanes1));
}

IaScoCode::IaScoCode(CompositeCode composite, int alpha, int shift)
    : composite_(std::move(composite)), alpha_(alpha), shift_(shift) {
  if (composite_.components().size() != 2) throw ParameterError("IA-SCo has exactly two components");
}

Contract IaScoCode::contract(Receiver r) const {
  return r == Receiver::user1 ? Contract{B(), T()} : Contract{alpha_ * B(), alpha_ * T() + shift_};
}

DecodeReport IaScoCode::structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const {
  const bool one = r == Receiver::user1;
  return decode_targets(composite_, {one ? 0u : 1u}, rx, j, b, contract(r), one ? "user1" : "user2");
}

IaScoCode iasco_build(int B, int T, int alpha, int shift, int field_bits) {
  if (B < 1 || B > T) throw ParameterError("IA-SCo needs 1 <= B <= T");
  if (alpha < 2) throw ParameterError("IA-SCo needs alpha >= 2");
  if (shift < 0) throw ParameterError("IA-SCo needs shift >= 0");
  auto c1 = choose_coefficients(B, T, Orientation::main, 1, field_bits);
  auto c2 = choose_coefficients(B, T, Orientation::main, alpha, field_bits);
  CompositeCode composite(field_bits, T, B, {Component{c1, 0, 0, {}}, Component{c2, shift, 0, {}}});
  return IaScoCode(std::move(composite), alpha, shift);
}

IaScoCode iasco_construct(int B, int T, int alpha, int shift, int field_bits) {
  auto code = iasco_build(B, T, alpha, shift, field_bits);
  if (auto r = first_violation(code)) {
    const Contract c = code.contract(*r);
    throw ConstructionError("IA-SCo shift " + std::to_string(shift) + " violates the receiver " +
                            std::to_string(static_cast<int>(*r)) + " contract (" + std::to_string(c.burst) + "," +
                            std::to_string(c.delay) + ")");
  }
  return code;
}

SymbolMatrix source_expand(const SymbolMatrix& s) {
  if (s.rows() % 2 != 0) throw ParameterError("source_expand needs an even row count");
  const int half = s.rows() / 2;
  SymbolMatrix ts(half, 2 * s.horizon());
  for (Time t = 0; t < s.horizon(); ++t) {
    for (int r = 0; r < s.rows(); ++r) ts.set(2 * t + r / half, r % half, s.at(t, r));
  }
  return ts;
}

SymbolMatrix source_collapse(const SymbolMatrix& ts) {
  if (ts.horizon() % 2 != 0) throw ParameterError("source_collapse needs an even horizon");
  const int half = ts.rows();
  SymbolMatrix s(2 * half, ts.horizon() / 2);
  for (Time t = 0; t < s.horizon(); ++t) {
    for (int r = 0; r < s.rows(); ++r) s.set(t, r, ts.at(2 * t + r / half, r % half));
  }
  return s;
}

ExpandedMuscoCode::ExpandedMuscoCode(DescoCode inner) : inner_(std::move(inner)) {
  if (inner_.B() % 2 != 0) throw ParameterError("expanded code needs an even inner burst");
}

void ExpandedMuscoCode::parity_terms(Time t, int k, std::vector<Term>& out) const {
  const int p = inner_.parity_rows();
  const int r = inner_.source_rows();
  const std::size_t first = out.size();
  inner_.parity_terms(2 * t + k / p, k % p, out);
  for (std::size_t n = first; n < out.size(); ++n) {
    SubSymbolId& id = out[n].symbol;
    id = {id.time / 2, id.row + r * static_cast<int>(id.time % 2)};
  }
}

Contract ExpandedMuscoCode::contract(Receiver r) const {
  const Contract c = inner_.contract(r);
  return {c.burst / 2, (c.delay + 1) / 2};
}

DecodeReport ExpandedMuscoCode::structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const {
  ReceivedStream erx{ChannelStream{source_expand(rx.data.source), source_expand(rx.data.parity)}, {}};
  erx.erased.resize(static_cast<std::size_t>(2 * rx.horizon()));
  for (Time t = 0; t < erx.horizon(); ++t) erx.erased[static_cast<std::size_t>(t)] = rx.is_erased(t / 2);

  const auto inner = inner_.structural_decode(r, erx, 2 * j, 2 * b);
  const int half = inner_.source_rows();
  DecodeReport out;
  out.burst_start = j;
  out.burst_length = b;
  for (Time t = j; t < j + b; ++t) {
    for (int row = 0; row < source_rows(); ++row) {
      const SubSymbolId id{t, row};
      const SubSymbolId eid{2 * t + row / half, row % half};
      out.erased.push_back(id);
      if (auto it = inner.recovered_at.find(eid); it != inner.recovered_at.end()) out.recovered_at.emplace(id, it->second / 2);
      if (auto it = inner.values.find(eid); it != inner.values.end()) out.values.emplace(id, it->second);
    }
  }
  out.finalize(contract(r).delay, inner.failure ? inner.failure->stage : std::string{});
  return out;
}

ExpandedMuscoCode expanded_musco_construct(int field_bits) {
  return ExpandedMuscoCode(desco_construct(2, 3, 2, field_bits));
}

}  // namespace desco
