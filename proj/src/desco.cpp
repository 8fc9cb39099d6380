#include "desco/desco.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

#include "desco/linear_system.hpp"

namespace desco {

int t2_star(int B, int T, int alpha) { return alpha * T + B; }

DescoCode::DescoCode(ScoCode c1, ScoCode c2, int alpha)
    : alpha_(alpha),
      composite_(c1.field_bits(), c1.row_count(), c1.parity_count(),
                 {Component{c1, 0, 0, {}}, Component{c2, c1.row_count() + c1.parity_count(), 0, {}}}) {
  if (alpha < 2) throw ParameterError("alpha must be >= 2");
  if (c1.orientation() != Orientation::main || c1.ell() != 1) throw ParameterError("c1 must be a main-diagonal code with step 1");
  if (c2.orientation() != Orientation::opposite || c2.ell() != alpha - 1) {
    throw ParameterError("c2 must be an opposite-diagonal code with step alpha-1");
  }
  if (c1.parity_count() != c2.parity_count() || c1.row_count() != c2.row_count()) {
    throw ParameterError("c1 and c2 must share (B,T)");
  }
}

Contract DescoCode::contract(Receiver r) const {
  return r == Receiver::user1 ? Contract{B(), T()} : Contract{b2(), t2()};
}

DecodeReport DescoCode::structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const {
  return r == Receiver::user1 ? decode_user1(*this, rx, j, b) : decode_user2(*this, rx, j, b);
}

DescoCode desco_construct(int B, int T, int alpha, int field_bits) {
  if (B < 1 || B > T) throw ParameterError("DE-SCo needs 1 <= B <= T");
  if (alpha < 2) throw ParameterError("DE-SCo needs alpha >= 2");
  auto c1 = choose_coefficients(B, T, Orientation::main, 1, field_bits);
  auto c2 = choose_coefficients(B, T, Orientation::opposite, alpha - 1, field_bits);
  return DescoCode(std::move(c1), std::move(c2), alpha);
}

ChannelSymbol desco_encode(const DescoCode& code, const SourceStream& history, Time i) {
  return ChannelSymbol{i, source_at(history, i), parity_at(code, history, i)};
}

DecodeReport decode_user1(const DescoCode& code, const ReceivedStream& rx, Time j, int b) {
  if (b == 0) return DecodeReport{j, 0, {}, {}, {}, 0, true, std::nullopt};
  const auto widened = widen_erasure(rx, j, std::max(b, code.B()));
  auto report = cancellation_decode(code.composite(), {0}, widened, code.T(), "user1");
  return restrict_report(std::move(report), j, b, code.T());
}

std::string to_string(const TraceEntry& e, Time origin) {
  const Time a = e.anchor - origin;
  switch (e.kind) {
    case TraceEntry::Kind::main_diagonal:
      return "d^A_{" + std::to_string(a) + "}";
    case TraceEntry::Kind::opposite_diagonal:
      return "d^B_{" + std::to_string(a) + "}";
    case TraceEntry::Kind::main_parity:
      break;
  }
  return "p^A[" + std::to_string(a) + "..]";
}

namespace {

constexpr Time kBeforeStart = std::numeric_limits<Time>::min();

// A parity value together with the slot at which it becomes computable.
struct Observation {
  std::vector<Term> terms;
  gf::Element value;
  Time available = 0;
};

class User2Decoder {
 public:
  User2Decoder(const DescoCode& code, const ReceivedStream& rx, Time j, int superset)
      : code_(code),
        rx_(rx),
        field_(gf::Field::get(code.field_bits())),
        i_(j + superset),
        tau_(j + code.t2()) {}

  User2Result run(Time j, int b) {
    User2Result out;
    step1_expose();
    out.trace = recursive_nonurgent_decode();
    step3_urgent();

    DecodeReport full;
    for (Time t = 0; t < rx_.horizon(); ++t) {
      if (!rx_.is_erased(t)) continue;
      for (int r = 0; r < code_.source_rows(); ++r) full.erased.push_back({t, r});
    }
    for (const auto& [id, entry] : recovered_) {
      full.recovered_at.emplace(id, entry.first);
      full.values.emplace(id, entry.second);
      if (!urgent(id.row)) out.last_nonurgent = std::max(out.last_nonurgent, entry.first);
    }
    out.report = restrict_report(std::move(full), j, b, code_.t2());
    out.precondition = violation_;
    if (!out.report.success && violation_) out.report.failure = violation_;
    if (out.report.failure && out.report.failure->stage.empty()) out.report.failure->stage = "user2 urgent";
    return out;
  }

  // Stages 1-4: every erased non-urgent sub-symbol, in the order the
  // recursion unlocks them.
  std::vector<TraceEntry> recursive_nonurgent_decode() {
    std::vector<TraceEntry> trace;
    const int B = code_.B();
    const int T = code_.T();
    const int step = code_.alpha() - 1;

    for (Time a = i_ - code_.b2(); a <= i_ - B - 1; ++a) {
      trace.push_back(solve_opposite(a, 1, 0, i_ + T, tau_));
    }

    trace.push_back(recover_main_parity());

    for (Time a = i_ - 1; a >= i_ - B; --a) trace.push_back(solve_main(a, 3, 0));

    for (int k = 1; k <= T - B - 1; ++k) {
      trace.push_back(solve_main(i_ - B - k, 4, k));
      for (Time a = i_ - B + static_cast<Time>(k - 1) * step; a <= i_ - B + static_cast<Time>(k) * step - 1; ++a) {
        trace.push_back(solve_opposite(a, 4, k, i_ + T, tau_));
      }
    }
    return trace;
  }

 private:
  bool urgent(int row) const { return is_urgent_row(row, code_.B(), code_.T(), Orientation::opposite); }

  std::optional<std::pair<Time, gf::Element>> known(const SubSymbolId& s) const {
    if (s.time < 0) return std::make_pair(kBeforeStart, gf::Element{});
    if (rx_.received(s.time)) return std::make_pair(kBeforeStart, rx_.data.source.at(s.time, s.row));
    if (auto it = recovered_.find(s); it != recovered_.end()) return it->second;
    return std::nullopt;
  }

  // Value of component c's contribution to stream row k at slot t, if every
  // term is known, with the slot at which the last term became known.
  std::optional<std::pair<Time, gf::Element>> component_value(std::size_t c, Time t, int k, bool received_only) const {
    std::vector<Term> terms;
    code_.composite().component_terms(c, t, k, terms);
    gf::Element v;
    Time when = kBeforeStart;
    for (const auto& term : terms) {
      auto kv = known(term.symbol);
      if (!kv || (received_only && kv->first != kBeforeStart)) return std::nullopt;
      when = std::max(when, kv->first);
      v = gf::add(v, field_.mul(term.coef, kv->second));
    }
    return std::make_pair(when, v);
  }

  // Parity of component `target` at stream slot t, row k, with the other
  // component cancelled.
  bool expose(std::size_t target, Time t, int k, bool received_only,
              std::map<std::pair<Time, int>, Observation>& into) {
    if (!rx_.received(t) || into.contains({t, k})) return false;
    auto other = component_value(1 - target, t, k, received_only);
    if (!other) return false;
    Observation obs;
    code_.composite().component_terms(target, t, k, obs.terms);
    obs.value = gf::add(rx_.data.parity.at(t, k), other->second);
    obs.available = std::max(t, other->first);
    into.emplace(std::make_pair(t, k), std::move(obs));
    return true;
  }

  void step1_expose() {
    for (Time t = i_ + code_.T(); t < rx_.horizon(); ++t) {
      for (int k = 0; k < code_.B(); ++k) expose(1, t, k, true, exposed_b_);
    }
  }

  TraceEntry recover_main_parity() {
    TraceEntry e{2, 0, TraceEntry::Kind::main_parity, i_, {}};
    for (Time t = i_; t < i_ + code_.T(); ++t) {
      for (int k = 0; k < code_.B(); ++k) {
        if (!expose(0, t, k, false, exposed_a_) && !exposed_a_.contains({t, k}) && rx_.received(t)) {
          note_violation(2, t, k);
        }
      }
    }
    return e;
  }

  void note_violation(int stage, Time t, int k) {
    if (violation_) return;
    std::vector<Term> terms;
    code_.composite().component_terms(1, t, k, terms);
    for (const auto& term : terms) {
      if (!known(term.symbol)) {
        violation_ = DecodeFailure{term.symbol, term.symbol.time + code_.t2(), "user2 stage " + std::to_string(stage)};
        return;
      }
    }
  }

  // Solves one diagonal from the given observations, substituting what is
  // already known. Equations enter in order of availability, so each
  // recovery is stamped with the first slot at which it is determined.
  std::vector<SubSymbolId> solve(std::vector<Observation> obs) {
    for (auto& o : obs) {
      std::vector<Term> unknown;
      for (const auto& term : o.terms) {
        if (auto kv = known(term.symbol)) {
          o.available = std::max(o.available, kv->first);
          o.value = gf::add(o.value, field_.mul(term.coef, kv->second));
        } else {
          unknown.push_back(term);
        }
      }
      o.terms = std::move(unknown);
    }
    std::stable_sort(obs.begin(), obs.end(), [](const auto& x, const auto& y) { return x.available < y.available; });

    IncrementalSolver solver(field_);
    std::vector<SubSymbolId> fresh;
    for (const auto& o : obs) {
      if (o.terms.empty()) continue;
      std::vector<LinearTerm> eq;
      for (const auto& term : o.terms) eq.push_back({term.symbol, term.coef});
      for (const auto& id : solver.add_equation(eq, o.value)) {
        recovered_.emplace(id, std::make_pair(o.available, *solver.value(id)));
        fresh.push_back(id);
      }
    }
    return fresh;
  }

  void check_nonurgent(const DiagonalIndex& d, int stage) {
    if (violation_) return;
    for (const auto& id : d.entries) {
      if (rx_.is_erased(id.time) && !urgent(id.row) && !recovered_.contains(id)) {
        violation_ = DecodeFailure{id, id.time + code_.t2(), "user2 stage " + std::to_string(stage)};
        return;
      }
    }
  }

  // d^B_a from the exposed p^B at stream slots [from, to).
  TraceEntry solve_opposite(Time a, int stage, int k, Time from, Time to) {
    const ScoCode& c2 = code_.c2();
    std::vector<Observation> obs;
    for (int row = 0; row < c2.parity_count(); ++row) {
      const Time t = c2.parity_time(a, row) + code_.delta();
      if (t < from || t >= to) continue;
      if (auto it = exposed_b_.find({t, row}); it != exposed_b_.end()) obs.push_back(it->second);
    }
    TraceEntry e{stage, k, TraceEntry::Kind::opposite_diagonal, a, solve(std::move(obs))};
    check_nonurgent(c2.diagonal(a), stage);
    return e;
  }

  // d^A_a from the recovered p^A[i..i+T-1].
  TraceEntry solve_main(Time a, int stage, int k) {
    const ScoCode& c1 = code_.c1();
    std::vector<Observation> obs;
    for (int row = 0; row < c1.parity_count(); ++row) {
      const Time t = c1.parity_time(a, row);
      if (t < i_ || t >= i_ + code_.T()) continue;
      if (auto it = exposed_a_.find({t, row}); it != exposed_a_.end()) obs.push_back(it->second);
    }
    TraceEntry e{stage, k, TraceEntry::Kind::main_diagonal, a, solve(std::move(obs))};
    check_nonurgent(c1.diagonal(a), stage);
    return e;
  }

  // Whatever is left, from every exposable parity of either component,
  // until nothing changes.
  void step3_urgent() {
    for (bool progress = true; progress;) {
      progress = false;
      for (Time t = i_; t < rx_.horizon(); ++t) {
        for (int k = 0; k < code_.B(); ++k) {
          progress |= expose(1, t, k, false, exposed_b_);
          progress |= expose(0, t, k, false, exposed_a_);
        }
      }
      std::map<Time, std::vector<Observation>> by_b, by_a;
      for (const auto& [key, o] : exposed_b_) by_b[code_.c2().parity_anchor(key.first - code_.delta(), key.second)].push_back(o);
      for (const auto& [key, o] : exposed_a_) by_a[code_.c1().parity_anchor(key.first, key.second)].push_back(o);
      for (auto& [a, obs] : by_b) progress |= !solve(std::move(obs)).empty();
      for (auto& [a, obs] : by_a) progress |= !solve(std::move(obs)).empty();
    }
  }

  const DescoCode& code_;
  const ReceivedStream& rx_;
  const gf::Field& field_;
  Time i_;
  Time tau_;
  std::map<std::pair<Time, int>, Observation> exposed_a_;
  std::map<std::pair<Time, int>, Observation> exposed_b_;
  std::map<SubSymbolId, std::pair<Time, gf::Element>> recovered_;
  std::optional<DecodeFailure> violation_;
};

}  // namespace

User2Result decode_user2_traced(const DescoCode& code, const ReceivedStream& rx, Time j, int b) {
  if (b == 0) return User2Result{DecodeReport{j, 0, {}, {}, {}, 0, true, std::nullopt}, {}, 0, std::nullopt};
  const int superset = std::max(b, code.b2());
  const auto widened = widen_erasure(rx, j, superset);
  return User2Decoder(code, widened, j, superset).run(j, b);
}

DecodeReport decode_user2(const DescoCode& code, const ReceivedStream& rx, Time j, int b) {
  return decode_user2_traced(code, rx, j, b).report;
}

}  // namespace desco
