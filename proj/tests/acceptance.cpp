// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "desco/channel.hpp"
#include "desco/desco.hpp"
#include "desco/musco.hpp"
#include "desco/oracle.hpp"
#include "desco/sweep.hpp"

using namespace desco;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "first failure: " << what;
    pass = false;
  }
};

std::string str(const Rational& r) {
  std::ostringstream s;
  s << r.numerator() << '/' << r.denominator();
  return s.str();
}

struct LatticePoint {
  int B, T, alpha;
};

std::vector<LatticePoint> lattice() {
  std::vector<LatticePoint> out;
  for (int alpha : {2, 3}) {
    for (int B = 1; B <= 3; ++B) {
      for (int T = B; T <= 6; ++T) out.push_back({B, T, alpha});
    }
  }
  return out;
}

std::string name(const LatticePoint& p) {
  return "(" + std::to_string(p.B) + "," + std::to_string(p.T) + ",a=" + std::to_string(p.alpha) + ")";
}

bool values_match(const DecodeReport& r, const SourceStream& s) {
  for (const auto& [id, v] : r.values) {
    if (v != s.at(id.time, id.row)) return false;
  }
  return true;
}

void c1(Outcome& o) {
  const SingleUserCode code(choose_coefficients(1, 2, Orientation::main, 1, 1));
  const auto rep = sweep(code, Receiver::user1);
  o.require(rep.certified, "not certified");
  o.require(rep.worst_delay() == 2, "worst delay " + std::to_string(rep.worst_delay()));
  o.require(code.rate() == Rational(2, 3), "rate " + str(code.rate()));
  o.detail << (o.pass ? "" : "; ") << "worst delay " << rep.worst_delay() << ", rate " << str(code.rate());
}

void c2(Outcome& o) {
  const SingleUserCode code(choose_coefficients(1, 2, Orientation::main, 2, 1));
  const auto rep = sweep(code, Receiver::user1);
  o.require(rep.contract.burst == 2, "contract burst " + std::to_string(rep.contract.burst));
  o.require(rep.certified, "not certified");
  o.require(rep.worst_delay() == 4, "worst delay " + std::to_string(rep.worst_delay()));
  o.require(code.rate() == Rational(2, 3), "rate " + str(code.rate()));
  o.detail << (o.pass ? "" : "; ") << "burst-2 worst delay " << rep.worst_delay() << ", rate " << str(code.rate());
}

void c3(Outcome& o) {
  const auto code = ccsco_construct({1, 2, 2, 4});
  o.require(code.rate() == Rational(1, 2), "rate " + str(code.rate()));
  for (Receiver r : {Receiver::user1, Receiver::user2}) {
    const auto rep = sweep(code, r);
    o.require(rep.certified, "receiver " + std::to_string(static_cast<int>(r)) + " not certified");
    o.detail << (o.pass ? "" : "; ") << "user" << static_cast<int>(r) << " worst " << rep.worst_delay() << "/"
             << rep.contract.delay << ' ';
  }
  o.detail << "rate " << str(code.rate());
}

void c4(Outcome& o) {
  const auto code = iasco_construct(1, 2, 2, 2, 1);
  o.require(code.rate() == Rational(2, 3), "rate " + str(code.rate()));
  const auto u1 = sweep(code, Receiver::user1);
  o.require(u1.contract.burst == 1 && u1.contract.delay == 2, "user 1 contract");
  o.require(u1.certified, "user 1 not certified");
  const auto u2 = sweep(code, Receiver::user2);
  o.require(u2.certified, "user 2 not certified");
  o.require(u2.worst_delay() == 6, "user 2 worst delay " + std::to_string(u2.worst_delay()));
  o.detail << (o.pass ? "" : "; ") << "user1 worst " << u1.worst_delay() << ", user2 worst " << u2.worst_delay()
           << " (oracle " << u2.oracle_worst_delay << "), rate " << str(code.rate());
}

void c5(Outcome& o) {
  const auto code = desco_construct(1, 2, 2, 1);
  o.require(code.rate() == Rational(2, 3), "rate " + str(code.rate()));
  const auto u1 = sweep(code, Receiver::user1);
  const auto u2 = sweep(code, Receiver::user2);
  o.require(u1.certified && u1.worst_delay() == 2, "user 1 worst " + std::to_string(u1.worst_delay()));
  o.require(u2.certified && u2.worst_delay() == 5, "user 2 worst " + std::to_string(u2.worst_delay()));
  o.require(code.t2() == 5, "T2* " + std::to_string(code.t2()));
  o.detail << (o.pass ? "" : "; ") << "user1 worst " << u1.worst_delay() << ", user2 worst " << u2.worst_delay()
           << ", rate " << str(code.rate());
}

void c6(Outcome& o) {
  const auto code = desco_construct(4, 7, 2);
  // Burst of 8 ending just before the origin i = 8.
  const Time j = 0;
  const Time i = 8;
  const Time horizon = j + 8 + code.decode_window(Receiver::user2);
  const auto source = random_source(code.source_rows(), horizon, code.field_bits(), 11);
  const auto rx = apply(single_burst(j, 8, horizon), transmit(code, source));
  const auto out = decode_user2_traced(code, rx, j, 8);

  o.require(out.report.success, "decode failed");
  o.require(values_match(out.report, source), "wrong values");
  o.require(out.report.worst_delay <= 18, "worst delay " + std::to_string(out.report.worst_delay));
  o.require(!out.precondition, "stage precondition violated");
  Time last_nonurgent = 0;
  for (const auto& [id, t] : out.report.recovered_at) {
    if (id.row < 3) last_nonurgent = std::max(last_nonurgent, t - i);
  }
  o.require(last_nonurgent <= 9, "non-urgent rows done at i+" + std::to_string(last_nonurgent));

  std::vector<std::string> names;
  for (const auto& e : out.trace) {
    if (e.kind != TraceEntry::Kind::main_parity) names.push_back(to_string(e, i));
  }
  const std::vector<std::string> expected{"d^B_{-8}", "d^B_{-7}", "d^B_{-6}", "d^B_{-5}", "d^A_{-1}", "d^A_{-2}",
                                          "d^A_{-3}", "d^A_{-4}", "d^A_{-5}", "d^B_{-4}", "d^A_{-6}", "d^B_{-3}"};
  std::string got;
  for (const auto& n : names) got += (got.empty() ? "" : " ") + n;
  o.require(names == expected, "trace " + got);
  o.detail << (o.pass ? "" : "; ") << "non-urgent by i+" << last_nonurgent << ", worst delay "
           << out.report.worst_delay << ", trace " << got;
}

void c7(Outcome& o) {
  const auto code = expanded_musco_construct();
  o.require(code.rate() == Rational(3, 5), "rate " + str(code.rate()));
  const auto u1 = sweep(code, Receiver::user1);
  const auto u2 = sweep(code, Receiver::user2);
  o.require(u1.contract.burst == 1 && u2.contract.burst == 2, "contract bursts");
  o.require(u1.certified && u1.worst_delay() <= 2 && u1.oracle_worst_delay <= 2,
            "single erasure delay " + std::to_string(u1.worst_delay()));
  o.require(u2.certified && u2.worst_delay() <= 4 && u2.oracle_worst_delay <= 4,
            "2-burst delay " + std::to_string(u2.worst_delay()));
  o.detail << (o.pass ? "" : "; ") << "single erasure " << u1.worst_delay() << ", 2-burst " << u2.worst_delay()
           << ", rate " << str(code.rate());
}

// Some erased sub-symbol first recovered exactly at its deadline.
bool has_tight_symbol(const SweepReport& rep) {
  for (const auto& s : rep.scenarios) {
    for (const auto& [id, t] : s.oracle.recovered_at) {
      if (t == id.time + rep.contract.delay) return true;
    }
  }
  return false;
}

void c8(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  int codes = 0;
  for (const auto& p : lattice()) {
    const auto code = desco_construct(p.B, p.T, p.alpha);
    const auto u1 = sweep(code, Receiver::user1);
    const auto u2 = sweep(code, Receiver::user2);
    o.require(u1.contract.delay == p.T && u1.contract.burst == p.B, name(p) + " user 1 contract");
    o.require(u2.contract.delay == p.alpha * p.T + p.B && u2.contract.burst == p.alpha * p.B,
              name(p) + " user 2 contract");
    o.require(u1.certified, name(p) + " user 1 not certified");
    o.require(u2.certified, name(p) + " user 2 not certified");
    o.require(u1.dominance_violations == 0 && u2.dominance_violations == 0, name(p) + " oracle later than structural");
    o.require(has_tight_symbol(u1) || has_tight_symbol(u2), name(p) + " no tightness witness");
    ++codes;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 300.0, "took " + std::to_string(secs) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", secs);
  o.detail << (o.pass ? "" : "; ") << codes << " codes, both users certified, " << buf << " s";
}

void c9(Outcome& o) {
  int checked = 0;
  for (const auto& p : lattice()) {
    const Rational rate(p.T, p.T + p.B);
    for (int t2 = 1; t2 < p.alpha * p.T + p.B; ++t2) {
      const std::string at = name(p) + " T2=" + std::to_string(t2);
      o.require(converse_rate_bound(p.B, t2, p.alpha) < rate, at + " bound not below rate");
      const auto exp = converse_experiment(p.B, p.T, p.alpha, t2);
      o.require(exp.judged > 0 && exp.late > 0, at + " no late symbols");
      ++checked;
    }
  }
  o.detail << (o.pass ? "" : "; ") << checked << " (code, T2) pairs, all below rate with late symbols";
}

// The closed-form cases, evaluated independently of capacity().
std::vector<Rational> applicable_cases(int B1, int T1, int B2, int T2) {
  std::vector<Rational> out;
  const int alpha = B2 / B1;
  if (T2 >= alpha * T1 + B1) out.emplace_back(T1, T1 + B1);
  if (std::max(B2, T1) + B1 <= T2 && T2 <= alpha * T1 + B1) out.emplace_back(T2 - B1, T2 - B1 + B2);
  if (T1 <= T2 && T2 <= T1 + B1 && B2 <= T1) out.emplace_back(T1, T1 + B2);
  if (T2 <= T1) out.emplace_back(T2, T2 + B2);
  return out;
}

void c10(Outcome& o) {
  const auto a = capacity({1, 2, 2, 4});
  const auto b = capacity({1, 2, 2, 5});
  o.require(a.rate && *a.rate == Rational(3, 5), "capacity(1,2,2,4)");
  o.require(b.rate && *b.rate == Rational(2, 3), "capacity(1,2,2,5)");
  int overlaps = 0;
  for (int B1 = 1; B1 <= 4; ++B1) {
    for (int T1 = B1; T1 <= 10; ++T1) {
      for (int alpha = 2; alpha <= 4; ++alpha) {
        for (int T2 = 1; T2 <= alpha * T1 + B1 + 3; ++T2) {
          const int B2 = alpha * B1;
          const auto cases = applicable_cases(B1, T1, B2, T2);
          if (cases.size() < 2) continue;
          ++overlaps;
          const std::string at = "(" + std::to_string(B1) + "," + std::to_string(T1) + "," + std::to_string(B2) +
                                 "," + std::to_string(T2) + ")";
          for (const auto& r : cases) o.require(r == cases.front(), at + " cases disagree");
          try {
            const auto ans = capacity({B1, T1, B2, T2});
            o.require(ans.rate && *ans.rate == cases.front(), at + " capacity differs");
          } catch (const std::logic_error& e) {
            o.require(false, at + " " + e.what());
          }
        }
      }
    }
  }
  o.require(overlaps > 0, "no overlap points");
  o.detail << (o.pass ? "" : "; ") << "3/5 and 2/3 exact, " << overlaps << " overlap points agree";
}

struct Named {
  std::string name;
  std::unique_ptr<MulticastCode> code;
};

std::vector<Named> certified_codes() {
  std::vector<Named> out;
  out.push_back({"sco(1,2)", std::make_unique<SingleUserCode>(choose_coefficients(1, 2, Orientation::main, 1, 1))});
  out.push_back({"sco(2,4)", std::make_unique<SingleUserCode>(choose_coefficients(1, 2, Orientation::main, 2, 1))});
  out.push_back({"ccsco", std::make_unique<CcScoCode>(ccsco_construct({1, 2, 2, 4}))});
  out.push_back({"iasco", std::make_unique<IaScoCode>(iasco_construct(1, 2, 2, 2, 1))});
  out.push_back({"expanded", std::make_unique<ExpandedMuscoCode>(expanded_musco_construct())});
  for (const auto& p : lattice()) {
    out.push_back({"desco" + name(p), std::make_unique<DescoCode>(desco_construct(p.B, p.T, p.alpha))});
  }
  return out;
}

// Zero-padded copy of `s` delayed by d slots.
SourceStream delayed(const SourceStream& s, Time d) {
  SourceStream out(s.rows(), s.horizon() + d);
  for (Time t = 0; t < s.horizon(); ++t) {
    for (int r = 0; r < s.rows(); ++r) out.set(t + d, r, s.at(t, r));
  }
  return out;
}

void c11(Outcome& o) {
  constexpr int kStreams = 1000;
  int violations = 0;
  long identity_checks = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (first.empty()) first = what;
    ++violations;
  };

  for (const auto& [label, code_ptr] : certified_codes()) {
    const MulticastCode& code = *code_ptr;
    const auto* de = dynamic_cast<const DescoCode*>(&code);
    std::mt19937_64 rng(std::hash<std::string>{}(label));
    const Receiver receivers[] = {Receiver::user1, Receiver::user2};
    for (int n = 0; n < kStreams; ++n) {
      const Receiver r = receivers[n % 2];
      const Contract c = code.contract(r);
      const Time j = static_cast<Time>(rng() % static_cast<std::uint64_t>(code.sweep_period()));
      const int b = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(c.burst));
      const Time horizon = j + c.burst + code.decode_window(r);
      const std::uint64_t seed = rng();
      const auto source = random_source(code.source_rows(), horizon, code.field_bits(), seed);
      const auto parity = encode_serial(code, source);

      // Causality: rewriting every slot from tau on leaves parity before tau
      // alone. The expanded code's parity may read its own slot.
      const Time tau = static_cast<Time>(rng() % static_cast<std::uint64_t>(horizon));
      auto altered = source;
      const auto noise = random_source(code.source_rows(), horizon, code.field_bits(), seed ^ 0x5bd1e995u);
      for (Time t = tau; t < horizon; ++t) {
        for (int row = 0; row < source.rows(); ++row) altered.set(t, row, gf::add(source.at(t, row), noise.at(t, row)));
      }
      const auto altered_parity = encode_serial(code, altered);
      for (Time t = 0; t < tau; ++t) {
        for (int k = 0; k < code.parity_rows(); ++k) {
          if (altered_parity.at(t, k) != parity.at(t, k)) fail(label + " causality at t=" + std::to_string(t));
        }
      }

      // Time-invariance: a source delayed by d slots gives parity delayed by d.
      const Time d = 1 + static_cast<Time>(rng() % 7);
      const auto shifted = encode_serial(code, delayed(source, d));
      for (Time t = 0; t < horizon + d; ++t) {
        for (int k = 0; k < code.parity_rows(); ++k) {
          if (shifted.at(t, k) != parity.at(t - d, k)) fail(label + " time-invariance at t=" + std::to_string(t));
        }
      }

      // Oracle dominance over one random burst.
      const auto sc = run_scenario(code, r, j, b, horizon, seed);
      if (!sc.values_ok) fail(label + " structural values wrong");
      if (sc.dominance_violations > 0) fail(label + " oracle later than structural");
      if (!sc.structural.meets(c.delay)) fail(label + " structural misses deadline");

      // q[t] = p^A[t] + p^B[t - Delta].
      if (de) {
        for (Time t = 0; t < horizon; ++t) {
          const auto pa = parity_at(de->c1(), source, t);
          const auto pb = parity_at(de->c2(), source, t - de->delta());
          for (int k = 0; k < code.parity_rows(); ++k) {
            const auto kk = static_cast<std::size_t>(k);
            if (parity.at(t, k) != gf::add(pa.checks[kk], pb.checks[kk])) {
              fail(label + " combined parity at t=" + std::to_string(t));
            }
            ++identity_checks;
          }
        }
      }
    }
  }
  o.require(violations == 0, first + " (" + std::to_string(violations) + " violations)");
  o.detail << (o.pass ? "" : "; ") << kStreams << " streams on each certified code, " << identity_checks
           << " parity identity checks, " << violations << " violations";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"(1,2) SCo over GF(2): delay 2, rate 2/3", c1},
      {"interleaved (2,4) SCo: burst-2 delay 4, rate 2/3", c2},
      {"Cc-SCo {(1,2),(2,4)}: rate 1/2, both certified", c3},
      {"IA-SCo: rate 2/3, user 1 at (1,2), user 2 delay 6", c4},
      {"DE-SCo (1,2,2): rate 2/3, delays 2 and 5", c5},
      {"DE-SCo (4,7,2) burst-8 replay and trace", c6},
      {"expanded code: rate 3/5, delays <= 2 and <= 4", c7},
      {"lattice certification with tightness witness", c8},
      {"converse bound and periodic-burst experiment", c9},
      {"capacity spot checks and case overlaps", c10},
      {"causality, time-invariance, dominance, parity identity", c11},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      criteria[n].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %2zu  %s  [%s]\n", o.pass ? "PASS" : "FAIL", n + 1, criteria[n].first, o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
