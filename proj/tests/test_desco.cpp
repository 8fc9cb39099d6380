#include "doctest.h"

#include "desco/channel.hpp"
#include "desco/desco.hpp"
#include "desco/oracle.hpp"

using namespace desco;
using gf::Element;

namespace {

struct Scenario {
  SourceStream source;
  ReceivedStream rx;
};

Scenario burst_scenario(const StreamCode& code, Time j, int b, Time horizon, std::uint64_t seed) {
  auto source = random_source(code.source_rows(), horizon, code.field_bits(), seed);
  auto rx = apply(single_burst(j, b, horizon), transmit(code, source));
  return {std::move(source), std::move(rx)};
}

bool values_match(const DecodeReport& r, const SourceStream& s) {
  for (const auto& [id, v] : r.values) {
    if (v != s.at(id.time, id.row)) return false;
  }
  return true;
}

// Does parity row k at slot t read sub-symbol `s`?
bool reads(const StreamCode& code, Time t, int k, SubSymbolId s) {
  std::vector<Term> terms;
  code.parity_terms(t, k, terms);
  for (const auto& term : terms) {
    if (term.symbol == s && !term.coef.is_zero()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("t2_star") {
  CHECK(t2_star(1, 2, 2) == 5);
  CHECK(t2_star(4, 7, 2) == 18);
  CHECK(t2_star(1, 2, 3) == 7);
}

TEST_CASE("desco_construct parameters") {
  const auto c12 = desco_construct(1, 2, 2, 1);
  CHECK(c12.delta() == 3);
  CHECK(c12.t2() == 5);
  CHECK(c12.rate() == Rational(2, 3));
  const auto c47 = desco_construct(4, 7, 2);
  CHECK(c47.delta() == 11);
  CHECK(c47.t2() == 18);
  CHECK(c47.c1().certified());
  CHECK(c47.c2().certified());
  CHECK(c47.c2().burst() == 4);
  CHECK(c47.c2().delay() == 7);
  const auto c23 = desco_construct(2, 3, 2);
  CHECK(c23.delta() == 5);
  CHECK(c23.t2() == 8);
  CHECK(desco_construct(1, 2, 3, 1).c2().delay() == 4);

  CHECK_THROWS_AS(desco_construct(0, 2, 2), ParameterError);
  CHECK_THROWS_AS(desco_construct(3, 2, 2), ParameterError);
  CHECK_THROWS_AS(desco_construct(1, 2, 1), ParameterError);
}

TEST_CASE("desco_encode") {
  const auto code = desco_construct(1, 2, 2, 1);
  SourceStream zero(2, 10);
  for (Time t = 0; t < 10; ++t) {
    const auto x = desco_encode(code, zero, t);
    CHECK(x.t == t);
    CHECK(x.q.checks == std::vector<Element>{Element{}});
  }

  // Impulse s[0] = (1,0): reaches q[2] through p^A and q[4] through p^B[1].
  SourceStream impulse(2, 10);
  impulse.set(0, 0, Element(1));
  CHECK(reads(code.composite(), 2, 0, {0, 0}));
  CHECK(reads(code.composite(), 4, 0, {0, 0}));
  std::vector<Term> pb;
  code.c2().parity_terms(1, 0, pb);
  CHECK(std::ranges::any_of(pb, [](const Term& t) { return t.symbol == SubSymbolId{0, 0}; }));
  CHECK(desco_encode(code, impulse, 2).q.checks[0] == Element(1));
  CHECK(desco_encode(code, impulse, 4).q.checks[0] == Element(1));
  for (Time t : {0, 1, 3, 5, 6}) CHECK(desco_encode(code, impulse, t).q.checks[0].is_zero());

  // q[t] + p^A[t] = p^B[t - Delta].
  const auto big = desco_construct(2, 4, 2);
  const auto s = random_source(big.source_rows(), 40, big.field_bits(), 7);
  for (Time t = 0; t < 40; ++t) {
    const auto q = desco_encode(big, s, t).q;
    const auto pa = parity_at(big.c1(), s, t);
    const auto pb2 = parity_at(big.c2(), s, t - big.delta());
    for (int k = 0; k < big.parity_rows(); ++k) {
      const std::size_t kk = static_cast<std::size_t>(k);
      CHECK(gf::add(q.checks[kk], pa.checks[kk]) == pb2.checks[kk]);
    }
  }
}

TEST_CASE("decode_user1 examples") {
  const auto code = desco_construct(1, 2, 2, 1);
  const Time i = 6;
  auto sc = burst_scenario(code, i, 1, 20, 3);
  auto r = decode_user1(code, sc.rx, i, 1);
  CHECK(r.meets(2));
  CHECK(r.recovered_at.at({i, 0}) <= i + 2);
  CHECK(r.recovered_at.at({i, 1}) <= i + 2);
  CHECK(values_match(r, sc.source));

  const auto c47 = desco_construct(4, 7, 2);
  for (Time j = 0; j < c47.sweep_period(); ++j) {
    auto s47 = burst_scenario(c47, j, 4, j + 4 + c47.decode_window(Receiver::user1), static_cast<std::uint64_t>(j));
    auto r47 = decode_user1(c47, s47.rx, j, 4);
    CHECK(r47.meets(7));
    CHECK(values_match(r47, s47.source));
  }

  const auto clean = apply(ErasurePattern{{}, 20}, transmit(code, random_source(2, 20, 1, 1)));
  const auto none = decode_user1(code, clean, 5, 0);
  CHECK(none.erased.empty());
  CHECK(none.success);
}

TEST_CASE("decode_user2 on the rate-2/3 code") {
  const auto code = desco_construct(1, 2, 2, 1);
  const Time i = 6;
  auto sc = burst_scenario(code, i - 1, 2, 20, 5);
  auto r = decode_user2(code, sc.rx, i - 1, 2);
  REQUIRE(r.success);
  CHECK(r.worst_delay == 5);
  CHECK(values_match(r, sc.source));
  CHECK(r.recovered_at.at({i - 1, 0}) <= i + 3);
  CHECK(r.recovered_at.at({i, 0}) <= i + 3);
  CHECK(r.recovered_at.at({i - 1, 1}) <= i + 4);
  CHECK(r.recovered_at.at({i, 1}) <= i + 5);

  const auto trace = decode_user2_traced(code, sc.rx, i - 1, 2).trace;
  int stage4 = 0;
  for (const auto& e : trace) stage4 += e.stage == 4 ? 1 : 0;
  CHECK(stage4 == 0);  // T - B - 1 = 0 recursion steps
}

TEST_CASE("burst-8 replay on DE-SCo {(4,7),(8,18)}") {
  const auto code = desco_construct(4, 7, 2);
  // Burst [-8,-1] re-origined to [0,7]; i = 8.
  const Time j = 0;
  const Time i = 8;
  auto sc = burst_scenario(code, j, 8, j + 8 + code.decode_window(Receiver::user2), 11);
  const auto out = decode_user2_traced(code, sc.rx, j, 8);

  REQUIRE(out.report.success);
  CHECK(values_match(out.report, sc.source));
  CHECK(out.report.worst_delay <= 18);
  // Urgent rows of c2 left to the last step land exactly on the deadline.
  int on_deadline = 0;
  for (const auto& [id, t] : out.report.recovered_at) {
    if (id.row < 3) CHECK(t - i <= 9);
    on_deadline += t == id.time + 18 ? 1 : 0;
  }
  CHECK(on_deadline > 0);
  CHECK(out.last_nonurgent - i <= 9);

  std::vector<std::string> names;
  for (const auto& e : out.trace) names.push_back(to_string(e, i));
  const std::vector<std::string> expected{
      "d^B_{-8}", "d^B_{-7}", "d^B_{-6}", "d^B_{-5}", "p^A[0..]", "d^A_{-1}", "d^A_{-2}",
      "d^A_{-3}", "d^A_{-4}", "d^A_{-5}", "d^B_{-4}", "d^A_{-6}", "d^B_{-3}"};
  CHECK(names == expected);
  for (const auto& e : out.trace) {
    if (e.kind != TraceEntry::Kind::main_parity) CHECK_MESSAGE(!e.recovered.empty(), to_string(e, i));
  }
  // Stage 1: the erased non-urgent cells (rows 0..2) of d^B_{-8..-5}.
  const std::vector<std::size_t> band{1, 2, 3, 3};
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(out.trace[n].recovered.size() == band[n]);
    for (const auto& id : out.trace[n].recovered) CHECK(id.row < 3);
  }
}

TEST_CASE("decode_user2 matches the oracle bound on small codes") {
  for (int alpha : {2, 3}) {
    for (auto [B, T] : {std::pair{1, 2}, {2, 3}, {2, 4}, {1, 3}, {3, 5}}) {
      const auto code = desco_construct(B, T, alpha);
      for (Time j = 0; j < code.sweep_period(); ++j) {
        for (int b = 1; b <= code.b2(); ++b) {
          const Time horizon = j + code.b2() + code.decode_window(Receiver::user2);
          auto sc = burst_scenario(code, j, b, horizon, static_cast<std::uint64_t>(j * 97 + b));
          const auto out = decode_user2_traced(code, sc.rx, j, b);
          const auto oracle = oracle_decode(code, sc.rx, code.t2());
          CAPTURE(B);
          CAPTURE(T);
          CAPTURE(alpha);
          CAPTURE(j);
          CAPTURE(b);
          REQUIRE(out.report.meets(code.t2()));
          CHECK(values_match(out.report, sc.source));
          if (b == code.b2()) CHECK(out.last_nonurgent < j + code.t2());
          for (const auto& [id, t] : out.report.recovered_at) CHECK(oracle.recovered_at.at(id) <= t);
        }
      }
    }
  }
}

TEST_CASE("decode_user2 reports failures past the design burst") {
  const auto code = desco_construct(1, 2, 2, 1);
  auto sc = burst_scenario(code, 3, 4, 30, 2);
  const auto r = decode_user2(code, sc.rx, 3, 4);
  CHECK_FALSE(r.meets(code.t2()));
  REQUIRE(r.failure);
  CHECK(r.failure->stage.find("user2") == 0);
}

TEST_CASE("two bursts spaced by T2* + alpha*B") {
  for (auto [B, T, alpha] : {std::tuple{1, 2, 2}, {2, 3, 2}, {1, 2, 3}}) {
    const auto code = desco_construct(B, T, alpha);
    const Time gap = code.t2() + code.b2();
    const Time horizon = 2 * gap + code.decode_window(Receiver::user2) + code.b2();
    const auto source = random_source(code.source_rows(), horizon, code.field_bits(), 4);
    const auto pattern = merge(single_burst(0, code.b2(), horizon), single_burst(gap, code.b2(), horizon));
    const auto rx = apply(pattern, transmit(code, source));
    const auto r = oracle_decode(code, rx, code.t2());
    CAPTURE(B);
    CAPTURE(T);
    CAPTURE(alpha);
    CHECK(r.meets(code.t2()));
  }
}

TEST_CASE("non-urgent recursion holds its stage preconditions on the lattice") {
  for (int alpha : {2, 3}) {
    for (int B = 1; B <= 3; ++B) {
      for (int T = B; T <= 6; ++T) {
        const auto code = desco_construct(B, T, alpha);
        for (Time j = 0; j < code.sweep_period(); ++j) {
          const Time horizon = j + code.b2() + code.decode_window(Receiver::user2);
          auto sc = burst_scenario(code, j, code.b2(), horizon, static_cast<std::uint64_t>(j));
          const auto out = decode_user2_traced(code, sc.rx, j, code.b2());
          CAPTURE(B);
          CAPTURE(T);
          CAPTURE(alpha);
          CAPTURE(j);
          CHECK_MESSAGE(!out.precondition, (out.precondition ? out.precondition->stage : ""));
          CHECK(out.last_nonurgent < j + code.t2());
          CHECK(out.report.meets(code.t2()));
        }
      }
    }
  }
}
