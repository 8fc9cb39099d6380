#include "desco/sweep.hpp"

#include "desco/desco.hpp"
#include "desco/musco.hpp"
#include "desco/oracle.hpp"

namespace desco {

Time default_horizon(const MulticastCode& code, Receiver r) {
  return code.sweep_period() + code.contract(r).burst + code.decode_window(r);
}

ScenarioResult run_scenario(const MulticastCode& code, Receiver r, Time j, int b, Time horizon, std::uint64_t seed) {
  const auto source = random_source(code.source_rows(), horizon, code.field_bits(),
                                    seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(j) * 1024 +
                                        static_cast<std::uint64_t>(b));
  const auto rx = apply(single_burst(j, b, horizon), transmit(code, source));
  const Contract c = code.contract(r);

  ScenarioResult out;
  out.offset = j;
  out.burst_len = b;
  out.structural = code.structural_decode(r, rx, j, b);
  out.oracle = oracle_decode(code, rx, c.delay);
  for (const auto& [id, v] : out.structural.values) {
    if (v != source.at(id.time, id.row)) out.values_ok = false;
  }
  for (const auto& [id, t] : out.structural.recovered_at) {
    auto it = out.oracle.recovered_at.find(id);
    if (it == out.oracle.recovered_at.end() || it->second > t) ++out.dominance_violations;
  }
  return out;
}

namespace {

struct Plan {
  Contract contract;
  Time horizon;
  std::vector<std::pair<Time, int>> cases;
};

Plan plan(const MulticastCode& code, Receiver r, const SweepOptions& opts) {
  Plan p{code.contract(r), opts.horizon > 0 ? opts.horizon : default_horizon(code, r), {}};
  if (p.horizon < default_horizon(code, r)) {
    throw ParameterError("sweep horizon " + std::to_string(p.horizon) + " is shorter than period plus decode window (" +
                         std::to_string(default_horizon(code, r)) + ")");
  }
  for (Time j = 0; j < code.sweep_period(); ++j) {
    for (int b = 1; b <= p.contract.burst; ++b) p.cases.emplace_back(j, b);
  }
  return p;
}

SweepReport summarize(const MulticastCode& code, Receiver r, const Plan& p, std::vector<ScenarioResult> results) {
  SweepReport rep;
  rep.code_id = code.kind();
  rep.receiver = r;
  rep.contract = p.contract;
  rep.horizon = p.horizon;
  rep.rate = code.rate();
  rep.certified = true;
  int worst = 0;
  for (const auto& s : results) {
    worst = std::max(worst, s.structural.worst_delay);
    rep.oracle_worst_delay = std::max(rep.oracle_worst_delay, s.oracle.worst_delay);
    rep.dominance_violations += s.dominance_violations;
    if (!s.structural.meets(p.contract.delay) || !s.values_ok) rep.certified = false;
  }
  (r == Receiver::user1 ? rep.worst_delay_user1 : rep.worst_delay_user2) = worst;
  rep.scenarios = std::move(results);
  return rep;
}

}  // namespace

SweepReport sweep(const MulticastCode& code, Receiver r, const SweepOptions& opts) {
  const Plan p = plan(code, r, opts);
  std::vector<ScenarioResult> results(p.cases.size());
  const auto n = static_cast<std::int64_t>(p.cases.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto [j, b] = p.cases[static_cast<std::size_t>(k)];
    results[static_cast<std::size_t>(k)] = run_scenario(code, r, j, b, p.horizon, opts.seed);
  }
  return summarize(code, r, p, std::move(results));
}

SweepReport sweep_serial(const MulticastCode& code, Receiver r, const SweepOptions& opts) {
  const Plan p = plan(code, r, opts);
  std::vector<ScenarioResult> results;
  results.reserve(p.cases.size());
  for (const auto& [j, b] : p.cases) results.push_back(run_scenario(code, r, j, b, p.horizon, opts.seed));
  return summarize(code, r, p, std::move(results));
}

ConverseReport converse_experiment(int B, int T, int alpha, int T2, Time horizon, int field_bits) {
  const auto code = desco_construct(B, T, alpha, field_bits);
  ConverseReport rep;
  rep.period = (alpha - 1) * B + T2;
  rep.erasures_per_period = std::min(alpha * B, rep.period);
  rep.bound = converse_rate_bound(B, T2, alpha);
  rep.code_rate = code.rate();
  if (horizon <= 0) horizon = 8 * static_cast<Time>(rep.period) + T2;

  const auto source = random_source(code.source_rows(), horizon, field_bits, 0xC0FFEE);
  const auto rx = apply(periodic_burst(rep.erasures_per_period, rep.period, horizon), transmit(code, source));
  const auto report = oracle_decode(code, rx, T2);
  for (const auto& id : report.erased) {
    if (id.time + T2 >= horizon) continue;
    ++rep.judged;
    auto it = report.recovered_at.find(id);
    if (it == report.recovered_at.end() || it->second > id.time + T2) {
      ++rep.late;
      rep.late_symbols.push_back(id);
    }
  }
  return rep;
}

}  // namespace desco
