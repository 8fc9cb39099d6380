#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desco/multicast.hpp"
#include "desco/report.hpp"

namespace desco {

/// One burst scenario decoded both ways.
struct ScenarioResult {
  Time offset = 0;
  int burst_len = 0;
  DecodeReport structural;
  DecodeReport oracle;
  /// Structural values equal the transmitted source.
  bool values_ok = true;
  /// Symbols the oracle recovers later than the structural decoder.
  int dominance_violations = 0;
};

struct SweepReport {
  std::string code_id;
  Receiver receiver = Receiver::user1;
  Contract contract;
  Time horizon = 0;
  std::vector<ScenarioResult> scenarios;  // offset-major, burst length minor
  std::optional<int> worst_delay_user1;
  std::optional<int> worst_delay_user2;
  int oracle_worst_delay = 0;
  int dominance_violations = 0;
  bool certified = false;
  Rational rate;

  int worst_delay() const { return receiver == Receiver::user1 ? *worst_delay_user1 : *worst_delay_user2; }
};

struct SweepOptions {
  /// Slots simulated per scenario; 0 picks period + burst + decode window.
  Time horizon = 0;
  std::uint64_t seed = 1;
};

Time default_horizon(const MulticastCode& code, Receiver r);

/// Every burst start in one sweep period, every burst length up to the
/// receiver's contract, decoded by the structural decoder and the oracle.
/// Scenarios run across OpenMP threads and are merged in offset order.
SweepReport sweep(const MulticastCode& code, Receiver r, const SweepOptions& opts = {});
/// Same result on one thread.
SweepReport sweep_serial(const MulticastCode& code, Receiver r, const SweepOptions& opts = {});

ScenarioResult run_scenario(const MulticastCode& code, Receiver r, Time j, int b, Time horizon, std::uint64_t seed);

struct ConverseReport {
  int period = 0;
  int erasures_per_period = 0;
  /// Erased sub-symbols whose deadline t + T2 falls inside the horizon.
  int judged = 0;
  /// Of those, the ones the oracle had not recovered by the deadline.
  int late = 0;
  Rational bound;
  Rational code_rate;
  std::vector<SubSymbolId> late_symbols;
};

/// Runs the rate-T/(T+B) DE-SCo over the periodic channel with period
/// (alpha-1)B + T2 and alpha*B erasures per period (capped at the period)
/// and counts what the oracle cannot recover within T2. horizon 0 picks
/// eight periods plus T2.
ConverseReport converse_experiment(int B, int T, int alpha, int T2, Time horizon = 0, int field_bits = 8);

}  // namespace desco
