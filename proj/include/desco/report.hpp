#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "desco/types.hpp"

namespace desco {

/// First erased sub-symbol that missed its deadline (or was never recovered).
struct DecodeFailure {
  SubSymbolId symbol;
  Time deadline = 0;
  std::string stage;
};

/// Outcome of decoding one erasure scenario.
struct DecodeReport {
  Time burst_start = 0;
  int burst_length = 0;
  std::vector<SubSymbolId> erased;
  std::map<SubSymbolId, Time> recovered_at;
  std::map<SubSymbolId, gf::Element> values;
  int worst_delay = 0;
  bool success = true;
  std::optional<DecodeFailure> failure;

  /// Recomputes worst_delay/success and records the first deadline miss.
  void finalize(int delay_bound, const std::string& stage = {});
  bool meets(int delay_bound) const { return success && worst_delay <= delay_bound; }
};

inline void DecodeReport::finalize(int delay_bound, const std::string& stage) {
  worst_delay = 0;
  success = true;
  failure.reset();
  for (const auto& id : erased) {
    auto it = recovered_at.find(id);
    if (it == recovered_at.end()) {
      success = false;
      if (!failure) failure = DecodeFailure{id, id.time + delay_bound, stage};
      continue;
    }
    const int delay = static_cast<int>(it->second - id.time);
    worst_delay = std::max(worst_delay, delay);
    if (delay > delay_bound && !failure) failure = DecodeFailure{id, id.time + delay_bound, stage};
  }
}

}  // namespace desco
