#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "desco/stream.hpp"
#include "desco/types.hpp"

namespace desco {

/// Which whole channel packets x[t] are lost over [0, horizon).
struct ErasurePattern {
  std::set<Time> erased;
  Time horizon = 0;

  bool is_erased(Time t) const { return erased.contains(t); }
  /// Maximal runs as (start, length), in time order.
  std::vector<std::pair<Time, int>> bursts() const;
  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

/// Erases [j, j+b-1]. Throws ParameterError unless 0 <= j and j+b <= horizon.
ErasurePattern single_burst(Time j, int b, Time horizon);

/// Every period of `period` slots starts with `period_erasures` erasures.
ErasurePattern periodic_burst(int period_erasures, int period, Time horizon);

ErasurePattern merge(const ErasurePattern& a, const ErasurePattern& b);

/// The transmitted stream: x[t] = (s[t], q[t]).
struct ChannelStream {
  SourceStream source;
  ParityStream parity;

  Time horizon() const { return source.horizon(); }
  ChannelSymbol symbol(Time t) const;
};

ChannelStream transmit(const StreamCode& code, const SourceStream& source);

/// What a receiver sees. Erased slots carry no data: their source and
/// parity entries are zeroed so decoders cannot read them by accident.
struct ReceivedStream {
  ChannelStream data;
  std::vector<bool> erased;

  Time horizon() const { return data.horizon(); }
  bool is_erased(Time t) const { return t >= 0 && t < horizon() && erased[static_cast<std::size_t>(t)]; }
  bool received(Time t) const { return t >= 0 && t < horizon() && !erased[static_cast<std::size_t>(t)]; }
};

/// y[t] = * on the pattern, x[t] otherwise. Requires stream.horizon() >= pattern.horizon.
ReceivedStream apply(const ErasurePattern& pattern, const ChannelStream& stream);

/// JSON list of [start, length] pairs.
std::string pattern_to_json(const ErasurePattern& pattern);
ErasurePattern pattern_from_json(const std::string& text, Time horizon);

}  // namespace desco
