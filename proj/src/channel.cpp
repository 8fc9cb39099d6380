#include "desco/channel.hpp"

#include <nlohmann/json.hpp>

namespace desco {

std::vector<std::pair<Time, int>> ErasurePattern::bursts() const {
  std::vector<std::pair<Time, int>> out;
  for (Time t : erased) {
    if (!out.empty() && out.back().first + out.back().second == t) {
      ++out.back().second;
    } else {
      out.emplace_back(t, 1);
    }
  }
  return out;
}

ErasurePattern single_burst(Time j, int b, Time horizon) {
  if (j < 0 || b < 0 || j + b > horizon) {
    throw ParameterError("burst [" + std::to_string(j) + ", +" + std::to_string(b) +
                         ") does not fit in horizon " + std::to_string(horizon));
  }
  ErasurePattern p{{}, horizon};
  for (Time t = j; t < j + b; ++t) p.erased.insert(t);
  return p;
}

ErasurePattern periodic_burst(int period_erasures, int period, Time horizon) {
  if (period <= 0 || period_erasures < 0 || period_erasures > period) {
    throw ParameterError("periodic burst needs 0 <= erasures <= period");
  }
  ErasurePattern p{{}, horizon};
  for (Time start = 0; start < horizon; start += period) {
    for (Time t = start; t < start + period_erasures && t < horizon; ++t) p.erased.insert(t);
  }
  return p;
}

ErasurePattern merge(const ErasurePattern& a, const ErasurePattern& b) {
  ErasurePattern out{a.erased, std::max(a.horizon, b.horizon)};
  out.erased.insert(b.erased.begin(), b.erased.end());
  return out;
}

ChannelSymbol ChannelStream::symbol(Time t) const {
  ChannelSymbol x{t, source_at(source, t), ParityVector{t, {}}};
  for (int k = 0; k < parity.rows(); ++k) x.q.checks.push_back(parity.at(t, k));
  return x;
}

ChannelStream transmit(const StreamCode& code, const SourceStream& source) {
  return ChannelStream{source, encode(code, source)};
}

ReceivedStream apply(const ErasurePattern& pattern, const ChannelStream& stream) {
  if (stream.horizon() < pattern.horizon) {
    throw ParameterError("stream shorter than erasure pattern horizon");
  }
  ReceivedStream rx{stream, std::vector<bool>(static_cast<std::size_t>(stream.horizon()), false)};
  for (Time t : pattern.erased) {
    if (t < 0 || t >= stream.horizon()) continue;
    rx.erased[static_cast<std::size_t>(t)] = true;
    rx.data.source.clear_slot(t);
    rx.data.parity.clear_slot(t);
  }
  return rx;
}

std::string pattern_to_json(const ErasurePattern& pattern) {
  nlohmann::json j = nlohmann::json::array();
  for (auto [start, len] : pattern.bursts()) j.push_back({start, len});
  return j.dump();
}

ErasurePattern pattern_from_json(const std::string& text, Time horizon) {
  const auto j = nlohmann::json::parse(text);
  ErasurePattern p{{}, horizon};
  for (const auto& pair : j) {
    const auto burst = single_burst(pair.at(0).get<Time>(), pair.at(1).get<int>(), horizon);
    p.erased.insert(burst.erased.begin(), burst.erased.end());
  }
  return p;
}

}  // namespace desco
