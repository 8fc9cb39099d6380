#pragma once

#include <map>

#include "desco/channel.hpp"
#include "desco/linear_system.hpp"
#include "desco/report.hpp"
#include "desco/stream.hpp"

namespace desco {

/// Accumulated equations over the erased sub-symbols, with the slot at which
/// each unknown was first pinned down. Times are fixed once set.
class OracleState {
 public:
  OracleState(const StreamCode& code, const ReceivedStream& rx);

  /// Absorbs the parity of slot t (no-op when t is erased).
  void observe(Time t);

  const std::map<SubSymbolId, Time>& first_determined() const { return first_; }
  const IncrementalSolver& solver() const { return solver_; }
  bool complete() const { return first_.size() == unknowns_; }

 private:
  const StreamCode* code_;
  const ReceivedStream* rx_;
  const gf::Field* field_;
  IncrementalSolver solver_;
  std::map<SubSymbolId, Time> first_;
  std::size_t unknowns_ = 0;
  std::vector<Term> scratch_;
};

/// Earliest recovery time of every erased sub-symbol achievable by any
/// linear decoder: slots are absorbed in time order and each unknown is
/// stamped with the first slot after which the equations determine it.
/// Unknowns still free at the horizon are reported unrecovered.
DecodeReport oracle_decode(const StreamCode& code, const ReceivedStream& rx, int delay_bound);

}  // namespace desco
