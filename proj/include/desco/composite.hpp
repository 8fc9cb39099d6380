#pragma once

#include <string>
#include <vector>

#include "desco/channel.hpp"
#include "desco/report.hpp"
#include "desco/sco.hpp"

namespace desco {

/// One single-user code embedded in a combined parity stream. Its parity
/// row k at slot t - shift is added into stream parity row
/// parity_offset + k at slot t; code row r reads stream source row lane[r].
struct Component {
  ScoCode code;
  Time shift = 0;
  int parity_offset = 0;
  std::vector<int> lane;

  int stream_row(int code_row) const {
    return lane.empty() ? code_row : lane[static_cast<std::size_t>(code_row)];
  }
  bool covers_parity_row(int k) const { return k >= parity_offset && k < parity_offset + code.parity_count(); }
};

/// q_k[t] = sum over components c covering row k of p^c_{k - off_c}[t - shift_c].
class CompositeCode : public StreamCode {
 public:
  CompositeCode(int field_bits, int source_rows, int parity_rows, std::vector<Component> components);

  int field_bits() const override { return m_; }
  int source_rows() const override { return source_rows_; }
  int parity_rows() const override { return parity_rows_; }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override;

  const std::vector<Component>& components() const { return components_; }
  const Component& component(std::size_t i) const { return components_[i]; }

  /// Contribution of component c to stream parity row k at slot t.
  void component_terms(std::size_t c, Time t, int k, std::vector<Term>& out) const;

 private:
  int m_;
  int source_rows_;
  int parity_rows_;
  std::vector<Component> components_;
};

/// Structural decoder for the components in `targets`: at each slot, a
/// target parity is exposed by subtracting the other components' parity
/// on the same row once all of its terms are known, then solved within its
/// diagonal. Recoveries feed back into later cancellations. Every erased
/// slot of `rx` is decoded; the report covers them all.
DecodeReport cancellation_decode(const CompositeCode& code, const std::vector<std::size_t>& targets,
                                 const ReceivedStream& rx, int delay_bound, const std::string& stage);

/// rx with slots [j, j+b-1] erased as well.
ReceivedStream widen_erasure(const ReceivedStream& rx, Time j, int b);

/// Keeps only the sub-symbols of slots [j, j+b-1] and recomputes delays.
DecodeReport restrict_report(DecodeReport report, Time j, int b, int delay_bound);

}  // namespace desco
