#pragma once

#include <optional>
#include <string>
#include <vector>

#include "desco/composite.hpp"
#include "desco/multicast.hpp"
#include "desco/sco.hpp"

namespace desco {

/// Minimum delay of the weaker receiver at rate T/(T+B): alpha*T + B.
int t2_star(int B, int T, int alpha);

/// DE-SCo: one parity stream serving two burst/delay contracts.
///
///   c1: (B,T) code on the main diagonal
///   c2: (B,T) code on the opposite diagonal with interleave step alpha-1,
///       i.e. a ((alpha-1)B, (alpha-1)T) single-user code
///   q[t] = p^A[t] + p^B[t - (T+B)]
///
/// Receiver 1 sees bursts up to B with delay T; receiver 2 sees bursts up to
/// alpha*B with delay alpha*T + B. Rate stays T/(T+B).
class DescoCode : public MulticastCode {
 public:
  DescoCode(ScoCode c1, ScoCode c2, int alpha);

  const ScoCode& c1() const { return composite_.component(0).code; }
  const ScoCode& c2() const { return composite_.component(1).code; }
  const CompositeCode& composite() const { return composite_; }
  int alpha() const { return alpha_; }
  int B() const { return c1().parity_count(); }
  int T() const { return c1().row_count(); }
  int delta() const { return T() + B(); }
  int b2() const { return alpha_ * B(); }
  int t2() const { return t2_star(B(), T(), alpha_); }

  int field_bits() const override { return composite_.field_bits(); }
  int source_rows() const override { return composite_.source_rows(); }
  int parity_rows() const override { return composite_.parity_rows(); }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override { composite_.parity_terms(t, k, out); }

  std::string kind() const override { return "desco"; }
  Contract contract(Receiver r) const override;
  Time sweep_period() const override { return t2() + delta(); }
  Time decode_window(Receiver) const override { return t2() + delta() + 1; }
  DecodeReport structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const override;

 private:
  int alpha_;
  CompositeCode composite_;
};

/// Builds and certifies both component codes. Throws ParameterError unless
/// 1 <= B <= T and alpha >= 2; propagates ConstructionError.
DescoCode desco_construct(int B, int T, int alpha, int field_bits = 8);

ChannelSymbol desco_encode(const DescoCode& code, const SourceStream& history, Time i);

/// Receiver 1: cancel p^B[t - Delta] (computable from symbols before the
/// burst) to expose p^A[t], then decode c1 diagonal by diagonal.
DecodeReport decode_user1(const DescoCode& code, const ReceivedStream& rx, Time j, int b);

/// One step of the non-urgent recursion.
struct TraceEntry {
  enum class Kind { main_diagonal, opposite_diagonal, main_parity };
  int stage = 0;       // 1..4
  int k = 0;           // recursion index in stage 4, else 0
  Kind kind = Kind::main_diagonal;
  Time anchor = 0;     // diagonal anchor, or first slot of the recovered p^A block
  std::vector<SubSymbolId> recovered;
};

std::string to_string(const TraceEntry& e, Time origin);

struct User2Result {
  DecodeReport report;
  std::vector<TraceEntry> trace;
  /// Latest recovery slot over the erased non-urgent sub-symbols.
  Time last_nonurgent = 0;
  /// First non-urgent sub-symbol a stage was expected to recover but did not.
  std::optional<DecodeFailure> precondition;
};

/// Receiver 2, for a burst of b <= alpha*B slots at j. Writing i = j + alpha*B:
///  1. for t >= i+T strip p^A[t] from q[t] to expose p^B[t - Delta];
///  2. recursive_nonurgent_decode recovers every erased non-urgent row
///     before j + T2*;
///  3. urgent rows come from the exposed p^B, each exactly at its deadline.
User2Result decode_user2_traced(const DescoCode& code, const ReceivedStream& rx, Time j, int b);
DecodeReport decode_user2(const DescoCode& code, const ReceivedStream& rx, Time j, int b);

}  // namespace desco
