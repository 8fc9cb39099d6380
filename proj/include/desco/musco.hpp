#pragma once

#include <optional>
#include <string>
#include <vector>

#include "desco/composite.hpp"
#include "desco/desco.hpp"
#include "desco/multicast.hpp"

namespace desco {

/// Two receivers: bursts up to B1 with delay T1, and up to B2 > B1 with delay T2.
struct MulticastParams {
  int B1 = 0;
  int T1 = 0;
  int B2 = 0;
  int T2 = 0;
};

struct CapacityAnswer {
  std::string region;  // a/b, c, f, g, d/e or open
  std::optional<Rational> rate;
};

/// Known optimal rates for B2 = alpha*B1. Throws ParameterError when B2 is
/// not an integer multiple of B1 (alpha > 1) or B1 > T1.
CapacityAnswer capacity(const MulticastParams& p);

/// Periodic-erasure upper bound 1 - alpha*B / ((alpha-1)B + T2).
Rational converse_rate_bound(int B, int T2, int alpha);

/// First receiver whose contract fails under the structural decoder over
/// one sweep period (every start, every burst length up to the contract),
/// or nullopt.
std::optional<Receiver> first_violation(const MulticastCode& code);

/// Both parity streams side by side; each receiver ignores the other's rows.
class CcScoCode : public MulticastCode {
 public:
  CcScoCode(MulticastParams p, CompositeCode composite, std::size_t user1_components);

  const MulticastParams& params() const { return p_; }
  const CompositeCode& composite() const { return composite_; }
  /// Components [0, n) serve receiver 1, the rest receiver 2.
  std::size_t user1_components() const { return n1_; }

  int field_bits() const override { return composite_.field_bits(); }
  int source_rows() const override { return composite_.source_rows(); }
  int parity_rows() const override { return composite_.parity_rows(); }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override { composite_.parity_terms(t, k, out); }

  std::string kind() const override { return "ccsco"; }
  Contract contract(Receiver r) const override;
  Time sweep_period() const override;
  Time decode_window(Receiver) const override { return p_.T2 + p_.B2 + 1; }
  DecodeReport structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const override;

 private:
  MulticastParams p_;
  CompositeCode composite_;
  std::size_t n1_;
};

/// When (B2,T2) = l*(B1,T1) the second code is the first interleaved by l
/// over the same rows; otherwise the source is split into lcm(T1,T2) rows
/// with one single-user code per lane. Rate T1*T2 / (T1*T2 + B1*T2 + B2*T1).
CcScoCode ccsco_construct(const MulticastParams& p, int field_bits = 8);

/// q[t] = p^A[t] + p^B[t - shift], with p^B from the (B,T) main-diagonal
/// code interleaved by alpha. Receiver 2 is promised (alpha*B, alpha*T + shift).
class IaScoCode : public MulticastCode {
 public:
  IaScoCode(CompositeCode composite, int alpha, int shift);

  const CompositeCode& composite() const { return composite_; }
  int alpha() const { return alpha_; }
  int shift() const { return shift_; }
  int B() const { return composite_.component(0).code.parity_count(); }
  int T() const { return composite_.component(0).code.row_count(); }

  int field_bits() const override { return composite_.field_bits(); }
  int source_rows() const override { return composite_.source_rows(); }
  int parity_rows() const override { return composite_.parity_rows(); }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override { composite_.parity_terms(t, k, out); }

  std::string kind() const override { return "iasco"; }
  Contract contract(Receiver r) const override;
  Time sweep_period() const override { return alpha_ * (T() + B()) + shift_; }
  Time decode_window(Receiver) const override { return alpha_ * (T() + B()) + shift_ + 1; }
  DecodeReport structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const override;

 private:
  CompositeCode composite_;
  int alpha_;
  int shift_;
};

/// Unchecked build; see iasco_construct.
IaScoCode iasco_build(int B, int T, int alpha, int shift, int field_bits = 8);

/// Builds and certifies both receivers. Throws ParameterError for
/// shift < 0 and ConstructionError naming the failing receiver.
IaScoCode iasco_construct(int B, int T, int alpha, int shift, int field_bits = 8);

/// ts[2i + h] holds rows [h*R/2, (h+1)*R/2) of s[i]. Needs an even row count.
SymbolMatrix source_expand(const SymbolMatrix& s);
/// Inverse of source_expand: p[i] = (tp[2i], tp[2i+1]). Needs an even horizon.
SymbolMatrix source_collapse(const SymbolMatrix& ts);

/// Rate-3/5 code for {(1,2),(2,4)}: a {(2,3),(4,8)} DE-SCo run on the
/// expanded source, two expanded slots per channel slot.
class ExpandedMuscoCode : public MulticastCode {
 public:
  explicit ExpandedMuscoCode(DescoCode inner);

  const DescoCode& inner() const { return inner_; }

  int field_bits() const override { return inner_.field_bits(); }
  int source_rows() const override { return 2 * inner_.source_rows(); }
  int parity_rows() const override { return 2 * inner_.parity_rows(); }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override;

  std::string kind() const override { return "expanded"; }
  Contract contract(Receiver r) const override;
  Time sweep_period() const override { return inner_.sweep_period(); }
  Time decode_window(Receiver r) const override { return (inner_.decode_window(r) + 1) / 2 + 1; }
  DecodeReport structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const override;

 private:
  DescoCode inner_;
};

ExpandedMuscoCode expanded_musco_construct(int field_bits = 8);

}  // namespace desco
