#pragma once

#include <memory>
#include <string>

#include "desco/channel.hpp"
#include "desco/report.hpp"
#include "desco/sco.hpp"
#include "desco/stream.hpp"

namespace desco {

enum class Receiver { user1 = 1, user2 = 2 };

/// What a receiver is promised: any single burst up to `burst` slots is
/// recovered with per-symbol delay at most `delay`.
struct Contract {
  int burst = 0;
  int delay = 0;
};

/// A streaming code with one or two receiver contracts and a structural
/// decoder for each.
class MulticastCode : public StreamCode {
 public:
  virtual std::string kind() const = 0;
  virtual Contract contract(Receiver r) const = 0;
  /// Burst starts in [0, period) cover every distinct alignment.
  virtual Time sweep_period() const = 0;
  /// Slots needed past the (design-length) burst end for every decoding window.
  virtual Time decode_window(Receiver r) const = 0;
  /// `rx` carries one burst at [j, j+b-1].
  virtual DecodeReport structural_decode(Receiver r, const ReceivedStream& rx, Time j, int b) const = 0;
};

/// A single-user code seen as a multicast code where both receivers share
/// the one contract.
class SingleUserCode : public MulticastCode {
 public:
  explicit SingleUserCode(ScoCode code) : code_(std::move(code)) {}

  const ScoCode& code() const { return code_; }

  int field_bits() const override { return code_.field_bits(); }
  int source_rows() const override { return code_.source_rows(); }
  int parity_rows() const override { return code_.parity_rows(); }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override { code_.parity_terms(t, k, out); }

  std::string kind() const override { return "sco"; }
  Contract contract(Receiver) const override { return {code_.burst(), code_.delay()}; }
  Time sweep_period() const override { return code_.ell() * (code_.row_count() + code_.parity_count()); }
  Time decode_window(Receiver) const override { return code_.delay() + code_.burst() + 1; }
  DecodeReport structural_decode(Receiver, const ReceivedStream& rx, Time j, int b) const override {
    return sco_decode_burst(code_, rx, j, b);
  }

 private:
  ScoCode code_;
};

}  // namespace desco
