#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "desco/gf.hpp"
#include "desco/types.hpp"

namespace desco {

/// Time-indexed table of sub-symbols, `rows` per slot over [0, horizon).
/// Reads outside the horizon return zero, which is how the stream start-up
/// (times < 0) is modelled.
class SymbolMatrix {
 public:
  SymbolMatrix() = default;
  SymbolMatrix(int rows, Time horizon)
      : rows_(rows), horizon_(horizon), data_(static_cast<std::size_t>(rows * horizon)) {}

  int rows() const { return rows_; }
  Time horizon() const { return horizon_; }

  gf::Element at(Time t, int r) const {
    if (t < 0 || t >= horizon_) return gf::Element{};
    return data_[static_cast<std::size_t>(t * rows_ + r)];
  }
  void set(Time t, int r, gf::Element v) { data_[static_cast<std::size_t>(t * rows_ + r)] = v; }

  std::span<const gf::Element> slot(Time t) const {
    return {data_.data() + t * rows_, static_cast<std::size_t>(rows_)};
  }
  void clear_slot(Time t) {
    for (int r = 0; r < rows_; ++r) set(t, r, gf::Element{});
  }

  friend bool operator==(const SymbolMatrix&, const SymbolMatrix&) = default;

 private:
  int rows_ = 0;
  Time horizon_ = 0;
  std::vector<gf::Element> data_;
};

using SourceStream = SymbolMatrix;
using ParityStream = SymbolMatrix;

/// s[t]: the source packet of one slot.
struct SourceSymbol {
  Time t = 0;
  std::vector<gf::Element> subs;
};

/// The parity sub-symbols emitted at one slot.
struct ParityVector {
  Time t = 0;
  std::vector<gf::Element> checks;
  friend bool operator==(const ParityVector&, const ParityVector&) = default;
};

/// x[t] = (s[t], q[t]).
struct ChannelSymbol {
  Time t = 0;
  SourceSymbol source;
  ParityVector q;
};

/// A causal linear streaming code: every parity sub-symbol is a fixed linear
/// combination of source sub-symbols. Implementations are immutable and
/// safe to query from several threads.
class StreamCode {
 public:
  virtual ~StreamCode() = default;

  virtual int field_bits() const = 0;
  virtual int source_rows() const = 0;
  virtual int parity_rows() const = 0;

  /// Appends the terms of parity row k at slot t. Terms at times < 0 are
  /// omitted; they read as zero.
  virtual void parity_terms(Time t, int k, std::vector<Term>& out) const = 0;

  /// Sub-symbol counting rate.
  Rational rate() const { return Rational(source_rows(), source_rows() + parity_rows()); }
};

gf::Element evaluate(const gf::Field& field, std::span<const Term> terms, const SourceStream& source);

ParityVector parity_at(const StreamCode& code, const SourceStream& source, Time t);
SourceSymbol source_at(const SourceStream& source, Time t);

/// Parity for every slot of the source horizon. The serial version is the
/// reference; `encode` splits slots across OpenMP threads.
ParityStream encode_serial(const StreamCode& code, const SourceStream& source);
ParityStream encode(const StreamCode& code, const SourceStream& source);

/// Uniform i.i.d. sub-symbols; deterministic for a given seed.
SourceStream random_source(int rows, Time horizon, int field_bits, std::uint64_t seed);

}  // namespace desco
