#pragma once

#include <optional>
#include <string>
#include <vector>

#include "desco/channel.hpp"
#include "desco/gf.hpp"
#include "desco/report.hpp"
#include "desco/stream.hpp"
#include "desco/types.hpp"

namespace desco {

enum class Orientation { main, opposite };

std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

/// The source sub-symbols one diagonal parity combines, row 0 first.
struct DiagonalIndex {
  Time anchor = 0;
  std::vector<SubSymbolId> entries;
};

/// {(i, 0), (i+l, 1), ..., (i+(T-1)l, T-1)}
DiagonalIndex diagonal_main(Time i, int T, int ell = 1);
/// {(i, 0), (i-l, 1), ..., (i-(T-1)l, T-1)}
DiagonalIndex diagonal_opposite(Time i, int T, int ell);

/// Single-user streaming code with B parity rows over T source rows.
///
/// Parity row k (0-based) at slot i is coeffs[k]·d where d is one diagonal:
///   main:     d = diagonal_main(i - l*T - k*l, T, l)
///   opposite: d = diagonal_opposite(i - l - k*l, T, l)
/// Every parity therefore touches exactly one diagonal, and each diagonal
/// gets B parities. With interleave step l the code protects bursts of l*B
/// slots with delay l*T at rate T/(T+B).
class ScoCode : public StreamCode {
 public:
  using Table = std::vector<std::vector<gf::Element>>;

  ScoCode(int B, int T, Orientation orientation, int ell, int field_bits, Table coeffs);

  int parity_count() const { return b_; }
  int row_count() const { return t_; }
  Orientation orientation() const { return orientation_; }
  int ell() const { return ell_; }
  const Table& coeffs() const { return coeffs_; }
  gf::Element coeff(int k, int row) const { return coeffs_[static_cast<std::size_t>(k)][static_cast<std::size_t>(row)]; }

  /// Design burst and delay, in slots.
  int burst() const { return ell_ * b_; }
  int delay() const { return ell_ * t_; }

  int field_bits() const override { return m_; }
  int source_rows() const override { return t_; }
  int parity_rows() const override { return b_; }
  void parity_terms(Time t, int k, std::vector<Term>& out) const override;

  Time parity_anchor(Time i, int k) const;
  Time parity_time(Time anchor, int k) const;
  Time anchor_of(SubSymbolId s) const;
  DiagonalIndex diagonal(Time anchor) const;

  /// Set by certify() when verify_code passes.
  bool certified() const { return certified_; }
  bool certify();

  friend bool operator==(const ScoCode& a, const ScoCode& b) {
    return a.b_ == b.b_ && a.t_ == b.t_ && a.orientation_ == b.orientation_ && a.ell_ == b.ell_ &&
           a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int b_;
  int t_;
  Orientation orientation_;
  int ell_;
  int m_;
  Table coeffs_;
  bool certified_ = false;
};

ParityVector sco_parity(const ScoCode& code, const SourceStream& history, Time i);

/// Structural single-user decoder: per-diagonal elimination, slot by slot.
/// `received` must hold one burst at [j, j+b-1].
DecodeReport sco_decode_burst(const ScoCode& code, const ReceivedStream& received, Time j, int b);

struct Certification {
  bool certified = false;
  /// First failing scenario when not certified.
  std::optional<DecodeReport> counterexample;
};

/// Exhaustive oracle sweep: every start in one period, every burst length
/// up to burst(); each erased sub-symbol must be recovered within delay().
Certification verify_code(const ScoCode& code);

/// Coefficient tables tried, in order: urgent repetition with a Cauchy MDS
/// parity over the non-urgent rows, then all-ones. The first certified one
/// is returned. Throws ConstructionError when none certifies.
ScoCode choose_coefficients(int B, int T, Orientation orientation, int ell, int field_bits);

/// Urgent-repetition table: block positions 0..B-1 are the urgent
/// sub-symbols (repeated once each), positions B..T-1 carry a systematic MDS
/// parity. Empty when the field is too small for a Cauchy block.
std::optional<ScoCode::Table> urgent_repetition_table(int B, int T, Orientation orientation, int field_bits);

/// Urgent rows of a diagonal as laid out by urgent_repetition_table.
bool is_urgent_row(int row, int B, int T, Orientation orientation);

}  // namespace desco
