#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "desco/gf.hpp"
#include "desco/types.hpp"

namespace desco {

/// Raised when an equation contradicts the rows already absorbed. Over an
/// erasure channel this means the input was corrupted.
class InconsistentSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearTerm {
  SubSymbolId unknown;
  gf::Element coef;
};

/// A set of linear equations over the unknowns, kept as given.
struct LinearSystem {
  struct Row {
    std::vector<LinearTerm> terms;
    gf::Element constant;
  };

  explicit LinearSystem(int field_bits = 8) : field_bits(field_bits) {}

  int field_bits;
  std::vector<SubSymbolId> unknowns;
  std::vector<Row> rows;

  void add_row(std::vector<LinearTerm> terms, gf::Element constant);
};

/// Online Gauss-Jordan elimination. The row set is kept in reduced row
/// echelon form, so an unknown is determined exactly when some row has it as
/// its only nonzero entry.
class IncrementalSolver {
 public:
  explicit IncrementalSolver(const gf::Field& field) : field_(&field) {}

  /// Unknowns may also be introduced implicitly by add_equation.
  void add_unknown(SubSymbolId id);

  /// Absorbs one equation and returns the unknowns it newly determined, in
  /// (time, row) order. Throws InconsistentSystem on 0 = c with c != 0.
  std::vector<SubSymbolId> add_equation(std::span<const LinearTerm> terms, gf::Element constant);

  bool is_determined(SubSymbolId id) const { return values_.contains(id); }
  std::optional<gf::Element> value(SubSymbolId id) const;
  const std::map<SubSymbolId, gf::Element>& determined() const { return values_; }
  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    std::vector<gf::Element> coeffs;
    gf::Element constant;
    std::size_t pivot;
  };

  std::size_t column(SubSymbolId id);

  const gf::Field* field_;
  std::map<SubSymbolId, std::size_t> columns_;
  std::vector<SubSymbolId> ids_;
  std::vector<Row> rows_;
  std::vector<std::optional<std::size_t>> pivot_row_;
  std::map<SubSymbolId, gf::Element> values_;
};

/// Values of exactly the unknowns that the rows of `sys` pin down. The
/// result does not depend on row order.
std::map<SubSymbolId, gf::Element> solve_incremental(const LinearSystem& sys);

}  // namespace desco
