#include "desco/linear_system.hpp"

#include <algorithm>

namespace desco {

void LinearSystem::add_row(std::vector<LinearTerm> terms, gf::Element constant) {
  for (const auto& t : terms) {
    if (std::find(unknowns.begin(), unknowns.end(), t.unknown) == unknowns.end()) {
      unknowns.push_back(t.unknown);
    }
  }
  rows.push_back(Row{std::move(terms), constant});
}

void IncrementalSolver::add_unknown(SubSymbolId id) { column(id); }

std::size_t IncrementalSolver::column(SubSymbolId id) {
  auto [it, inserted] = columns_.try_emplace(id, ids_.size());
  if (inserted) {
    ids_.push_back(id);
    pivot_row_.emplace_back();
    for (auto& r : rows_) r.coeffs.emplace_back();
  }
  return it->second;
}

std::optional<gf::Element> IncrementalSolver::value(SubSymbolId id) const {
  if (auto it = values_.find(id); it != values_.end()) return it->second;
  return std::nullopt;
}

std::vector<SubSymbolId> IncrementalSolver::add_equation(std::span<const LinearTerm> terms,
                                                         gf::Element constant) {
  for (const auto& t : terms) column(t.unknown);

  const auto& f = *field_;
  const std::size_t width = ids_.size();
  std::vector<gf::Element> row(width);
  for (const auto& t : terms) {
    auto& c = row[columns_.at(t.unknown)];
    c = gf::add(c, t.coef);
  }

  // Reduce against existing pivots.
  for (std::size_t c = 0; c < width; ++c) {
    if (row[c].is_zero() || !pivot_row_[c]) continue;
    const Row& p = rows_[*pivot_row_[c]];
    const gf::Element factor = row[c];
    for (std::size_t k = 0; k < width; ++k) {
      if (!p.coeffs[k].is_zero()) row[k] = gf::add(row[k], f.mul(factor, p.coeffs[k]));
    }
    constant = gf::add(constant, f.mul(factor, p.constant));
  }

  auto lead = std::find_if(row.begin(), row.end(), [](gf::Element e) { return !e.is_zero(); });
  if (lead == row.end()) {
    if (!constant.is_zero()) throw InconsistentSystem("equation contradicts earlier rows");
    return {};
  }

  const std::size_t pivot = static_cast<std::size_t>(lead - row.begin());
  const gf::Element scale = f.inv(row[pivot]);
  for (auto& e : row) e = f.mul(e, scale);
  constant = f.mul(constant, scale);

  // Clear the new pivot column from the other rows.
  for (auto& r : rows_) {
    const gf::Element factor = r.coeffs[pivot];
    if (factor.is_zero()) continue;
    for (std::size_t k = 0; k < width; ++k) {
      if (!row[k].is_zero()) r.coeffs[k] = gf::add(r.coeffs[k], f.mul(factor, row[k]));
    }
    r.constant = gf::add(r.constant, f.mul(factor, constant));
  }
  pivot_row_[pivot] = rows_.size();
  rows_.push_back(Row{std::move(row), constant, pivot});

  std::vector<SubSymbolId> fresh;
  for (const auto& r : rows_) {
    const SubSymbolId id = ids_[r.pivot];
    if (values_.contains(id)) continue;
    bool single = true;
    for (std::size_t k = 0; k < r.coeffs.size() && single; ++k) {
      single = k == r.pivot || r.coeffs[k].is_zero();
    }
    if (single) {
      values_.emplace(id, r.constant);
      fresh.push_back(id);
    }
  }
  std::sort(fresh.begin(), fresh.end());
  return fresh;
}

std::map<SubSymbolId, gf::Element> solve_incremental(const LinearSystem& sys) {
  IncrementalSolver solver(gf::Field::get(sys.field_bits));
  for (const auto& u : sys.unknowns) solver.add_unknown(u);
  for (const auto& r : sys.rows) solver.add_equation(r.terms, r.constant);
  return solver.determined();
}

}  // namespace desco
