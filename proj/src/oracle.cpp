#include "desco/oracle.hpp"

namespace desco {

OracleState::OracleState(const StreamCode& code, const ReceivedStream& rx)
    : code_(&code), rx_(&rx), field_(&gf::Field::get(code.field_bits())), solver_(*field_) {
  for (Time t = 0; t < rx.horizon(); ++t) {
    if (!rx.is_erased(t)) continue;
    for (int r = 0; r < code.source_rows(); ++r) {
      solver_.add_unknown({t, r});
      ++unknowns_;
    }
  }
}

void OracleState::observe(Time t) {
  if (!rx_->received(t)) return;
  const auto& f = *field_;
  std::vector<LinearTerm> unknown_terms;
  for (int k = 0; k < code_->parity_rows(); ++k) {
    scratch_.clear();
    code_->parity_terms(t, k, scratch_);
    unknown_terms.clear();
    gf::Element constant = rx_->data.parity.at(t, k);
    for (const auto& term : scratch_) {
      if (rx_->is_erased(term.symbol.time)) {
        unknown_terms.push_back({term.symbol, term.coef});
      } else {
        constant = gf::add(constant, f.mul(term.coef, rx_->data.source.at(term.symbol.time, term.symbol.row)));
      }
    }
    if (unknown_terms.empty()) continue;
    for (const auto& id : solver_.add_equation(unknown_terms, constant)) first_.emplace(id, t);
  }
}

DecodeReport oracle_decode(const StreamCode& code, const ReceivedStream& rx, int delay_bound) {
  DecodeReport report;
  OracleState state(code, rx);
  Time first_erased = -1;
  for (Time t = 0; t < rx.horizon(); ++t) {
    if (!rx.is_erased(t)) continue;
    if (first_erased < 0) first_erased = t;
    for (int r = 0; r < code.source_rows(); ++r) report.erased.push_back({t, r});
  }
  if (first_erased >= 0) {
    report.burst_start = first_erased;
    report.burst_length = static_cast<int>(report.erased.size() / static_cast<std::size_t>(code.source_rows()));
    for (Time t = first_erased; t < rx.horizon() && !state.complete(); ++t) state.observe(t);
  }
  report.recovered_at = state.first_determined();
  for (const auto& [id, t] : report.recovered_at) report.values.emplace(id, *state.solver().value(id));
  report.finalize(delay_bound, "oracle");
  return report;
}

}  // namespace desco
