#include "desco/composite.hpp"

#include <map>

#include "desco/linear_system.hpp"

namespace desco {

CompositeCode::CompositeCode(int field_bits, int source_rows, int parity_rows, std::vector<Component> components)
    : m_(field_bits), source_rows_(source_rows), parity_rows_(parity_rows), components_(std::move(components)) {
  for (const auto& c : components_) {
    if (c.code.field_bits() != field_bits) throw ParameterError("component field differs from composite field");
    if (c.parity_offset < 0 || c.parity_offset + c.code.parity_count() > parity_rows) {
      throw ParameterError("component parity rows outside the composite");
    }
    if (!c.lane.empty() && c.lane.size() != static_cast<std::size_t>(c.code.row_count())) {
      throw ParameterError("component lane must map every code row");
    }
    for (int r = 0; r < c.code.row_count(); ++r) {
      if (c.stream_row(r) < 0 || c.stream_row(r) >= source_rows) throw ParameterError("lane row out of range");
    }
  }
}

void CompositeCode::component_terms(std::size_t c, Time t, int k, std::vector<Term>& out) const {
  const Component& comp = components_[c];
  if (!comp.covers_parity_row(k)) return;
  const std::size_t first = out.size();
  comp.code.parity_terms(t - comp.shift, k - comp.parity_offset, out);
  for (std::size_t i = first; i < out.size(); ++i) out[i].symbol.row = comp.stream_row(out[i].symbol.row);
}

void CompositeCode::parity_terms(Time t, int k, std::vector<Term>& out) const {
  for (std::size_t c = 0; c < components_.size(); ++c) component_terms(c, t, k, out);
}

namespace {

struct Pending {
  Time slot;
  std::size_t component;
  int row;  // component parity row
};

class CancellationDecoder {
 public:
  CancellationDecoder(const CompositeCode& code, const std::vector<std::size_t>& targets, const ReceivedStream& rx)
      : code_(code), targets_(targets), rx_(rx), field_(gf::Field::get(code.field_bits())) {}

  DecodeReport run(int delay_bound, const std::string& stage) {
    DecodeReport report;
    Time first = -1;
    for (Time t = 0; t < rx_.horizon(); ++t) {
      if (!rx_.is_erased(t)) continue;
      if (first < 0) first = t;
      for (int r = 0; r < code_.source_rows(); ++r) report.erased.push_back({t, r});
    }
    if (first < 0) return report;
    report.burst_start = first;
    report.burst_length = static_cast<int>(report.erased.size() / static_cast<std::size_t>(code_.source_rows()));

    for (Time t = first; t < rx_.horizon() && recovered_.size() < report.erased.size(); ++t) {
      if (rx_.received(t)) {
        for (std::size_t c : targets_) {
          for (int k = 0; k < code_.component(c).code.parity_count(); ++k) pending_.push_back({t, c, k});
        }
      }
      while (sweep_pending(t)) {
      }
    }
    for (const auto& [id, entry] : recovered_) {
      report.recovered_at.emplace(id, entry.first);
      report.values.emplace(id, entry.second);
    }
    report.finalize(delay_bound, stage);
    return report;
  }

 private:
  bool known(const SubSymbolId& s) const { return rx_.received(s.time) || s.time < 0 || recovered_.contains(s); }

  gf::Element value(const SubSymbolId& s) const {
    if (auto it = recovered_.find(s); it != recovered_.end()) return it->second.second;
    return rx_.data.source.at(s.time, s.row);
  }

  // One pass over pending parities; true if something new was recovered.
  bool sweep_pending(Time now) {
    bool progress = false;
    std::vector<Pending> still;
    for (const auto& p : pending_) {
      const Component& comp = code_.component(p.component);
      const int k = comp.parity_offset + p.row;
      gf::Element constant = rx_.data.parity.at(p.slot, k);

      bool blocked = false;
      for (std::size_t d = 0; d < code_.components().size() && !blocked; ++d) {
        if (d == p.component) continue;
        scratch_.clear();
        code_.component_terms(d, p.slot, k, scratch_);
        for (const auto& term : scratch_) {
          if (!known(term.symbol)) {
            blocked = true;
            break;
          }
          constant = gf::add(constant, field_.mul(term.coef, value(term.symbol)));
        }
      }
      if (blocked) {
        still.push_back(p);
        continue;
      }

      scratch_.clear();
      code_.component_terms(p.component, p.slot, k, scratch_);
      std::vector<LinearTerm> unknown;
      for (const auto& term : scratch_) {
        if (known(term.symbol)) {
          constant = gf::add(constant, field_.mul(term.coef, value(term.symbol)));
        } else {
          unknown.push_back({term.symbol, term.coef});
        }
      }
      if (unknown.empty()) continue;

      const Time anchor = comp.code.parity_anchor(p.slot - comp.shift, p.row);
      auto [it, inserted] = systems_.try_emplace({p.component, anchor}, field_);
      for (const auto& id : it->second.add_equation(unknown, constant)) {
        if (recovered_.contains(id)) continue;
        recovered_.emplace(id, std::make_pair(now, *it->second.value(id)));
        progress = true;
      }
    }
    pending_ = std::move(still);
    return progress;
  }

  const CompositeCode& code_;
  const std::vector<std::size_t>& targets_;
  const ReceivedStream& rx_;
  const gf::Field& field_;
  std::vector<Pending> pending_;
  std::map<std::pair<std::size_t, Time>, IncrementalSolver> systems_;
  std::map<SubSymbolId, std::pair<Time, gf::Element>> recovered_;
  std::vector<Term> scratch_;
};

}  // namespace

DecodeReport cancellation_decode(const CompositeCode& code, const std::vector<std::size_t>& targets,
                                 const ReceivedStream& rx, int delay_bound, const std::string& stage) {
  return CancellationDecoder(code, targets, rx).run(delay_bound, stage);
}

ReceivedStream widen_erasure(const ReceivedStream& rx, Time j, int b) {
  ReceivedStream out = rx;
  for (Time t = std::max<Time>(j, 0); t < j + b && t < rx.horizon(); ++t) {
    out.erased[static_cast<std::size_t>(t)] = true;
    out.data.source.clear_slot(t);
    out.data.parity.clear_slot(t);
  }
  return out;
}

DecodeReport restrict_report(DecodeReport report, Time j, int b, int delay_bound) {
  DecodeReport out;
  out.burst_start = j;
  out.burst_length = b;
  for (const auto& id : report.erased) {
    if (id.time < j || id.time >= j + b) continue;
    out.erased.push_back(id);
    if (auto it = report.recovered_at.find(id); it != report.recovered_at.end()) out.recovered_at.emplace(id, it->second);
    if (auto it = report.values.find(id); it != report.values.end()) out.values.emplace(id, it->second);
  }
  const std::string stage = report.failure ? report.failure->stage : std::string{};
  out.finalize(delay_bound, stage);
  return out;
}

}  // namespace desco
