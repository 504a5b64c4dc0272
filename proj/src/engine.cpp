#include "lhlll/engine.hpp"

#include "lhlll/settlement.hpp"

#include <algorithm>

namespace lhlll {

EngineRun::EngineRun(std::shared_ptr<const EventFamily> fam, Window window,
                     CellSource& src)
    : fam_(std::move(fam)), window_(window), src_(src) {
  size_t n = static_cast<size_t>(window_.size());
  values_.assign(n, 0);
  drawn_.assign(n, 0);
  counters_.assign(n, 0);
  scan_floor_ = window_.lo;
  ctx_ = fam_->make_eval_context([this](VarIndex i) { return value(i); });
}

int EngineRun::value(VarIndex i) {
  size_t k = static_cast<size_t>(i - window_.lo);
  if (!drawn_[k]) {
    values_[k] = src_.draw(i, 0);
    drawn_[k] = 1;
  }
  return values_[k];
}

int64_t EngineRun::resample_count(VarIndex i) const {
  return counters_[static_cast<size_t>(i - window_.lo)];
}

std::optional<EventSpec> EngineRun::least_bad(VarIndex cap_hi) {
  cap_hi = std::min(cap_hi, window_.hi);
  for (VarIndex h = scan_floor_; h <= cap_hi; ++h) {
    std::optional<EventSpec> found;
    fam_->visit_events_at(h, window_.lo, [&](const EventSpec& e) {
      if (ctx_->is_bad(e)) {
        found = e;
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

void EngineRun::resample(const EventSpec& e) {
  ++stage_;
  LogEntry entry;
  entry.stage = stage_;
  entry.event = e;
  for (VarIndex i = e.rsp_lo; i <= e.hi; ++i) {
    entry.old_values.push_back(value(i));
    size_t k = static_cast<size_t>(i - window_.lo);
    ++counters_[k];
    values_[k] = src_.draw(i, counters_[k]);
    entry.new_values.push_back(values_[k]);
  }
  log_.entries.push_back(std::move(entry));
  ctx_->on_values_changed(e.rsp_lo);
  // Events ending before rsp_lo(e) were good when e was selected and are
  // untouched by this resample.
  scan_floor_ = std::max(window_.lo, e.rsp_lo);
}

std::vector<int> EngineRun::snapshot() {
  for (VarIndex i = window_.lo; i <= window_.hi; ++i) value(i);
  return values_;
}

std::optional<EventSpec> least_bad_event(const EventFamily& fam, const Window& w,
                                         const ValueReader& values) {
  auto ctx = fam.make_eval_context(values);
  for (VarIndex h = w.lo; h <= w.hi; ++h) {
    std::optional<EventSpec> found;
    fam.visit_events_at(h, w.lo, [&](const EventSpec& e) {
      if (ctx->is_bad(e)) {
        found = e;
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

RunResult run_windowed(std::shared_ptr<const EventFamily> fam, Window window,
                       uint64_t seed, int64_t max_stages) {
  SampleGrid grid(fam, seed);
  EngineRun run(fam, window, grid);
  for (;;) {
    auto bad = run.least_bad(window.hi);
    if (!bad) break;
    if (run.stages() >= max_stages)
      throw TimeoutError("resample run exceeded max stages", run.log());
    run.resample(*bad);
  }
  RunResult res;
  res.window = window;
  res.values = run.snapshot();
  res.log = run.log();
  res.stages = run.stages();
  return res;
}

PrefixCertificate certify_prefix(const EventFamily& fam, const std::vector<int>& values,
                                 Window window, int64_t prefix_len) {
  PrefixCertificate cert;
  cert.window = window;
  cert.prefix_len = prefix_len;
  cert.values = values;
  auto ctx = fam.make_eval_context([&](VarIndex i) {
    return values[static_cast<size_t>(i - window.lo)];
  });
  for (VarIndex h = window.lo; h <= window.hi; ++h) {
    fam.visit_events_at(h, window.lo, [&](const EventSpec& e) {
      if (ctx->is_bad(e)) cert.violations.push_back({e.id});
      return true;
    });
  }
  return cert;
}

StreamResult stream_generate(std::shared_ptr<const EventFamily> fam, int64_t length,
                             const Rat& delta, uint64_t seed, bool annotate,
                             int64_t max_stages) {
  StreamResult out;
  VarIndex w_hi = fam->window_for_prefix(length);
  Window window{0, std::max<VarIndex>(w_hi, length - 1)};
  out.run = run_windowed(fam, window, seed, max_stages);

  for (const LogEntry& le : out.run.log.entries) {
    int idx = 0;
    for (VarIndex i = le.event.rsp_lo; i <= le.event.hi; ++i, ++idx)
      if (i < length)
        out.revisions.push_back({le.stage, i, le.old_values[static_cast<size_t>(idx)],
                                 le.new_values[static_cast<size_t>(idx)]});
  }

  out.prefix.assign(out.run.values.begin(), out.run.values.begin() + length);

  if (annotate) {
    for (VarIndex i = 0; i < length; ++i) {
      SettlementBound sb = compute_settlement_bound(*fam, i, delta);
      out.annotations.push_back(
          {i, sb.stage_bound, Int(out.run.stages) >= sb.stage_bound});
    }
  }

  out.certificate = certify_prefix(*fam, out.run.values, window, length);
  return out;
}

}  // namespace lhlll
