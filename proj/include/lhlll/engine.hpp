#pragma once

#include "lhlll/family.hpp"
#include "lhlll/grid.hpp"

#include <optional>

namespace lhlll {

struct LogEntry {
  int64_t stage = 0;  // 1-based, consecutive
  EventSpec event;
  std::vector<int> old_values;  // rsp values before, ascending index
  std::vector<int> new_values;  // rsp values after
};

struct ResampleLog {
  std::vector<LogEntry> entries;
  int64_t size() const { return static_cast<int64_t>(entries.size()); }
};

/// One run of the resample process over the events with vbl inside a
/// window. Variables are sampled lazily from the cell source: the initial
/// cell on first read, fresh cells on each resample (rsp ascending).
/// The T-check drives the same machinery with a priority cap.
class EngineRun {
 public:
  EngineRun(std::shared_ptr<const EventFamily> fam, Window window, CellSource& src);

  /// Current value of x_i (draws cell (i, V(i)) on first touch).
  int value(VarIndex i);

  /// Least bad event among window events with hi <= cap_hi, exploiting
  /// the invariant that events ending below the scan floor stayed good.
  std::optional<EventSpec> least_bad(VarIndex cap_hi);

  /// Resample rsp(e), append a log entry, advance the stage counter.
  void resample(const EventSpec& e);

  /// Evaluate e's predicate under the current valuation.
  bool is_bad_now(const EventSpec& e) { return ctx_->is_bad(e); }

  int64_t stages() const { return stage_; }
  const ResampleLog& log() const { return log_; }
  const Window& window() const { return window_; }
  int64_t resample_count(VarIndex i) const;
  std::vector<int> snapshot();  // forces all window vars, returns values

 private:
  std::shared_ptr<const EventFamily> fam_;
  Window window_;
  CellSource& src_;
  std::vector<int> values_;
  std::vector<char> drawn_;
  std::vector<int64_t> counters_;
  std::unique_ptr<EvalContext> ctx_;
  VarIndex scan_floor_;
  int64_t stage_ = 0;
  ResampleLog log_;
};

struct TimeoutError : std::runtime_error {
  TimeoutError(std::string msg, ResampleLog partial_log)
      : std::runtime_error(std::move(msg)), partial(std::move(partial_log)) {}
  ResampleLog partial;
};

struct RunResult {
  Window window;
  std::vector<int> values;  // final valuation, indexed by i - window.lo
  ResampleLog log;
  int64_t stages = 0;
};

constexpr int64_t kDefaultMaxStages = 1000000;

/// Scan the window events in priority order under the given valuation and
/// return the first bad one.
std::optional<EventSpec> least_bad_event(const EventFamily& fam, const Window& w,
                                         const ValueReader& values);

/// Run the resample process until every window event is good.
/// Throws TimeoutError (carrying the partial log) past max_stages.
RunResult run_windowed(std::shared_ptr<const EventFamily> fam, Window window,
                       uint64_t seed, int64_t max_stages = kDefaultMaxStages);

struct Violation {
  EventKey id;
};

struct PrefixCertificate {
  Window window;
  int64_t prefix_len = 0;
  std::vector<int> values;  // full window valuation
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Evaluate every event with vbl inside the window; violations are data.
PrefixCertificate certify_prefix(const EventFamily& fam, const std::vector<int>& values,
                                 Window window, int64_t prefix_len);

struct Revision {
  int64_t stage;
  VarIndex index;
  int old_value;
  int new_value;
};

struct SettleAnnotation {
  VarIndex index;
  Int stage_bound;       // N(i, delta)
  bool passed = false;   // global stage counter passed the bound in-run
};

struct StreamResult {
  std::vector<int> prefix;  // final values of x[0 .. L)
  std::vector<Revision> revisions;
  std::vector<SettleAnnotation> annotations;  // present when annotate=true
  PrefixCertificate certificate;
  RunResult run;
};

/// Generate a certified prefix of length L: picks a window covering every
/// event whose rsp meets [0, L), runs the resample process, emits the
/// in-prefix revisions, and certifies the result. Settlement annotations
/// are optional because N(i, delta) can be large to compute.
StreamResult stream_generate(std::shared_ptr<const EventFamily> fam, int64_t length,
                             const Rat& delta, uint64_t seed,
                             bool annotate = false,
                             int64_t max_stages = kDefaultMaxStages);

}  // namespace lhlll
