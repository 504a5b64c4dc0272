#pragma once

#include "lhlll/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lhlll {

using VarIndex = int64_t;

/// One finite-range random variable with an exact rational distribution.
struct VariableSpec {
  VarIndex index = 0;
  int range_size = 2;
  std::vector<Rat> distribution;  // positive, sums to exactly 1

  void validate() const;  // throws std::invalid_argument on bad data
};

/// Application tuple identifying an event, e.g. {i} or {k,l,n}.
struct EventKey {
  std::array<int64_t, 3> t{0, 0, 0};
  int len = 0;

  EventKey() = default;
  EventKey(std::initializer_list<int64_t> xs) {
    for (int64_t x : xs) t[static_cast<size_t>(len++)] = x;
  }
  auto operator<=>(const EventKey&) const = default;
  std::string str() const;
};

/// A bad event over the interval variable context:
/// vbl = [vbl_lo, hi], rsp = [rsp_lo, hi], stc = [vbl_lo, rsp_lo).
struct EventSpec {
  EventKey id;
  VarIndex vbl_lo = 0;
  VarIndex rsp_lo = 0;
  VarIndex hi = 0;

  VarIndex stc_lo() const { return vbl_lo; }
  VarIndex stc_hi() const { return rsp_lo - 1; }  // empty when rsp_lo == vbl_lo
  int64_t vbl_size() const { return hi - vbl_lo + 1; }
  int64_t rsp_size() const { return hi - rsp_lo + 1; }
  int64_t stc_size() const { return rsp_lo - vbl_lo; }
  void check_shape() const;  // vbl_lo <= rsp_lo <= hi
};

/// Inclusive interval of variable indices.
struct Window {
  VarIndex lo = 0;
  VarIndex hi = -1;
  bool empty() const { return hi < lo; }
  int64_t size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(VarIndex i) const { return lo <= i && i <= hi; }
};

enum class PairClass { LeftOf, Neighbor, RightOf };

/// Reads current variable values (value = index into the variable's range).
using ValueReader = std::function<int(VarIndex)>;

/// Per-run predicate evaluator. Families that derive a secondary sequence
/// from the variables (colors, game transcripts) keep their caches here.
class EvalContext {
 public:
  virtual ~EvalContext() = default;
  /// Values at indices >= lo may have changed; drop dependent caches.
  virtual void on_values_changed(VarIndex lo) = 0;
  virtual bool is_bad(const EventSpec& e) = 0;
};

using EventVisitor = std::function<bool(const EventSpec&)>;  // false = stop

/// An indexed family of bad events over a variable context, with the
/// priority order keyed by right endpoint (ties broken by id).
class EventFamily {
 public:
  virtual ~EventFamily() = default;

  virtual std::string name() const = 0;
  virtual VariableSpec variable(VarIndex i) const = 0;
  virtual Rat alpha() const = 0;

  virtual Rat pstar(const EventSpec& e) const = 0;
  virtual Rat z(const EventSpec& e) const = 0;

  /// All events whose rsp interval contains variable i (finite by contract).
  virtual std::vector<EventSpec> events_with_rsp_containing(VarIndex i) const = 0;

  /// Visit events with right endpoint == h and vbl_lo >= window_lo, in
  /// ascending id order. Return false from the visitor to stop early.
  virtual bool visit_events_at(VarIndex h, VarIndex window_lo,
                               const EventVisitor& fn) const = 0;

  virtual std::unique_ptr<EvalContext> make_eval_context(ValueReader reader) const = 0;

  /// Look up an event by id; nullopt if the family has no such event.
  virtual std::optional<EventSpec> find_event(const EventKey& id) const = 0;

  /// Priority order: (hi, id) lexicographic. Test doubles may override.
  virtual bool precedes(const EventSpec& a, const EventSpec& b) const;

  /// Smallest window [lo_hint, W] whose events cover every event whose rsp
  /// meets [0, prefix_len). Families with unbounded event spans override.
  virtual VarIndex window_for_prefix(VarIndex prefix_len) const;

  /// Representative small events for the exhaustive P* spot check.
  virtual std::vector<EventSpec> pstar_check_samples() const { return {}; }

  /// Families whose raw stc space is too large to enumerate but collapses
  /// through a derived sequence may compute sup_mu Pr(A | E_mu) over stc
  /// equivalence classes here. nullopt selects the generic enumeration.
  virtual std::optional<Rat> sup_conditional_override(const EventSpec&) const {
    return std::nullopt;
  }

  /// When all variables are identically distributed, the shared spec
  /// (index field meaningless); lets samplers skip per-index queries.
  virtual std::optional<VariableSpec> constant_variable_spec() const {
    return std::nullopt;
  }

  // --- derived helpers (implemented on top of the virtuals) ---

  /// Events with vbl contained in the window, sorted by priority.
  std::vector<EventSpec> events_in_window(const Window& w) const;

  /// First n events in priority order.
  std::vector<EventSpec> enumerate_by_priority(int n) const;

  bool rsp_intersects(const EventSpec& a, const EventSpec& b) const;
  bool in_gamma_plus(const EventSpec& a, const EventSpec& b) const;
};

/// Neighborhood of a: events whose rsp meets rsp(a), excluding a itself.
/// Throws std::invalid_argument if a is not in the family.
std::vector<EventSpec> gamma(const EventFamily& fam, const EventSpec& a);

/// As gamma, but with no membership check (for synthetic test events).
std::vector<EventSpec> gamma_unchecked(const EventFamily& fam, const EventSpec& a);

/// Trichotomy classification of an ordered pair.
PairClass classify_pair(const EventFamily& fam, const EventSpec& a, const EventSpec& b);

/// a << b: a precedes b and they are not neighbors.
bool left_of(const EventFamily& fam, const EventSpec& a, const EventSpec& b);

}  // namespace lhlll
