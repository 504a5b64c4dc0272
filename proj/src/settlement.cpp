#include "lhlll/settlement.hpp"

#include "lhlll/validate.hpp"

#include <algorithm>
#include <set>

namespace lhlll {

namespace {

// Events within Gamma-distance <= m of a (including a), then closed
// downward under the priority order.
std::vector<EventSpec> downward_closed_ball(const EventFamily& fam, const EventSpec& a,
                                            int m, int64_t guard) {
  std::set<EventKey> seen{a.id};
  std::vector<EventSpec> frontier{a}, all{a};
  for (int step = 0; step < m; ++step) {
    std::vector<EventSpec> next;
    for (const EventSpec& e : frontier)
      for (const EventSpec& b : gamma_unchecked(fam, e))
        if (seen.insert(b.id).second) {
          next.push_back(b);
          all.push_back(b);
          if (static_cast<int64_t>(all.size()) > guard)
            throw SizeError("settlement ball exceeds guard");
        }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  // Downward closure: every event preceding the ball maximum.
  const EventSpec* top = &all[0];
  for (const EventSpec& e : all)
    if (fam.precedes(*top, e)) top = &e;
  std::vector<EventSpec> closure;
  for (VarIndex h = 0; h <= top->hi; ++h) {
    fam.visit_events_at(h, 0, [&](const EventSpec& e) {
      if (e.hi < top->hi || !fam.precedes(*top, e)) closure.push_back(e);
      if (static_cast<int64_t>(closure.size()) > guard)
        throw SizeError("settlement closure exceeds guard");
      return true;
    });
  }
  return closure;
}

Rat expectation_over(const EventFamily& fam, const std::vector<EventSpec>& events) {
  Rat e = 0;
  for (const EventSpec& b : events) {
    Rat zb = fam.z(b);
    e += zb / (1 - zb);
  }
  return e;
}

}  // namespace

SettlementBound compute_settlement_bound(const EventFamily& fam, VarIndex i,
                                         const Rat& delta, int64_t closure_guard) {
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must be in (0,1)");
  SettlementBound out;
  out.index = i;
  out.delta = delta;
  out.stage_bound = 0;

  auto touching = fam.events_with_rsp_containing(i);
  if (touching.empty()) return out;
  Rat delta_a = delta / static_cast<int64_t>(touching.size());

  for (const EventSpec& a : touching) {
    SettlementEventBound eb;
    eb.id = a.id;
    Rat za = fam.z(a);
    Rat tail = za / (1 - za);
    int m = 0;
    while (tail > delta_a / 2) {
      tail *= fam.alpha();
      ++m;
      if (m > 1000000) throw SizeError("settlement radius did not converge");
    }
    eb.radius = m;
    auto closure = downward_closed_ball(fam, a, m, closure_guard);
    eb.closure_size = static_cast<int64_t>(closure.size());
    eb.expectation_bound = expectation_over(fam, closure);
    eb.markov_stage = rat_ceil(2 * eb.expectation_bound / delta_a);
    out.stage_bound = std::max(out.stage_bound, eb.markov_stage);
    out.per_event.push_back(std::move(eb));
  }
  return out;
}

Rat change_probability_bound(const EventFamily& fam, VarIndex i, int64_t k,
                             int64_t closure_guard) {
  if (k <= 0) return 1;
  auto touching = fam.events_with_rsp_containing(i);
  Rat total = 0;
  for (const EventSpec& a : touching) {
    Rat za = fam.z(a);
    Rat tail = za / (1 - za);  // alpha^m * z/(1-z) at m = 0
    Rat best = 1;
    for (int m = 0; m <= 400; ++m) {
      auto closure = downward_closed_ball(fam, a, m, closure_guard);
      Rat cand = tail + expectation_over(fam, closure) / k;
      best = std::min(best, cand);
      if (tail < best / 16 && m > 0) break;  // further radii cannot help much
      tail *= fam.alpha();
    }
    total += best;
  }
  return std::min(total, Rat(1));
}

}  // namespace lhlll
