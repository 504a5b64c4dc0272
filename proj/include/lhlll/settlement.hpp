#pragma once

#include "lhlll/family.hpp"

namespace lhlll {

struct SettlementEventBound {
  EventKey id;
  int radius = 0;           // m: ball radius in the neighborhood graph
  int64_t closure_size = 0; // events in the downward-closed ball
  Rat expectation_bound;    // sum of z/(1-z) over the closure
  Int markov_stage;         // ceil(2 * expectation / delta_A)
};

/// Certificate that bit i changes after stage N with probability < delta.
struct SettlementBound {
  VarIndex index = 0;
  Rat delta;
  Int stage_bound;  // N(i, delta) = max of the per-event Markov stages
  std::vector<SettlementEventBound> per_event;
};

/// For each event A with x_i in rsp(A): split delta equally, pick the
/// least m with alpha^m * z(A)/(1-z(A)) <= delta_A/2, take the downward
/// closure of the radius-m ball around A, bound the stopping-time
/// expectation by sum z/(1-z), and solve the Markov inequality. Returns
/// the max stage over events (0 when no event resamples x_i).
SettlementBound compute_settlement_bound(const EventFamily& fam, VarIndex i,
                                         const Rat& delta,
                                         int64_t closure_guard = 200000);

/// Upper bound on Pr(x_i changes after stage k): per contributing event,
/// min over m of [alpha^m z/(1-z) + E(closure_m)/k].
Rat change_probability_bound(const EventFamily& fam, VarIndex i, int64_t k,
                             int64_t closure_guard = 200000);

}  // namespace lhlll
