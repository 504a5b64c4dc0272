#pragma once

#include "lhlll/family.hpp"

#include <string>
#include <vector>

namespace lhlll {

struct OrderViolation {
  std::string rule;  // "lefthanded", "static-disjoint", "right-endpoint"
  std::vector<EventKey> ids;
  std::string detail;
};

struct OrderReport {
  std::vector<OrderViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks, over all events with vbl inside the window:
///  (i)  the lefthanded rule: A in Gamma+(B), A not in Gamma(C), C after B
///       implies C after A (all triples);
///  (ii) A >> B implies rsp(A) disjoint from vbl(B) (all pairs);
///  (iii) the priority order refines the right-endpoint quasi-order.
OrderReport validate_order(const EventFamily& fam, const Window& w);

struct LllEntry {
  EventKey id;
  Rat pstar;
  Rat bound;  // alpha * z(A) * prod(1 - z(B)) over the full neighbor set
  int neighbor_count = 0;
  bool ok = false;
};

struct LllReport {
  std::vector<LllEntry> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (!e.ok) return false;
    return true;
  }
};

/// Exact check of P*(A) <= alpha * z(A) * prod_{B in Gamma(A)} (1 - z(B))
/// for every event with vbl inside the window. The product runs over the
/// full (finite) neighbor set, including neighbors outside the window.
LllReport validate_lll(const EventFamily& fam, const Window& w);

/// Thrown when an exhaustive enumeration would exceed its guard.
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumerates every valuation mu of stc(a); for each, computes
/// Pr(A | E_mu) exactly as a weighted sum over rsp valuations; returns
/// true iff the maximum over mu is <= pstar(a). Families with staged
/// derived sequences may expose stc equivalence classes instead of raw
/// valuations (see EventFamily hooks in family implementations); the
/// generic path enumerates raw assignments under a 2^24 guard.
bool validate_pstar_exhaustive(const EventFamily& fam, const EventSpec& a);

/// The computed sup_mu Pr(A | E_mu) (same enumeration as the validator).
Rat sup_conditional_probability(const EventFamily& fam, const EventSpec& a);

}  // namespace lhlll
