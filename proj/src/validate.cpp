#include "lhlll/validate.hpp"

#include <algorithm>
#include <map>

namespace lhlll {

OrderReport validate_order(const EventFamily& fam, const Window& w) {
  OrderReport rep;
  auto events = fam.events_in_window(w);
  const size_t n = events.size();

  // (iii) priority refines the right-endpoint quasi-order
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto &a = events[i], &b = events[j];
      if (fam.precedes(a, b) && a.hi > b.hi)
        rep.violations.push_back({"right-endpoint", {a.id, b.id},
                                  "precedes but has larger right endpoint"});
    }

  // (ii) A >> B implies rsp(A) disjoint from vbl(B)
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto &a = events[i], &b = events[j];
      if (classify_pair(fam, a, b) == PairClass::RightOf) {
        bool disjoint = std::max(a.rsp_lo, b.vbl_lo) > std::min(a.hi, b.hi);
        if (!disjoint)
          rep.violations.push_back({"static-disjoint", {a.id, b.id},
                                    "A >> B but rsp(A) meets vbl(B)"});
      }
    }

  // (i) the lefthanded rule over all triples
  for (size_t ai = 0; ai < n; ++ai)
    for (size_t bi = 0; bi < n; ++bi)
      for (size_t ci = 0; ci < n; ++ci) {
        const auto &a = events[ai], &b = events[bi], &c = events[ci];
        if (!fam.in_gamma_plus(a, b)) continue;
        if (a.id == c.id) continue;
        if (fam.rsp_intersects(a, c)) continue;  // a in Gamma(c)
        if (fam.precedes(b, c) && !fam.precedes(a, c))
          rep.violations.push_back({"lefthanded", {a.id, b.id, c.id},
                                    "C > B but not C > A"});
      }
  return rep;
}

LllReport validate_lll(const EventFamily& fam, const Window& w) {
  LllReport rep;
  for (const EventSpec& a : fam.events_in_window(w)) {
    LllEntry entry;
    entry.id = a.id;
    entry.pstar = fam.pstar(a);
    Rat prod = fam.z(a);
    auto nbrs = gamma_unchecked(fam, a);
    entry.neighbor_count = static_cast<int>(nbrs.size());
    for (const EventSpec& b : nbrs) prod *= (1 - fam.z(b));
    entry.bound = fam.alpha() * prod;
    entry.ok = entry.pstar <= entry.bound;
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

namespace {

// Odometer over value tuples for variables [lo, hi] relative to base;
// ranges are pre-fetched to keep the inner loop allocation free.
template <typename Fn>
void for_each_assignment(const std::vector<int>& ranges, VarIndex lo, VarIndex hi,
                         std::vector<int>& vals, VarIndex base, const Fn& fn) {
  if (lo > hi) {
    fn();
    return;
  }
  int r = ranges[static_cast<size_t>(lo - base)];
  for (int v = 0; v < r; ++v) {
    vals[static_cast<size_t>(lo - base)] = v;
    for_each_assignment(ranges, lo + 1, hi, vals, base, fn);
  }
}

}  // namespace

Rat sup_conditional_probability(const EventFamily& fam, const EventSpec& a) {
  if (auto r = fam.sup_conditional_override(a)) return *r;

  std::vector<int> ranges;
  std::vector<std::vector<Rat>> dists;
  Rat total = 1;
  for (VarIndex i = a.vbl_lo; i <= a.hi; ++i) {
    VariableSpec vs = fam.variable(i);
    ranges.push_back(vs.range_size);
    dists.push_back(vs.distribution);
    total *= vs.range_size;
    if (total > Rat(1 << 24)) throw SizeError("pstar enumeration exceeds 2^24 assignments");
  }

  std::vector<int> vals(static_cast<size_t>(a.vbl_size()), 0);
  auto reader = [&](VarIndex i) { return vals[static_cast<size_t>(i - a.vbl_lo)]; };
  auto ctx = fam.make_eval_context(reader);

  Rat best = 0;
  for_each_assignment(ranges, a.stc_lo(), a.stc_hi(), vals, a.vbl_lo, [&]() {
    Rat hit = 0;
    for_each_assignment(ranges, a.rsp_lo, a.hi, vals, a.vbl_lo, [&]() {
      ctx->on_values_changed(a.vbl_lo);
      if (ctx->is_bad(a)) {
        Rat wgt = 1;
        for (VarIndex i = a.rsp_lo; i <= a.hi; ++i)
          wgt *= dists[static_cast<size_t>(i - a.vbl_lo)][static_cast<size_t>(
              vals[static_cast<size_t>(i - a.vbl_lo)])];
        hit += wgt;
      }
    });
    best = std::max(best, hit);
  });
  return best;
}

bool validate_pstar_exhaustive(const EventFamily& fam, const EventSpec& a) {
  return sup_conditional_probability(fam, a) <= fam.pstar(a);
}

}  // namespace lhlll
