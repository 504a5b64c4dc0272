#include "lhlll/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace lhlll {

void VariableSpec::validate() const {
  if (range_size < 1) throw std::invalid_argument("range_size must be >= 1");
  if (static_cast<int>(distribution.size()) != range_size)
    throw std::invalid_argument("distribution length != range_size");
  Rat sum = 0;
  for (const Rat& p : distribution) {
    if (p <= 0) throw std::invalid_argument("distribution entries must be positive");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument("distribution must sum to 1 exactly");
}

std::string EventKey::str() const {
  std::string s = "A(";
  for (int i = 0; i < len; ++i) {
    if (i) s += ",";
    s += std::to_string(t[static_cast<size_t>(i)]);
  }
  return s + ")";
}

void EventSpec::check_shape() const {
  if (!(vbl_lo <= rsp_lo && rsp_lo <= hi))
    throw std::invalid_argument("event intervals must satisfy vbl_lo <= rsp_lo <= hi");
}

bool EventFamily::precedes(const EventSpec& a, const EventSpec& b) const {
  if (a.hi != b.hi) return a.hi < b.hi;
  return a.id < b.id;
}

VarIndex EventFamily::window_for_prefix(VarIndex prefix_len) const {
  // Doubling search: grow W until no event with rsp meeting [0, prefix_len)
  // ends beyond W. Families with closed forms override this.
  VarIndex w = prefix_len > 0 ? prefix_len - 1 : 0;
  for (int rounds = 0; rounds < 48; ++rounds) {
    VarIndex worst = w;
    for (VarIndex h = w + 1; h <= 2 * w + 1; ++h) {
      visit_events_at(h, 0, [&](const EventSpec& e) {
        if (e.rsp_lo < prefix_len) worst = std::max(worst, e.hi);
        return true;
      });
    }
    if (worst == w) return w;
    w = std::max(worst, 2 * w);
  }
  throw std::runtime_error("window_for_prefix did not stabilize");
}

std::vector<EventSpec> EventFamily::events_in_window(const Window& w) const {
  std::vector<EventSpec> out;
  if (w.empty()) return out;
  for (VarIndex h = w.lo; h <= w.hi; ++h) {
    visit_events_at(h, w.lo, [&](const EventSpec& e) {
      out.push_back(e);
      return true;
    });
  }
  return out;  // visit order is already (hi, id) ascending
}

std::vector<EventSpec> EventFamily::enumerate_by_priority(int n) const {
  std::vector<EventSpec> out;
  for (VarIndex h = 0; static_cast<int>(out.size()) < n; ++h) {
    visit_events_at(h, 0, [&](const EventSpec& e) {
      out.push_back(e);
      return static_cast<int>(out.size()) < n;
    });
    if (h > (1LL << 40)) throw std::runtime_error("enumerate_by_priority: no events found");
  }
  return out;
}

bool EventFamily::rsp_intersects(const EventSpec& a, const EventSpec& b) const {
  return std::max(a.rsp_lo, b.rsp_lo) <= std::min(a.hi, b.hi);
}

bool EventFamily::in_gamma_plus(const EventSpec& a, const EventSpec& b) const {
  return a.id == b.id || rsp_intersects(a, b);
}

std::vector<EventSpec> gamma_unchecked(const EventFamily& fam, const EventSpec& a) {
  std::vector<EventSpec> out;
  std::vector<EventKey> seen;
  for (VarIndex i = a.rsp_lo; i <= a.hi; ++i) {
    for (const EventSpec& b : fam.events_with_rsp_containing(i)) {
      if (b.id == a.id) continue;
      if (std::find(seen.begin(), seen.end(), b.id) != seen.end()) continue;
      seen.push_back(b.id);
      out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end(), [&](const EventSpec& x, const EventSpec& y) {
    return fam.precedes(x, y);
  });
  return out;
}

std::vector<EventSpec> gamma(const EventFamily& fam, const EventSpec& a) {
  if (!fam.find_event(a.id)) throw std::invalid_argument("unknown event id " + a.id.str());
  return gamma_unchecked(fam, a);
}

PairClass classify_pair(const EventFamily& fam, const EventSpec& a, const EventSpec& b) {
  if (fam.in_gamma_plus(a, b)) return PairClass::Neighbor;
  return fam.precedes(a, b) ? PairClass::LeftOf : PairClass::RightOf;
}

bool left_of(const EventFamily& fam, const EventSpec& a, const EventSpec& b) {
  return classify_pair(fam, a, b) == PairClass::LeftOf;
}

}  // namespace lhlll
