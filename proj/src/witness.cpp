#include "lhlll/witness.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lhlll {

namespace {

std::string canon_rec(const MoserTree& t, int v,
                      const std::vector<std::vector<int>>& kids) {
  std::vector<std::string> parts;
  for (int c : kids[static_cast<size_t>(v)])
    parts.push_back(canon_rec(t, c, kids));
  std::sort(parts.begin(), parts.end());
  std::string s = "(" + t.nodes[static_cast<size_t>(v)].label.id.str();
  for (auto& p : parts) s += p;
  return s + ")";
}

std::vector<std::vector<int>> children_of(const MoserTree& t) {
  std::vector<std::vector<int>> kids(t.nodes.size());
  for (size_t i = 1; i < t.nodes.size(); ++i)
    kids[static_cast<size_t>(t.nodes[i].parent)].push_back(static_cast<int>(i));
  return kids;
}

}  // namespace

std::string MoserTree::canonical() const {
  if (nodes.empty()) return "()";
  return canon_rec(*this, 0, children_of(*this));
}

uint64_t MoserTree::canonical_hash() const {
  std::string s = canonical();
  uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

Rat MoserTree::weight(const EventFamily& fam) const {
  Rat w = 1;
  for (const MoserNode& n : nodes) w *= fam.pstar(n.label);
  return w;
}

bool is_legal_log(const EventFamily& fam, const std::vector<EventSpec>& log) {
  for (size_t i = 0; i + 1 < log.size(); ++i)
    if (classify_pair(fam, log[i], log[i + 1]) == PairClass::RightOf) return false;
  return true;
}

MoserTree build_moser_tree(const EventFamily& fam, const std::vector<EventSpec>& log,
                           int64_t stage_offset) {
  MoserTree t;
  if (log.empty()) return t;
  int64_t n = static_cast<int64_t>(log.size());
  t.nodes.push_back({log.back(), -1, 0, stage_offset + n});
  for (int64_t k = n - 1; k >= 1; --k) {
    const EventSpec& e = log[static_cast<size_t>(k - 1)];
    int best = -1;
    for (size_t x = 0; x < t.nodes.size(); ++x) {
      if (!fam.in_gamma_plus(e, t.nodes[x].label)) continue;
      if (best < 0 || t.nodes[x].depth > t.nodes[static_cast<size_t>(best)].depth ||
          (t.nodes[x].depth == t.nodes[static_cast<size_t>(best)].depth &&
           t.nodes[x].stamp < t.nodes[static_cast<size_t>(best)].stamp))
        best = static_cast<int>(x);
    }
    if (best >= 0)
      t.nodes.push_back(
          {e, best, t.nodes[static_cast<size_t>(best)].depth + 1, stage_offset + k});
  }
  return t;
}

std::vector<int> greedy_vertex_order(const EventFamily& fam, const MoserTree& tree) {
  std::vector<int> order;
  std::vector<char> removed(tree.nodes.size(), 0);
  size_t left = tree.nodes.size();
  while (left > 0) {
    // nodes of maximal depth among remaining nodes with neighboring labels
    int pick = -1;
    for (size_t v = 0; v < tree.nodes.size(); ++v) {
      if (removed[v]) continue;
      int maxd = tree.nodes[v].depth;
      for (size_t w = 0; w < tree.nodes.size(); ++w) {
        if (removed[w] || w == v) continue;
        if (fam.in_gamma_plus(tree.nodes[v].label, tree.nodes[w].label))
          maxd = std::max(maxd, tree.nodes[w].depth);
      }
      if (tree.nodes[v].depth != maxd) continue;
      if (pick >= 0) {
        const EventSpec &pv = tree.nodes[static_cast<size_t>(pick)].label,
                        &cv = tree.nodes[v].label;
        if (pv.id == cv.id)
          throw std::runtime_error("greedy order: duplicate maximal label");
        if (fam.precedes(cv, pv)) pick = static_cast<int>(v);
      } else {
        pick = static_cast<int>(v);
      }
    }
    if (pick < 0) throw std::runtime_error("greedy order: no maximal node");
    order.push_back(pick);
    removed[static_cast<size_t>(pick)] = 1;
    --left;
  }
  return order;
}

TreeCheckReport verify_tree_invariants(const EventFamily& fam, const MoserTree& tree,
                                       const std::vector<EventSpec>& log) {
  TreeCheckReport rep;
  auto fail = [&](std::string s) { rep.failures.push_back(std::move(s)); };
  const int64_t n = static_cast<int64_t>(log.size());

  // depth/stamp law for neighboring labels
  for (size_t x = 0; x < tree.nodes.size(); ++x)
    for (size_t y = 0; y < tree.nodes.size(); ++y) {
      if (x == y) continue;
      const MoserNode &a = tree.nodes[x], &b = tree.nodes[y];
      if (!fam.in_gamma_plus(a.label, b.label)) continue;
      if (a.depth == b.depth) fail("neighbor labels at equal depth");
      if ((a.depth > b.depth) != (a.stamp < b.stamp))
        fail("depth order does not mirror stamp order");
    }

  // no shorter or longer prefix of the log generates the same tree
  std::string canon = tree.canonical();
  for (int64_t m = 1; m < n; ++m) {
    std::vector<EventSpec> prefix(log.begin(), log.begin() + m);
    if (build_moser_tree(fam, prefix).canonical() == canon)
      fail("tree also generated by a shorter prefix");
  }

  // suffix logs generate exactly the partial trees (as stamped node sets)
  auto signature = [](const MoserTree& t, int64_t min_stamp) {
    std::set<std::string> sig;
    for (const MoserNode& nd : t.nodes) {
      if (nd.stamp < min_stamp) continue;
      int64_t ps = nd.parent >= 0 ? t.nodes[static_cast<size_t>(nd.parent)].stamp : -1;
      sig.insert(std::to_string(nd.stamp) + ":" + nd.label.id.str() + ":" +
                 std::to_string(nd.depth) + ">" + std::to_string(ps));
    }
    return sig;
  };
  for (int64_t m = 2; m <= n; ++m) {
    std::vector<EventSpec> suffix(log.begin() + (m - 1), log.end());
    MoserTree r = build_moser_tree(fam, suffix, m - 1);
    auto expect = signature(tree, m);
    auto got = signature(r, m);
    // r's nodes with stamp >= m must coincide with tree's; r may not add others
    if (got != expect) {
      // the suffix tree equals the stage-m partial tree, whose nodes are
      // exactly those of the full tree with stamp >= m
      fail("suffix tree mismatch at m=" + std::to_string(m));
    }
  }

  // stamps strictly increase along the greedy order and exhaust minima
  auto order = greedy_vertex_order(fam, tree);
  for (size_t i = 0; i + 1 < order.size(); ++i)
    if (tree.nodes[static_cast<size_t>(order[i])].stamp >=
        tree.nodes[static_cast<size_t>(order[i + 1])].stamp)
      fail("greedy order stamps not increasing");
  {
    std::vector<int64_t> stamps;
    for (int v : order) stamps.push_back(tree.nodes[static_cast<size_t>(v)].stamp);
    std::vector<int64_t> sorted = stamps;
    std::sort(sorted.begin(), sorted.end());
    if (stamps != sorted) fail("greedy order is not the stamp order");
  }

  // between consecutive stamps, logged events sit left of all later labels
  if (!log.empty()) {
    std::vector<int64_t> qs{0};
    for (int v : order) qs.push_back(tree.nodes[static_cast<size_t>(v)].stamp);
    for (size_t i = 0; i + 1 < qs.size(); ++i) {
      for (int64_t k = qs[i] + 1; k < qs[i + 1]; ++k) {
        for (size_t j = i; j < order.size(); ++j) {
          const EventSpec& lbl = tree.nodes[static_cast<size_t>(order[j])].label;
          if (!left_of(fam, log[static_cast<size_t>(k - 1)], lbl))
            fail("inter-stamp event not left of later labels at k=" +
                 std::to_string(k));
        }
      }
    }
  }
  return rep;
}

namespace {

std::vector<EventSpec> reachable_labels(const EventFamily& fam, const EventSpec& root,
                                        int radius, int64_t guard) {
  std::set<EventKey> seen{root.id};
  std::vector<EventSpec> all{root}, frontier{root};
  for (int step = 0; step < radius; ++step) {
    std::vector<EventSpec> next;
    for (const EventSpec& e : frontier)
      for (const EventSpec& b : gamma_unchecked(fam, e))
        if (seen.insert(b.id).second) {
          next.push_back(b);
          all.push_back(b);
          if (static_cast<int64_t>(all.size()) > guard)
            throw SizeError("label alphabet exceeds guard");
        }
    frontier = std::move(next);
  }
  return all;
}

/// The greedy-order label sequence of a candidate tree, interpreted as a
/// log, regenerates the tree iff the candidate is realizable.
bool realizable(const EventFamily& fam, const MoserTree& cand) {
  std::vector<EventSpec> log;
  try {
    for (int v : greedy_vertex_order(fam, cand)) log.push_back(cand.nodes[static_cast<size_t>(v)].label);
  } catch (const std::runtime_error&) {
    return false;  // ill-formed candidate (duplicate maximal labels)
  }
  if (!is_legal_log(fam, log)) return false;
  return build_moser_tree(fam, log).canonical() == cand.canonical();
}

}  // namespace

std::vector<MoserTree> enumerate_trees(const EventFamily& fam, const EventSpec& root,
                                       int max_nodes, int64_t guard) {
  auto labels = reachable_labels(fam, root, max_nodes - 1, guard);
  std::vector<MoserTree> out;
  std::set<std::string> seen;
  MoserTree start;
  start.nodes.push_back({root, -1, 0, 0});

  // DFS over parent arrays; dedupe by canonical form; validate greedily.
  std::vector<MoserTree> stack{start};
  int64_t visited = 0;
  while (!stack.empty()) {
    MoserTree t = std::move(stack.back());
    stack.pop_back();
    if (++visited > guard) throw SizeError("tree enumeration exceeds guard");
    if (seen.insert(t.canonical()).second && realizable(fam, t)) out.push_back(t);
    if (t.size() >= max_nodes) continue;
    for (int p = 0; p < t.size(); ++p)
      for (const EventSpec& lbl : labels) {
        if (!fam.in_gamma_plus(lbl, t.nodes[static_cast<size_t>(p)].label)) continue;
        MoserTree ext = t;
        ext.nodes.push_back({lbl, p, t.nodes[static_cast<size_t>(p)].depth + 1, 0});
        stack.push_back(std::move(ext));
      }
  }
  std::sort(out.begin(), out.end(), [](const MoserTree& a, const MoserTree& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.canonical() < b.canonical();
  });
  return out;
}

std::vector<MoserTree> enumerate_trees_by_log_search(const EventFamily& fam,
                                                     const EventSpec& root,
                                                     int max_nodes, int max_len,
                                                     const std::vector<EventSpec>& alphabet) {
  std::vector<MoserTree> out;
  std::set<std::string> seen;
  std::vector<EventSpec> log;
  std::function<void()> rec = [&]() {
    if (!log.empty()) {
      if (is_legal_log(fam, log)) {
        MoserTree t = build_moser_tree(fam, log);
        if (t.size() <= max_nodes && t.nodes[0].label.id == root.id &&
            seen.insert(t.canonical()).second)
          out.push_back(t);
      }
    }
    if (static_cast<int>(log.size()) >= max_len) return;
    for (const EventSpec& e : alphabet) {
      log.push_back(e);
      rec();
      log.pop_back();
    }
  };
  rec();
  return out;
}

Rat WeightSumCheck::slice(int m) const {
  Rat s = 0;
  for (size_t r = static_cast<size_t>(m); r < by_size.size(); ++r) s += by_size[r];
  return s;
}

Rat WeightSumCheck::slice_bound(const EventFamily& fam, const EventSpec& root,
                                int m) const {
  Rat zc = fam.z(root);
  return rat_pow(fam.alpha(), static_cast<uint64_t>(m)) * zc / (1 - zc);
}

WeightSumCheck weight_sum_check(const EventFamily& fam, const EventSpec& root,
                                int max_nodes) {
  WeightSumCheck out;
  out.truncated_sum = 0;
  out.by_size.assign(static_cast<size_t>(max_nodes) + 1, Rat(0));
  for (const MoserTree& t : enumerate_trees(fam, root, max_nodes)) {
    Rat w = t.weight(fam);
    out.truncated_sum += w;
    out.by_size[static_cast<size_t>(t.size())] += w;
  }
  Rat zc = fam.z(root);
  out.bound = zc / (1 - zc);
  out.sum_ok = out.truncated_sum <= out.bound;
  return out;
}

TCheckOutcome run_t_check(const EventFamily& fam, const MoserTree& tree,
                          const Window& window, CellSource& src, int64_t max_stages) {
  TCheckOutcome out;
  auto fam_ptr = std::shared_ptr<const EventFamily>(&fam, [](const EventFamily*) {});
  EngineRun run(fam_ptr, window, src);
  auto order = greedy_vertex_order(fam, tree);
  const size_t r = order.size();
  out.q_hat.assign(r, -1);
  out.bad_at_q_hat.assign(r, false);

  // threshold for A_{<<P}: events ending before every remaining rsp start
  std::vector<VarIndex> thr(r + 1, window.hi + 1);
  for (size_t i = r; i-- > 0;)
    thr[i] = std::min(thr[i + 1], tree.nodes[static_cast<size_t>(order[i])].label.rsp_lo);

  for (size_t i = 0; i < r; ++i) {
    for (;;) {
      if (run.stages() >= max_stages) {
        out.timed_out = true;  // q_hat(v_i) treated as infinite
        out.log = run.log();
        return out;
      }
      auto bad = run.least_bad(thr[i] - 1);
      if (!bad) break;
      run.resample(*bad);
    }
    const EventSpec& lbl = tree.nodes[static_cast<size_t>(order[i])].label;
    out.q_hat[i] = run.stages() + 1;
    out.bad_at_q_hat[i] = run.is_bad_now(lbl);
    run.resample(lbl);
  }
  out.log = run.log();
  out.passed = true;
  for (size_t i = 0; i < r; ++i)
    if (!out.bad_at_q_hat[i]) out.passed = false;
  return out;
}

bool coupling_test(std::shared_ptr<const EventFamily> fam, const MoserTree& tree,
                   const Window& window, uint64_t seed, int64_t max_stages) {
  SampleGrid grid_a(fam, seed);
  EngineRun run(fam, window, grid_a);
  std::string canon = tree.canonical();
  std::vector<EventSpec> log;
  bool generated = false;
  for (int64_t s = 0; s < max_stages; ++s) {
    auto bad = run.least_bad(window.hi);
    if (!bad) break;
    run.resample(*bad);
    log.push_back(*bad);
    if (build_moser_tree(*fam, log).canonical() == canon) {
      generated = true;
      break;
    }
  }
  if (!generated) return true;  // vacuous
  SampleGrid grid_b(fam, seed);
  TCheckOutcome t = run_t_check(*fam, tree, window, grid_b, max_stages);
  return t.passed;
}

}  // namespace lhlll
