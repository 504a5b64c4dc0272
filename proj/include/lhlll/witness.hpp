#pragma once

#include "lhlll/engine.hpp"

#include <string>

namespace lhlll {

struct MoserNode {
  EventSpec label;
  int parent = -1;    // index into nodes; -1 for the root
  int depth = 0;
  int64_t stamp = 0;  // log stage at which the node was inserted
};

struct MoserTree {
  std::vector<MoserNode> nodes;  // nodes[0] is the root
  int size() const { return static_cast<int>(nodes.size()); }
  bool empty() const { return nodes.empty(); }

  /// Shape + label canonical form (stamps ignored); equal strings iff the
  /// labeled trees are isomorphic as rooted trees.
  std::string canonical() const;
  uint64_t canonical_hash() const;

  /// Product of P* over all node labels.
  Rat weight(const EventFamily& fam) const;
};

/// Log legality: no consecutive pair with E_i >> E_{i+1}.
bool is_legal_log(const EventFamily& fam, const std::vector<EventSpec>& log);

/// Backward construction: walking the log from the last stage to the
/// first, an event joins the tree iff it is a (non-strict) neighbor of an
/// existing node label, attached below a deepest such node (ties: the
/// smallest stamp). stage_offset shifts the recorded stamps, so suffix
/// logs can carry their absolute stage numbers.
MoserTree build_moser_tree(const EventFamily& fam, const std::vector<EventSpec>& log,
                           int64_t stage_offset = 0);

/// Deterministic removal order: repeatedly take the priority-least label
/// among nodes of maximal depth within their label neighborhood.
std::vector<int> greedy_vertex_order(const EventFamily& fam, const MoserTree& tree);

struct TreeCheckReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Structural invariants of a tree built from a log: neighbor depths and
/// stamp/depth reversal, uniqueness over prefixes, suffix subtree
/// containment, stamp monotonicity along the greedy order, and the
/// "everything between stamps sits left of the remaining labels" rule.
TreeCheckReport verify_tree_invariants(const EventFamily& fam, const MoserTree& tree,
                                       const std::vector<EventSpec>& log);

/// All trees with <= max_nodes nodes and the given root label that are
/// generated by some legal log. Candidates are grown structurally and
/// validated by rebuilding from their greedy-order label sequence.
std::vector<MoserTree> enumerate_trees(const EventFamily& fam, const EventSpec& root,
                                       int max_nodes, int64_t guard = 2000000);

/// Reference enumeration for tests: builds trees from every legal log of
/// length <= max_len over the given label alphabet.
std::vector<MoserTree> enumerate_trees_by_log_search(const EventFamily& fam,
                                                     const EventSpec& root,
                                                     int max_nodes, int max_len,
                                                     const std::vector<EventSpec>& alphabet);

struct WeightSumCheck {
  Rat truncated_sum;          // sum of weights over enumerated trees
  Rat bound;                  // z(C) / (1 - z(C))
  std::vector<Rat> by_size;   // by_size[r] = weight sum over trees of r nodes
  bool sum_ok = false;
  /// weight of the >= m-node slice and its alpha^m bound
  Rat slice(int m) const;
  Rat slice_bound(const EventFamily& fam, const EventSpec& root, int m) const;
};

WeightSumCheck weight_sum_check(const EventFamily& fam, const EventSpec& root,
                                int max_nodes);

struct TCheckOutcome {
  bool passed = false;
  bool timed_out = false;
  ResampleLog log;
  std::vector<int64_t> q_hat;      // per greedy-order node, stage of its forced resample
  std::vector<bool> bad_at_q_hat;  // label bad right before that resample
};

/// The coupled cascade: for each remaining subtree, run the resample
/// process restricted to events left of every remaining label until all
/// are good, then force-resample the greedy-least label. Passing means
/// every forced label was bad when its turn came.
TCheckOutcome run_t_check(const EventFamily& fam, const MoserTree& tree,
                          const Window& window, CellSource& src,
                          int64_t max_stages = kDefaultMaxStages);

/// Runs the resample process and the T-check on the same cell source;
/// true unless some log prefix generates `tree` and the T-check fails.
bool coupling_test(std::shared_ptr<const EventFamily> fam, const MoserTree& tree,
                   const Window& window, uint64_t seed,
                   int64_t max_stages = kDefaultMaxStages);

}  // namespace lhlll
