#ifndef SEP_NEIGHBORS_HPP
#define SEP_NEIGHBORS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sep/dataset.hpp"
#include "sep/errors.hpp"

namespace sep {

/// A nearest-neighbor answer: the winning instance and the Euclidean
/// distance to it. The query instance itself is never eligible.
template <class Scalar>
struct NeighborResult {
  Index index;
  Scalar distance;
  bool operator==(const NeighborResult&) const = default;
};

/// Which instances are eligible as candidates for a query:
///  - self_only:        everything except the query itself
///  - same_class_only:  instances carrying the given label (minus the query)
///  - other_class_only: instances carrying any different label
///
/// The kind-only overloads of the query functions fill in the query
/// instance's own label, which is the configuration every measure uses.
struct ExclusionRule {
  enum class Kind { self_only, same_class_only, other_class_only };

  Kind kind = Kind::self_only;
  std::string label;

  static ExclusionRule self_only() { return {Kind::self_only, {}}; }
  static ExclusionRule same_class_only(std::string label) {
    return {Kind::same_class_only, std::move(label)};
  }
  static ExclusionRule other_class_only(std::string label) {
    return {Kind::other_class_only, std::move(label)};
  }

  std::string describe() const {
    switch (kind) {
      case Kind::self_only:
        return "self-only";
      case Kind::same_class_only:
        return "same-class-only(" + label + ")";
      default:
        return "other-class-only(" + label + ")";
    }
  }
};

/// Squared Euclidean distance between two instances. Every search path in
/// this module funnels through this one kernel, so the accelerated index and
/// the brute-force oracle see bit-identical values and their results can be
/// compared exactly.
template <class Scalar>
Scalar squared_distance(const Dataset<Scalar>& ds, Index i, Index j) {
  return (ds.features().row(i) - ds.features().row(j)).squaredNorm();
}

namespace detail {

/// Running best candidate. Lower squared distance wins; equal distances go
/// to the lower instance index.
template <class Scalar>
struct BestCandidate {
  Index index = -1;
  Scalar squared = std::numeric_limits<Scalar>::infinity();

  void offer(Index idx, Scalar sq) {
    if (index < 0 || sq < squared || (sq == squared && idx < index)) {
      squared = sq;
      index = idx;
    }
  }
};

/// An ExclusionRule resolved against a dataset: label string turned into a
/// class code so the hot path compares integers.
struct ResolvedRule {
  ExclusionRule::Kind kind;
  std::int32_t code;
  Index query;

  template <class Scalar>
  bool admits(const Dataset<Scalar>& ds, Index j) const {
    if (j == query) return false;
    switch (kind) {
      case ExclusionRule::Kind::self_only:
        return true;
      case ExclusionRule::Kind::same_class_only:
        return ds.label_code(j) == code;
      default:
        return ds.label_code(j) != code;
    }
  }
};

template <class Scalar>
ResolvedRule resolve(const Dataset<Scalar>& ds, Index query, const ExclusionRule& rule) {
  if (query < 0 || query >= ds.rows())
    throw ConfigError("query index " + std::to_string(query) + " out of range [0, " +
                      std::to_string(ds.rows()) + ")");
  std::int32_t code = 0;
  if (rule.kind != ExclusionRule::Kind::self_only) code = ds.code_of(rule.label);
  return {rule.kind, code, query};
}

/// Kind-only form: the label is the query instance's own.
template <class Scalar>
ResolvedRule resolve(const Dataset<Scalar>& ds, Index query, ExclusionRule::Kind kind) {
  if (query < 0 || query >= ds.rows())
    throw ConfigError("query index " + std::to_string(query) + " out of range [0, " +
                      std::to_string(ds.rows()) + ")");
  return {kind, ds.label_code(query), query};
}

template <class Scalar>
[[noreturn]] void throw_no_candidates(const Dataset<Scalar>& ds, const ResolvedRule& rule) {
  ExclusionRule described{rule.kind, {}};
  if (rule.kind != ExclusionRule::Kind::self_only && rule.code >= 0)
    described.label = ds.class_names()[static_cast<std::size_t>(rule.code)];
  throw ComputeError("no candidate neighbors for instance " + std::to_string(rule.query) +
                     " under rule " + described.describe());
}

template <class Scalar>
NeighborResult<Scalar> scan_all(const Dataset<Scalar>& ds, const ResolvedRule& rule) {
  BestCandidate<Scalar> best;
  for (Index j = 0; j < ds.rows(); ++j)
    if (rule.admits(ds, j)) best.offer(j, squared_distance(ds, rule.query, j));
  if (best.index < 0) throw_no_candidates(ds, rule);
  return {best.index, std::sqrt(best.squared)};
}

}  // namespace detail

/// Linear-scan nearest neighbor: the reference implementation every
/// accelerated path must agree with exactly (index and distance alike).
template <class Scalar>
NeighborResult<Scalar> nearest_bruteforce(const Dataset<Scalar>& ds, Index query,
                                          const ExclusionRule& rule) {
  return detail::scan_all(ds, detail::resolve(ds, query, rule));
}

template <class Scalar>
NeighborResult<Scalar> nearest_bruteforce(const Dataset<Scalar>& ds, Index query,
                                          ExclusionRule::Kind kind) {
  return detail::scan_all(ds, detail::resolve(ds, query, kind));
}

/// Exact nearest-neighbor index over one dataset: a kd-tree with median
/// splits on the widest dimension. Queries return exactly what a linear scan
/// returns, including the lowest-index tie-break; speed is the only liberty
/// taken. Holds a reference to the dataset — keep it alive while querying.
/// Queries are const and safe to run concurrently once the tree is built.
template <class Scalar>
class KdTree {
 public:
  explicit KdTree(const Dataset<Scalar>& ds) : ds_(&ds), order_(static_cast<std::size_t>(ds.rows())) {
    std::iota(order_.begin(), order_.end(), Index{0});
    nodes_.reserve(order_.size() / kLeafSize * 2 + 2);
    root_ = build(0, ds.rows());
  }
  explicit KdTree(Dataset<Scalar>&&) = delete;  // the index does not own the data

  const Dataset<Scalar>& dataset() const { return *ds_; }

  NeighborResult<Scalar> nearest(Index query, const ExclusionRule& rule) const {
    return run(detail::resolve(*ds_, query, rule));
  }

  /// Label-relative form: same_class_only / other_class_only use the query
  /// instance's own label.
  NeighborResult<Scalar> nearest(Index query, ExclusionRule::Kind kind) const {
    return run(detail::resolve(*ds_, query, kind));
  }

 private:
  struct Node {
    Scalar split_value{};
    std::int32_t split_dim = -1;  // -1: leaf
    Index left = -1, right = -1;  // children when internal
    Index begin = 0, end = 0;     // order_ range when leaf
  };

  static constexpr Index kLeafSize = 12;

  Index build(Index begin, Index end) {
    const Index id = static_cast<Index>(nodes_.size());
    nodes_.emplace_back();
    if (end - begin <= kLeafSize) {
      nodes_[static_cast<std::size_t>(id)].begin = begin;
      nodes_[static_cast<std::size_t>(id)].end = end;
      return id;
    }
    const auto& f = ds_->features();
    // split on the dimension with the widest extent over this range
    std::int32_t dim = 0;
    Scalar best_extent = -1;
    for (Index d = 0; d < ds_->cols(); ++d) {
      Scalar lo = f(order_[static_cast<std::size_t>(begin)], d);
      Scalar hi = lo;
      for (Index k = begin + 1; k < end; ++k) {
        Scalar v = f(order_[static_cast<std::size_t>(k)], d);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > best_extent) {
        best_extent = hi - lo;
        dim = static_cast<std::int32_t>(d);
      }
    }
    const Index mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](Index a, Index b) {
                       Scalar va = f(a, dim), vb = f(b, dim);
                       return va < vb || (va == vb && a < b);
                     });
    Node node;
    node.split_dim = dim;
    node.split_value = f(order_[static_cast<std::size_t>(mid)], dim);
    node.left = build(begin, mid);
    node.right = build(mid, end);
    nodes_[static_cast<std::size_t>(id)] = node;
    return id;
  }

  NeighborResult<Scalar> run(const detail::ResolvedRule& rule) const {
    detail::BestCandidate<Scalar> best;
    search(root_, rule, best);
    if (best.index < 0) detail::throw_no_candidates(*ds_, rule);
    return {best.index, std::sqrt(best.squared)};
  }

  void search(Index node_id, const detail::ResolvedRule& rule,
              detail::BestCandidate<Scalar>& best) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.split_dim < 0) {
      for (Index k = node.begin; k < node.end; ++k) {
        const Index idx = order_[static_cast<std::size_t>(k)];
        if (rule.admits(*ds_, idx)) best.offer(idx, squared_distance(*ds_, rule.query, idx));
      }
      return;
    }
    const Scalar diff = ds_->features()(rule.query, node.split_dim) - node.split_value;
    const Index near = diff < 0 ? node.left : node.right;
    const Index far = diff < 0 ? node.right : node.left;
    search(near, rule, best);
    // the far half-space may still hold an equally distant, lower-index
    // candidate, so prune on strict inequality only
    if (diff * diff <= best.squared) search(far, rule, best);
  }

  const Dataset<Scalar>* ds_;
  std::vector<Index> order_;
  std::vector<Node> nodes_;
  Index root_ = 0;
};

/// Single-query convenience that builds a throwaway index. Batch callers
/// should construct a KdTree once and query it.
template <class Scalar>
NeighborResult<Scalar> nearest(const Dataset<Scalar>& ds, Index query, const ExclusionRule& rule) {
  return KdTree<Scalar>(ds).nearest(query, rule);
}

template <class Scalar>
NeighborResult<Scalar> nearest(const Dataset<Scalar>& ds, Index query, ExclusionRule::Kind kind) {
  return KdTree<Scalar>(ds).nearest(query, kind);
}

}  // namespace sep

#endif  // SEP_NEIGHBORS_HPP
