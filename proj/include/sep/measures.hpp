#ifndef SEP_MEASURES_HPP
#define SEP_MEASURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "sep/neighbors.hpp"

namespace sep {

/// Reporting convention for the hypothesis margin. The default is the plain
/// sum of per-instance margins. `mean` divides the total by N; `half` halves
/// each per-instance margin (the factor some margin definitions carry).
/// Ratios taken downstream are unaffected as long as one convention is used
/// consistently across a sequence.
struct HmConvention {
  bool mean = false;
  bool half = false;
};

/// Separability index as an exact count plus the derived fraction.
/// "Fully separable" downstream always means hits == n, never a floating
/// comparison against 1.
struct SiResult {
  Index hits;
  Index n;
  double value;  // hits / n
};

template <class Scalar>
struct HmResult {
  Scalar total;                 // sum of margins (or mean, per convention)
  std::vector<Scalar> margins;  // per instance: d_miss - d_hit
};

/// SI and HM of one dataset, computed off a single spatial index.
template <class Scalar>
struct MeasureReport {
  Index si_hits;
  Index n;
  double si;
  Scalar hm;
  std::vector<Scalar> margins;
};

namespace detail {

inline double fraction(Index hits, Index n) {
  return static_cast<double>(hits) / static_cast<double>(n);
}

template <class Scalar>
Index count_si_hits(const KdTree<Scalar>& tree) {
  const auto& ds = tree.dataset();
  Index hits = 0;
  for (Index i = 0; i < ds.rows(); ++i) {
    const auto nn = tree.nearest(i, ExclusionRule::Kind::self_only);
    if (ds.same_label(i, nn.index)) ++hits;
  }
  return hits;
}

/// Margins need every class to have a near-hit and a near-miss: at least two
/// classes, none of them singletons.
template <class Scalar>
void require_margin_preconditions(const Dataset<Scalar>& ds) {
  if (ds.num_classes() < 2)
    throw ComputeError("hypothesis margin needs at least 2 classes, dataset has " +
                       std::to_string(ds.num_classes()));
  for (std::size_t c = 0; c < ds.class_sizes().size(); ++c)
    if (ds.class_sizes()[c] < 2)
      throw ComputeError("class '" + ds.class_names()[c] +
                         "' has a single instance; near-hit is undefined");
}

template <class Scalar>
HmResult<Scalar> margins_impl(const KdTree<Scalar>& tree, const HmConvention& conv) {
  const auto& ds = tree.dataset();
  require_margin_preconditions(ds);
  std::vector<Scalar> margins(static_cast<std::size_t>(ds.rows()));
  for (Index i = 0; i < ds.rows(); ++i) {
    const auto hit = tree.nearest(i, ExclusionRule::Kind::same_class_only);
    const auto miss = tree.nearest(i, ExclusionRule::Kind::other_class_only);
    Scalar m = miss.distance - hit.distance;
    if (conv.half) m *= Scalar(0.5);
    margins[static_cast<std::size_t>(i)] = m;
  }
  // fixed-order reduction: results are run-to-run identical
  Scalar total = 0;
  for (Scalar m : margins) total += m;
  if (conv.mean) total /= static_cast<Scalar>(ds.rows());
  return {total, std::move(margins)};
}

}  // namespace detail

/// Fraction of instances whose nearest neighbor (self excluded) carries the
/// same label. A single-class dataset scores 1 by construction.
template <class Scalar>
SiResult separability_index(const KdTree<Scalar>& tree) {
  const Index hits = detail::count_si_hits(tree);
  const Index n = tree.dataset().rows();
  return {hits, n, detail::fraction(hits, n)};
}

template <class Scalar>
SiResult separability_index(const Dataset<Scalar>& ds) {
  return separability_index(KdTree<Scalar>(ds));
}

/// Nearest same-class neighbor of instance i, excluding i itself.
template <class Scalar>
NeighborResult<Scalar> near_hit(const KdTree<Scalar>& tree, Index i) {
  return tree.nearest(i, ExclusionRule::Kind::same_class_only);
}

template <class Scalar>
NeighborResult<Scalar> near_hit(const Dataset<Scalar>& ds, Index i) {
  return near_hit(KdTree<Scalar>(ds), i);
}

/// Nearest neighbor of instance i among all other classes.
template <class Scalar>
NeighborResult<Scalar> near_miss(const KdTree<Scalar>& tree, Index i) {
  return tree.nearest(i, ExclusionRule::Kind::other_class_only);
}

template <class Scalar>
NeighborResult<Scalar> near_miss(const Dataset<Scalar>& ds, Index i) {
  return near_miss(KdTree<Scalar>(ds), i);
}

/// Per-instance margins d_miss - d_hit and their fixed-order total. Margins
/// may be negative where classes interleave.
template <class Scalar>
HmResult<Scalar> hypothesis_margin(const KdTree<Scalar>& tree, const HmConvention& conv = {}) {
  return detail::margins_impl(tree, conv);
}

template <class Scalar>
HmResult<Scalar> hypothesis_margin(const Dataset<Scalar>& ds, const HmConvention& conv = {}) {
  return detail::margins_impl(KdTree<Scalar>(ds), conv);
}

/// SI and HM in one pass over a shared index.
template <class Scalar>
MeasureReport<Scalar> measure(const Dataset<Scalar>& ds, const HmConvention& conv = {}) {
  const KdTree<Scalar> tree(ds);
  const Index hits = detail::count_si_hits(tree);
  auto hm = detail::margins_impl(tree, conv);
  return {hits, ds.rows(), detail::fraction(hits, ds.rows()), hm.total, std::move(hm.margins)};
}

}  // namespace sep

#endif  // SEP_MEASURES_HPP
