#ifndef SEP_SELECT_HPP
#define SEP_SELECT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sep/hybrid.hpp"

namespace sep {

/// What a subset is scored by: 100*si, or the stateful hybrid value.
enum class Criterion { si, hybrid };

struct SearchOptions {
  std::optional<Index> max_dim;      // default: up to all features
  bool shared_hybrid_state = false;  // thread ONE state through the search
};

/// Hard ceiling on exhaustive enumeration.
inline constexpr std::uint64_t kMaxEvaluations = std::uint64_t{1} << 20;

template <class Scalar>
struct SubsetEvaluation {
  FeatureSubset subset;
  double si;
  std::optional<Scalar> hm;      // engaged when the criterion computed it
  std::optional<double> hybrid;  // engaged for the hybrid criterion
  double score;
  bool hm_unavailable = false;  // hybrid criterion fell back to 100*si
  Index epoch = 0;
};

template <class Scalar>
struct SelectionResult {
  FeatureSubset best_subset;
  double best_score;
  std::vector<SubsetEvaluation<Scalar>> trace;
};

/// Scores one subset. criterion si: 100*si, the hybrid state is not
/// consulted. criterion hybrid: SI and HM are fed through `state`; when the
/// projection has no usable hypothesis margin (a singleton class), the
/// evaluation degrades to 100*si, flags hm_unavailable, and leaves the state
/// untouched — below full separability the hybrid never consults HM anyway.
template <class Scalar>
SubsetEvaluation<Scalar> evaluate_subset(const Dataset<Scalar>& ds, const FeatureSubset& subset,
                                         HybridState<Scalar>& state, Criterion criterion) {
  const auto pds = project(ds, subset);
  const KdTree<Scalar> tree(pds);
  const SiResult si = separability_index(tree);

  SubsetEvaluation<Scalar> eval{subset, si.value, std::nullopt, std::nullopt,
                                100.0 * si.value,  false,        0};
  if (criterion == Criterion::si) return eval;

  std::optional<HmResult<Scalar>> hm;
  try {
    hm = hypothesis_margin(tree);
  } catch (const ComputeError&) {
    eval.hm_unavailable = true;
    return eval;
  }
  const auto rec = hybrid_step(state, si.hits, si.n, hm->total);
  eval.hm = hm->total;
  eval.hybrid = rec.hybrid;
  eval.score = rec.hybrid;
  eval.epoch = rec.epoch;
  return eval;
}

namespace detail {

/// Best trace entry: highest score; ties go to the smaller subset, then to
/// the lexicographically smallest index list.
template <class Scalar>
const SubsetEvaluation<Scalar>& pick_best(const std::vector<SubsetEvaluation<Scalar>>& trace) {
  const SubsetEvaluation<Scalar>* best = &trace.front();
  for (const auto& e : trace) {
    if (e.score > best->score) {
      best = &e;
    } else if (e.score == best->score) {
      const auto& a = e.subset.indices();
      const auto& b = best->subset.indices();
      if (a.size() < b.size() ||
          (a.size() == b.size() && std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())))
        best = &e;
    }
  }
  return *best;
}

/// Number of nonempty subsets of size <= max_dim, saturating at cap+1.
inline std::uint64_t count_subsets(Index d, Index max_dim, std::uint64_t cap) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(d, 0)
  for (Index k = 1; k <= max_dim; ++k) {
    // c = C(d, k) built incrementally; saturate instead of overflowing
    if (c > cap) return cap + 1;
    c = c * static_cast<std::uint64_t>(d - k + 1);
    c /= static_cast<std::uint64_t>(k);
    total += c;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace detail

/// Evaluates every nonempty subset of size <= max_dim, size ascending then
/// lexicographic. Refuses to start past the evaluation-count guard. With the
/// default options every subset is scored against a fresh hybrid state; with
/// shared_hybrid_state one state threads through in enumeration order, so
/// later fully-separating subsets score relative to the first one's margin
/// (order-dependent by construction).
template <class Scalar>
SelectionResult<Scalar> exhaustive_search(const Dataset<Scalar>& ds, Criterion criterion,
                                          const SearchOptions& options = {}) {
  const Index d = ds.cols();
  const Index max_dim = std::min(options.max_dim.value_or(d), d);
  if (max_dim < 1) throw ConfigError("max_dim must be >= 1, got " + std::to_string(max_dim));
  const auto count = detail::count_subsets(d, max_dim, kMaxEvaluations);
  if (count > kMaxEvaluations)
    throw ComputeError("exhaustive search over " + std::to_string(d) + " features (max_dim " +
                       std::to_string(max_dim) + ") would exceed the guard of " +
                       std::to_string(kMaxEvaluations) + " evaluations; set --max-dim");

  HybridState<Scalar> shared;
  std::vector<SubsetEvaluation<Scalar>> trace;
  trace.reserve(static_cast<std::size_t>(count));
  std::vector<Index> comb;
  for (Index size = 1; size <= max_dim; ++size) {
    comb.resize(static_cast<std::size_t>(size));
    for (Index i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
      HybridState<Scalar> fresh;
      trace.push_back(evaluate_subset(ds, FeatureSubset(comb),
                                      options.shared_hybrid_state ? shared : fresh, criterion));
      // advance to the next combination in lexicographic order
      Index i = size - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == d - size + i) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < size; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  const auto& best = detail::pick_best(trace);
  return {best.subset, best.score, std::move(trace)};
}

/// Standard forward wrapper: starting empty, each round adds the feature
/// whose addition maximizes the criterion, stopping at max_dim or when no
/// addition strictly improves the score. Ties inside a round go to the
/// lowest feature index.
template <class Scalar>
SelectionResult<Scalar> greedy_forward_search(const Dataset<Scalar>& ds, Criterion criterion,
                                              const SearchOptions& options = {}) {
  const Index d = ds.cols();
  const Index max_dim = options.max_dim.value_or(d);
  if (max_dim < 1 || max_dim > d)
    throw ConfigError("max_dim must be in [1, " + std::to_string(d) + "], got " +
                      std::to_string(max_dim));

  HybridState<Scalar> shared;
  std::vector<SubsetEvaluation<Scalar>> trace;
  std::vector<Index> current;
  double current_score = -std::numeric_limits<double>::infinity();

  while (static_cast<Index>(current.size()) < max_dim) {
    double round_best = current_score;
    Index round_feature = -1;
    for (Index f = 0; f < d; ++f) {
      if (std::find(current.begin(), current.end(), f) != current.end()) continue;
      std::vector<Index> candidate = current;
      candidate.insert(std::upper_bound(candidate.begin(), candidate.end(), f), f);
      HybridState<Scalar> fresh;
      trace.push_back(evaluate_subset(ds, FeatureSubset(std::move(candidate)),
                                      options.shared_hybrid_state ? shared : fresh, criterion));
      if (trace.back().score > round_best) {
        round_best = trace.back().score;
        round_feature = f;
      }
    }
    if (round_feature < 0) break;  // nothing strictly improves
    current.insert(std::upper_bound(current.begin(), current.end(), round_feature), round_feature);
    current_score = round_best;
  }
  const auto& best = detail::pick_best(trace);
  return {best.subset, best.score, std::move(trace)};
}

/// Trace serialization: one row per evaluation plus a trailing summary
/// comment. Values a criterion did not compute serialize as "nan".
template <class Scalar>
void write_selection_csv(std::ostream& out, const SelectionResult<Scalar>& result) {
  out << "subset,si,hm,hybrid,score\n";
  for (const auto& e : result.trace) {
    out << e.subset.to_string() << ',' << csv::format_number(e.si) << ','
        << (e.hm ? csv::format_number(*e.hm) : std::string("nan")) << ','
        << (e.hybrid ? csv::format_number(*e.hybrid) : std::string("nan")) << ','
        << csv::format_number(e.score) << '\n';
  }
  out << "# best_subset=" << result.best_subset.to_string()
      << " best_score=" << csv::format_number(result.best_score) << '\n';
}

}  // namespace sep

#endif  // SEP_SELECT_HPP
