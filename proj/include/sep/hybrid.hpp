#ifndef SEP_HYBRID_HPP
#define SEP_HYBRID_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sep/csv.hpp"
#include "sep/errors.hpp"
#include "sep/measures.hpp"

namespace sep {

/// State of the stateful hybrid measure.
///
/// `counter` counts consecutive fully-separable evaluations since the last
/// sub-1 SI; `ih` is the hypothesis margin captured when the counter last
/// went from 0 to 1 and is the denominator of subsequent hybrid values.
/// `epochs` counts captures since the state was fresh and never resets, so
/// records normalized against different references can be told apart.
///
/// Invariant: ih is engaged if and only if counter >= 1.
template <class Scalar>
struct HybridState {
  Index counter = 0;
  std::optional<Scalar> ih;
  Index epochs = 0;
};

/// One evaluation of the hybrid measure, mirroring the result-table layout:
/// below full separability hybrid = 100*si and hm_ratio = 0; at and beyond
/// it hybrid = 100*hm/ih. `epoch` is 0 for sub-1 rows and the capture-epoch
/// number for fully-separable rows. The measured hm is reported in both
/// branches for diagnostics.
template <class Scalar>
struct HybridRecord {
  double si;
  Scalar hm;
  double hm_ratio;
  double hybrid;
  Index epoch;
};

/// One (si_hits, n, hm) observation to be folded through the hybrid state.
template <class Scalar>
struct SeparabilitySample {
  Index si_hits;
  Index n;
  Scalar hm;
};

/// Advances the hybrid state with one observation.
///
/// Full separability is decided by the integer test si_hits == n. The first
/// fully-separable step after a reset captures ih = hm and reports
/// hm_ratio = 1, hybrid = 100 exactly; later fully-separable steps report
/// hm/ih. Any sub-1 step resets the counter and clears ih.
///
/// Errors: a fully-separable step against a captured ih of 0 (the ratio has
/// no meaning), and a negative hm on a fully-separable step (impossible for
/// consistent measures: when every nearest neighbor is a near-hit, every
/// margin is nonnegative). The state is untouched when an error is thrown.
template <class Scalar>
HybridRecord<Scalar> hybrid_step(HybridState<Scalar>& state, Index si_hits, Index n, Scalar hm) {
  if (n < 1) throw ConfigError("hybrid_step: n must be >= 1, got " + std::to_string(n));
  if (si_hits < 0 || si_hits > n)
    throw ConfigError("hybrid_step: si_hits " + std::to_string(si_hits) +
                      " outside [0, " + std::to_string(n) + "]");

  const double si = detail::fraction(si_hits, n);
  if (si_hits < n) {
    state.counter = 0;
    state.ih.reset();
    return {si, hm, 0.0, 100.0 * si, 0};
  }

  if (hm < Scalar(0))
    throw ComputeError("hybrid_step: negative hypothesis margin " +
                       csv::format_number(hm) + " with full separability is inconsistent");
  if (state.counter >= 1 && *state.ih == Scalar(0))
    throw ComputeError("hybrid_step: captured reference margin is 0; hybrid is undefined");

  state.counter += 1;
  if (state.counter == 1) {
    state.ih = hm;
    state.epochs += 1;
    return {si, hm, 1.0, 100.0, state.epochs};
  }
  const double ratio = static_cast<double>(hm) / static_cast<double>(*state.ih);
  return {si, hm, ratio, 100.0 * ratio, state.epochs};
}

template <class Scalar>
HybridRecord<Scalar> hybrid_step(HybridState<Scalar>& state, const SeparabilitySample<Scalar>& s) {
  return hybrid_step(state, s.si_hits, s.n, s.hm);
}

/// Folds hybrid_step over the samples from a fresh state, in order. Errors
/// from a step are rethrown with the offending position prepended.
template <class Scalar>
std::vector<HybridRecord<Scalar>> hybrid_sequence(std::span<const SeparabilitySample<Scalar>> samples) {
  HybridState<Scalar> state;
  std::vector<HybridRecord<Scalar>> records;
  records.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    try {
      records.push_back(hybrid_step(state, samples[k]));
    } catch (const ComputeError& e) {
      throw ComputeError("sample " + std::to_string(k) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("sample " + std::to_string(k) + ": " + e.what());
    }
  }
  return records;
}

template <class Scalar>
std::vector<HybridRecord<Scalar>> hybrid_sequence(const std::vector<SeparabilitySample<Scalar>>& samples) {
  return hybrid_sequence(std::span<const SeparabilitySample<Scalar>>(samples));
}

/// Table-style serialization: si,hm,hm_ratio,hybrid,epoch.
template <class Scalar>
void write_hybrid_csv(std::ostream& out, std::span<const HybridRecord<Scalar>> records) {
  out << "si,hm,hm_ratio,hybrid,epoch\n";
  for (const auto& r : records) {
    out << csv::format_number(r.si) << ',' << csv::format_number(r.hm) << ','
        << csv::format_number(r.hm_ratio) << ',' << csv::format_number(r.hybrid) << ','
        << r.epoch << '\n';
  }
}

}  // namespace sep

#endif  // SEP_HYBRID_HPP
