#ifndef SEP_SYNTH_HPP
#define SEP_SYNTH_HPP

#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sep/hybrid.hpp"

namespace sep {

/// Configuration of a center-distance sweep over two isotropic Gaussian
/// clusters. Distances run start_distance + k*step for k in [0, n_steps).
template <class Scalar>
struct SweepConfig {
  Index n_per_class = 87;
  Index dims = 2;
  Scalar sigma = 1;
  Scalar start_distance = 0;
  Scalar step = Scalar(0.5);
  Index n_steps = 30;
  std::uint64_t seed = 1;

  void validate() const {
    if (n_per_class < 2)
      throw ConfigError("n_per_class must be >= 2, got " + std::to_string(n_per_class));
    if (dims < 1) throw ConfigError("dims must be >= 1, got " + std::to_string(dims));
    if (!(sigma > Scalar(0))) throw ConfigError("sigma must be > 0, got " + csv::format_number(sigma));
    if (!(step > Scalar(0))) throw ConfigError("step must be > 0, got " + csv::format_number(step));
    if (n_steps < 1) throw ConfigError("n_steps must be >= 1, got " + std::to_string(n_steps));
    if (!(start_distance >= Scalar(0)))
      throw ConfigError("start_distance must be >= 0, got " + csv::format_number(start_distance));
  }
};

/// One sweep row: the center distance plus the hybrid record fields.
template <class Scalar>
struct SweepRecord {
  Scalar distance;
  double si;
  Scalar hm;
  double hm_ratio;
  double hybrid;
  Index epoch;
};

namespace detail {

/// Deterministic standard-normal stream: mt19937_64 + Box-Muller (cosine
/// branch). Two engine draws per variate, u1 in (0,1], u2 in [0,1). The same
/// seed reproduces the same stream on every run.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

/// Two isotropic Gaussian clusters: class "A" around the origin, class "B"
/// around (center_distance, 0, ..., 0), both with per-axis deviation sigma.
/// Rows are the n_per_class A instances then the n_per_class B instances.
///
/// Sampling order is fixed (A rows then B rows, each row across dimensions)
/// and the shift is added to B's first coordinate after sampling, so for a
/// given seed the B cloud at any distance is bitwise the same point set
/// translated along the first axis.
template <class Scalar>
Dataset<Scalar> gaussian_clusters(Index n_per_class, Index dims, Scalar sigma,
                                  Scalar center_distance, std::uint64_t seed) {
  if (n_per_class < 2)
    throw ConfigError("n_per_class must be >= 2, got " + std::to_string(n_per_class));
  if (dims < 1) throw ConfigError("dims must be >= 1, got " + std::to_string(dims));
  if (!(sigma > Scalar(0)))
    throw ConfigError("sigma must be > 0, got " + csv::format_number(sigma));
  if (!(center_distance >= Scalar(0)))
    throw ConfigError("center_distance must be >= 0, got " + csv::format_number(center_distance));

  detail::NormalSampler normal(seed);
  const Index n = 2 * n_per_class;
  typename Dataset<Scalar>::Matrix m(n, dims);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < dims; ++j)
      m(i, j) = static_cast<Scalar>(static_cast<double>(sigma) * normal());
  m.col(0).tail(n_per_class).array() += center_distance;

  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i < n_per_class ? "A" : "B";
  return Dataset<Scalar>(std::move(m), std::move(labels));
}

/// The center-distance experiment: builds the translated dataset at each
/// distance, measures SI and HM, and folds them through one shared hybrid
/// state in distance order.
template <class Scalar>
std::vector<SweepRecord<Scalar>> separation_sweep(const SweepConfig<Scalar>& cfg) {
  cfg.validate();
  std::vector<SweepRecord<Scalar>> records;
  records.reserve(static_cast<std::size_t>(cfg.n_steps));
  HybridState<Scalar> state;
  for (Index k = 0; k < cfg.n_steps; ++k) {
    const Scalar distance = cfg.start_distance + static_cast<Scalar>(k) * cfg.step;
    const auto ds = gaussian_clusters<Scalar>(cfg.n_per_class, cfg.dims, cfg.sigma, distance, cfg.seed);
    const auto rep = measure(ds);
    const auto rec = hybrid_step(state, rep.si_hits, rep.n, rep.hm);
    records.push_back({distance, rec.si, rec.hm, rec.hm_ratio, rec.hybrid, rec.epoch});
  }
  return records;
}

/// Plot-ready serialization: distance,si,hm,hm_ratio,hybrid,epoch.
template <class Scalar>
void write_sweep_csv(std::ostream& out, std::span<const SweepRecord<Scalar>> records) {
  out << "distance,si,hm,hm_ratio,hybrid,epoch\n";
  for (const auto& r : records) {
    out << csv::format_number(r.distance) << ',' << csv::format_number(r.si) << ','
        << csv::format_number(r.hm) << ',' << csv::format_number(r.hm_ratio) << ','
        << csv::format_number(r.hybrid) << ',' << r.epoch << '\n';
  }
}

}  // namespace sep

#endif  // SEP_SYNTH_HPP
