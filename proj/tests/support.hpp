#ifndef SEP_TESTS_SUPPORT_HPP
#define SEP_TESTS_SUPPORT_HPP

// Shared helpers for the test suites: randomized dataset construction,
// reference computations that bypass the library's search paths entirely
// (plain double loops over the feature matrix), and a literal transcription
// of the stateful hybrid update used as an oracle.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sep/dataset.hpp"

namespace testsupport {

using RNG = std::mt19937_64;
using sep::Index;

inline sep::Dataset<double> make_dataset(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::string>& labels) {
  sep::Dataset<double>::Matrix m(static_cast<Index>(rows.size()),
                                 static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return sep::Dataset<double>(std::move(m), labels);
}

/// 1-D dataset from (value, label) pairs.
inline sep::Dataset<double> make_1d(const std::vector<std::pair<double, std::string>>& points) {
  sep::Dataset<double>::Matrix m(static_cast<Index>(points.size()), 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    m(static_cast<Index>(i), 0) = points[i].first;
    labels.push_back(points[i].second);
  }
  return sep::Dataset<double>(std::move(m), std::move(labels));
}

/// Random labeled dataset: 2-4 classes, every class guaranteed at least two
/// members, Gaussian features with a per-class center shift. With some
/// probability a row is duplicated onto another so exact distance ties (and
/// the lowest-index tie-break) get exercised.
inline sep::Dataset<double> random_dataset(RNG& rng, Index n_max = 60, Index d_max = 6,
                                           bool allow_duplicates = true) {
  std::uniform_int_distribution<Index> n_dist(8, n_max), d_dist(1, d_max), c_dist(2, 4);
  const Index n = n_dist(rng);
  const Index d = d_dist(rng);
  const Index classes = std::min<Index>(c_dist(rng), n / 2);

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-3.0, 3.0);
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(classes));
  for (auto& c : centers) {
    c.resize(static_cast<std::size_t>(d));
    for (auto& v : c) v = shift(rng);
  }

  // two guaranteed members per class, remainder assigned at random
  std::vector<int> assignment;
  for (Index c = 0; c < classes; ++c) {
    assignment.push_back(static_cast<int>(c));
    assignment.push_back(static_cast<int>(c));
  }
  std::uniform_int_distribution<int> any_class(0, static_cast<int>(classes) - 1);
  while (static_cast<Index>(assignment.size()) < n) assignment.push_back(any_class(rng));
  std::shuffle(assignment.begin(), assignment.end(), rng);

  sep::Dataset<double>::Matrix m(n, d);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const int c = assignment[static_cast<std::size_t>(i)];
    labels[static_cast<std::size_t>(i)] = std::string(1, static_cast<char>('A' + c));
    for (Index j = 0; j < d; ++j)
      m(i, j) = centers[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] + normal(rng);
  }
  if (allow_duplicates) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < 0.4) {
      // duplicate a row onto another row of the same class
      std::uniform_int_distribution<Index> pick(0, n - 1);
      for (int tries = 0; tries < 20; ++tries) {
        const Index a = pick(rng), b = pick(rng);
        if (a != b && labels[static_cast<std::size_t>(a)] == labels[static_cast<std::size_t>(b)]) {
          m.row(b) = m.row(a);
          break;
        }
      }
    }
  }
  return sep::Dataset<double>(std::move(m), std::move(labels));
}

// ---- reference computations (raw loops, no sep::neighbors involvement) ----

inline double ref_sqdist(const sep::Dataset<double>& ds, Index i, Index j) {
  double total = 0;
  for (Index k = 0; k < ds.cols(); ++k) {
    const double diff = ds.features()(i, k) - ds.features()(j, k);
    total += diff * diff;
  }
  return total;
}

/// Lowest-index nearest candidate among those the predicate admits; -1 when
/// none exists.
inline Index ref_nearest(const sep::Dataset<double>& ds, Index query,
                         const std::function<bool(Index)>& admits) {
  Index best = -1;
  double best_sq = 0;
  for (Index j = 0; j < ds.rows(); ++j) {
    if (j == query || !admits(j)) continue;
    const double sq = ref_sqdist(ds, query, j);
    if (best < 0 || sq < best_sq || (sq == best_sq && j < best)) {
      best = j;
      best_sq = sq;
    }
  }
  return best;
}

inline Index ref_nearest_any(const sep::Dataset<double>& ds, Index query) {
  return ref_nearest(ds, query, [](Index) { return true; });
}

inline Index ref_near_hit(const sep::Dataset<double>& ds, Index query) {
  return ref_nearest(ds, query, [&](Index j) { return ds.same_label(query, j); });
}

inline Index ref_near_miss(const sep::Dataset<double>& ds, Index query) {
  return ref_nearest(ds, query, [&](Index j) { return !ds.same_label(query, j); });
}

inline Index ref_si_hits(const sep::Dataset<double>& ds) {
  Index hits = 0;
  for (Index i = 0; i < ds.rows(); ++i)
    if (ds.same_label(i, ref_nearest_any(ds, i))) ++hits;
  return hits;
}

inline std::vector<double> ref_margins(const sep::Dataset<double>& ds) {
  std::vector<double> margins(static_cast<std::size_t>(ds.rows()));
  for (Index i = 0; i < ds.rows(); ++i) {
    const double hit = std::sqrt(ref_sqdist(ds, i, ref_near_hit(ds, i)));
    const double miss = std::sqrt(ref_sqdist(ds, i, ref_near_miss(ds, i)));
    margins[static_cast<std::size_t>(i)] = miss - hit;
  }
  return margins;
}

/// Literal transcription of the stateful hybrid update rule, kept
/// independent of sep::hybrid_step. Callers must not feed hm = 0 at a first
/// fully-separable step (the transcription would divide 0/0 where the
/// library pins the ratio to 1).
struct PseudocodeOracle {
  double ih = 0;
  long counter = 0;

  struct Out {
    double hybrid;
    double hm_ratio;
  };

  Out step(double si, double hm) {
    if (si < 1) {
      counter = 0;
      return {100.0 * si, 0.0};
    }
    counter += 1;
    if (counter == 1) ih = hm;
    const double ratio = hm / ih;
    return {100.0 * ratio, ratio};
  }
};

/// Three features: column `informative` linearly separates the two classes
/// (B shifted by +8), the others are standard normal noise for everyone.
inline sep::Dataset<double> informative_noise_dataset(Index n_per_class, std::uint64_t seed,
                                                      Index informative = 1, Index d = 3) {
  RNG rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index n = 2 * n_per_class;
  sep::Dataset<double>::Matrix m(n, d);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const bool is_b = i >= n_per_class;
    labels[static_cast<std::size_t>(i)] = is_b ? "B" : "A";
    for (Index j = 0; j < d; ++j) {
      m(i, j) = normal(rng);
      if (j == informative && is_b) m(i, j) += 8.0;
    }
  }
  return sep::Dataset<double>(std::move(m), std::move(labels));
}

/// Unique scratch directory for a test suite; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    dir_ = base / ("sep_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }

 private:
  std::filesystem::path dir_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace testsupport

#endif  // SEP_TESTS_SUPPORT_HPP
