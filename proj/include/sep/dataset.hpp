#ifndef SEP_DATASET_HPP
#define SEP_DATASET_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sep/csv.hpp"
#include "sep/errors.hpp"

namespace sep {

using Index = Eigen::Index;

/// Labeled numeric data: an N x d matrix of finite feature values plus one
/// opaque class label per row. Labels are compared only for equality; no
/// numeric meaning is attached to them. Immutable after construction, so it
/// can be read from any number of threads.
///
/// Construction enforces the invariants every measure relies on: N >= 2,
/// d >= 1, one label per row, all values finite.
template <class Scalar>
class Dataset {
  static_assert(std::is_floating_point_v<Scalar>,
                "Dataset is defined over real-valued features");

 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Dataset(Matrix features, std::vector<std::string> labels)
      : features_(std::move(features)), labels_(std::move(labels)) {
    if (features_.rows() < 2)
      throw DataError("dataset needs at least 2 instances, got " +
                      std::to_string(features_.rows()));
    if (features_.cols() < 1) throw DataError("dataset needs at least 1 feature column");
    if (static_cast<Index>(labels_.size()) != features_.rows())
      throw DataError("label count (" + std::to_string(labels_.size()) +
                      ") does not match instance count (" + std::to_string(features_.rows()) +
                      ")");
    if (!features_.allFinite()) {
      for (Index i = 0; i < features_.rows(); ++i)
        for (Index j = 0; j < features_.cols(); ++j)
          if (!std::isfinite(features_(i, j)))
            throw DataError("non-finite feature value at instance " + std::to_string(i) +
                            ", column " + std::to_string(j));
    }
    index_labels();
  }

  Index rows() const { return features_.rows(); }
  Index cols() const { return features_.cols(); }

  const Matrix& features() const { return features_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }

  /// Dense class id of instance i (ids follow first appearance order).
  std::int32_t label_code(Index i) const { return codes_[static_cast<std::size_t>(i)]; }

  Index num_classes() const { return static_cast<Index>(class_names_.size()); }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<Index>& class_sizes() const { return class_sizes_; }

  /// Id for a label string, or -1 when no instance carries it.
  std::int32_t code_of(const std::string& label) const {
    for (std::size_t c = 0; c < class_names_.size(); ++c)
      if (class_names_[c] == label) return static_cast<std::int32_t>(c);
    return -1;
  }

  bool same_label(Index i, Index j) const { return label_code(i) == label_code(j); }

  bool operator==(const Dataset& other) const {
    return features_.rows() == other.features_.rows() &&
           features_.cols() == other.features_.cols() &&
           (features_.array() == other.features_.array()).all() && labels_ == other.labels_;
  }

 private:
  void index_labels() {
    codes_.resize(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      std::int32_t code = code_of(labels_[i]);
      if (code < 0) {
        code = static_cast<std::int32_t>(class_names_.size());
        class_names_.push_back(labels_[i]);
        class_sizes_.push_back(0);
      }
      codes_[i] = code;
      ++class_sizes_[static_cast<std::size_t>(code)];
    }
  }

  Matrix features_;
  std::vector<std::string> labels_;
  std::vector<std::int32_t> codes_;
  std::vector<std::string> class_names_;
  std::vector<Index> class_sizes_;
};

/// An ordered pick of feature columns. Indices are unique and nonnegative;
/// whether they fit a concrete dataset is checked where the subset is used.
class FeatureSubset {
 public:
  explicit FeatureSubset(std::vector<Index> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw ConfigError("feature subset must not be empty");
    for (Index idx : indices_)
      if (idx < 0) throw ConfigError("feature index " + std::to_string(idx) + " is negative");
    auto sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw ConfigError("duplicate feature index " + std::to_string(*dup) + " in subset");
  }

  static FeatureSubset full(Index d) {
    std::vector<Index> all(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) all[static_cast<std::size_t>(i)] = i;
    return FeatureSubset(std::move(all));
  }

  const std::vector<Index>& indices() const { return indices_; }
  Index size() const { return static_cast<Index>(indices_.size()); }

  /// "0;2;5" -- the serialization used in trace CSVs.
  std::string to_string() const {
    std::string out;
    for (Index idx : indices_) {
      if (!out.empty()) out += ';';
      out += std::to_string(idx);
    }
    return out;
  }

  bool operator==(const FeatureSubset& other) const = default;

 private:
  std::vector<Index> indices_;
};

/// New dataset with the selected columns in subset order; N and labels are
/// untouched.
template <class Scalar>
Dataset<Scalar> project(const Dataset<Scalar>& ds, const FeatureSubset& subset) {
  for (Index idx : subset.indices())
    if (idx >= ds.cols())
      throw ConfigError("feature index " + std::to_string(idx) +
                        " out of range for dataset with " + std::to_string(ds.cols()) +
                        " columns");
  typename Dataset<Scalar>::Matrix m = ds.features()(Eigen::all, subset.indices());
  return Dataset<Scalar>(std::move(m), ds.labels());
}

struct CsvOptions {
  bool has_header = false;
  std::optional<Index> label_column;  // nullopt: last column
};

/// Loads a labeled CSV: comma separation, decimal-point reals, one label
/// column (default: last), optional single header row. Blank lines are
/// skipped. Any empty or non-numeric or non-finite feature cell is an error
/// reported with its 1-based file line and column.
template <class Scalar>
Dataset<Scalar> load_csv(const std::filesystem::path& path, const CsvOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");

  std::vector<Scalar> values;
  std::vector<std::string> labels;
  Index ncols = -1;
  Index label_col = -1;
  Index nrows = 0;
  std::string line;
  long line_no = 0;
  bool header_pending = options.has_header;

  while (std::getline(in, line)) {
    ++line_no;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (csv::trim(line).empty()) continue;
    auto cells = csv::split_line(line);
    if (ncols < 0) {
      ncols = static_cast<Index>(cells.size());
      if (ncols < 2)
        throw DataError("line " + std::to_string(line_no) +
                        ": need at least one feature column and one label column");
      label_col = options.label_column.value_or(ncols - 1);
      if (label_col < 0 || label_col >= ncols)
        throw DataError("label column " + std::to_string(label_col) +
                        " out of range for " + std::to_string(ncols) + " columns");
    } else if (static_cast<Index>(cells.size()) != ncols) {
      throw DataError("ragged row at line " + std::to_string(line_no) + ": has " +
                      std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(ncols));
    }
    for (Index c = 0; c < ncols; ++c) {
      auto cell = csv::trim(cells[static_cast<std::size_t>(c)]);
      if (c == label_col) {
        if (cell.empty())
          throw DataError("empty label cell at line " + std::to_string(line_no) +
                          ", column " + std::to_string(c + 1));
        labels.emplace_back(cell);
        continue;
      }
      if (cell.empty())
        throw DataError("empty cell at line " + std::to_string(line_no) + ", column " +
                        std::to_string(c + 1));
      auto parsed = csv::parse_number<Scalar>(cell);
      if (!parsed)
        throw DataError("cell '" + std::string(cell) + "' at line " + std::to_string(line_no) +
                        ", column " + std::to_string(c + 1) + " is not a number");
      if (!std::isfinite(*parsed))
        throw DataError("cell '" + std::string(cell) + "' at line " + std::to_string(line_no) +
                        ", column " + std::to_string(c + 1) + " is not finite");
      values.push_back(*parsed);
    }
    ++nrows;
  }
  if (nrows < 2)
    throw DataError("'" + path.string() + "' has " + std::to_string(nrows) +
                    " data rows, need at least 2");

  const Index d = ncols - 1;
  typename Dataset<Scalar>::Matrix m =
      Eigen::Map<const typename Dataset<Scalar>::Matrix>(values.data(), nrows, d);
  return Dataset<Scalar>(std::move(m), std::move(labels));
}

/// Writes features then the label as the last column, in the same dialect
/// load_csv reads. Feature values use shortest round-trip formatting, so a
/// save/load cycle reproduces them bit for bit.
template <class Scalar>
void save_csv(const Dataset<Scalar>& ds, const std::filesystem::path& path,
              bool write_header = false) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  if (write_header) {
    for (Index j = 0; j < ds.cols(); ++j) out << 'x' << j << ',';
    out << "label\n";
  }
  for (Index i = 0; i < ds.rows(); ++i) {
    for (Index j = 0; j < ds.cols(); ++j) out << csv::format_number(ds.features()(i, j)) << ',';
    out << ds.label(i) << '\n';
  }
}

}  // namespace sep

#endif  // SEP_DATASET_HPP
