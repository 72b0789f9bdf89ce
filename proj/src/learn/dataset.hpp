#pragma once

#include <span>
#include <string>
#include <vector>

namespace debatenet {

// Dense row-major matrix of features.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Matrix select_rows(const std::vector<std::size_t>& rows) const;
  Matrix select_cols(const std::vector<std::size_t>& cols) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Matched-pair classification data: each pair contributes one positive and
// one negative row.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  Matrix x;
  std::vector<int> y;
  std::vector<std::string> pair_id;
  std::vector<std::string> user;

  std::size_t rows() const { return y.size(); }

  // Throws DataError unless every pair has exactly one row of each label and
  // every column is finite or NaN (NaN means "impute").
  void validate() const;

  LabeledDataset subset(const std::vector<std::size_t>& rows) const;
  LabeledDataset with_features(const std::vector<std::string>& names) const;

  // Unique pair ids in order of first appearance, and the rows of each.
  std::vector<std::vector<std::size_t>> rows_by_pair() const;
};

// Replaces NaN cells with per-column medians computed over `reference`
// (typically the training fold); a column with no finite value imputes 0.
std::vector<double> column_medians(const Matrix& reference);
void impute_nan(Matrix& m, const std::vector<double>& medians);

}  // namespace debatenet
