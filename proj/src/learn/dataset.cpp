#include "learn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "util/error.hpp"

namespace debatenet {

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  Matrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_), cols_,
                m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }
  return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& cols) const {
  Matrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) m(r, j) = (*this)(r, cols[j]);
  }
  return m;
}

void LabeledDataset::validate() const {
  if (x.rows() != y.size() || pair_id.size() != y.size() || user.size() != y.size()) {
    throw DataError("dataset columns have inconsistent lengths");
  }
  if (x.cols() != feature_names.size()) throw DataError("feature name count does not match columns");
  std::unordered_map<std::string, std::pair<int, int>> labels;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) throw DataError("labels must be 0 or 1");
    auto& [neg, pos] = labels[pair_id[i]];
    (y[i] == 1 ? pos : neg) += 1;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (std::isinf(x(i, j))) {
        throw DataError("feature '" + feature_names[j] + "' is infinite in row " + std::to_string(i));
      }
    }
  }
  for (const auto& [pid, counts] : labels) {
    if (counts.first != 1 || counts.second != 1) {
      throw DataError("pair '" + pid + "' must have exactly one treated and one control row");
    }
  }
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& rows) const {
  LabeledDataset d;
  d.feature_names = feature_names;
  d.x = x.select_rows(rows);
  for (std::size_t r : rows) {
    d.y.push_back(y[r]);
    d.pair_id.push_back(pair_id[r]);
    d.user.push_back(user[r]);
  }
  return d;
}

LabeledDataset LabeledDataset::with_features(const std::vector<std::string>& names) const {
  std::vector<std::size_t> cols;
  for (const auto& n : names) {
    auto it = std::find(feature_names.begin(), feature_names.end(), n);
    if (it == feature_names.end()) throw DataError("dataset has no feature '" + n + "'");
    cols.push_back(static_cast<std::size_t>(it - feature_names.begin()));
  }
  LabeledDataset d = *this;
  d.feature_names = names;
  d.x = x.select_cols(cols);
  return d;
}

std::vector<std::vector<std::size_t>> LabeledDataset::rows_by_pair() const {
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < pair_id.size(); ++i) {
    auto [it, fresh] = slot.emplace(pair_id[i], groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  return groups;
}

std::vector<double> column_medians(const Matrix& reference) {
  std::vector<double> med(reference.cols(), 0.0);
  std::vector<double> vals;
  for (std::size_t j = 0; j < reference.cols(); ++j) {
    vals.clear();
    for (std::size_t i = 0; i < reference.rows(); ++i) {
      if (!std::isnan(reference(i, j))) vals.push_back(reference(i, j));
    }
    if (vals.empty()) continue;
    std::sort(vals.begin(), vals.end());
    const std::size_t k = vals.size();
    med[j] = k % 2 ? vals[k / 2] : 0.5 * (vals[k / 2 - 1] + vals[k / 2]);
  }
  return med;
}

void impute_nan(Matrix& m, const std::vector<double>& medians) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (std::isnan(m(i, j))) m(i, j) = medians[j];
    }
  }
}

}  // namespace debatenet
