#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "learn/dataset.hpp"
#include "learn/models.hpp"

namespace debatenet {

// Mann-Whitney AUC with ties counted one half. Throws DataError unless both
// classes are present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct CvReport {
  std::string family;
  std::string feature_set;
  std::vector<double> folds;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation across folds

  std::string to_json() const;
};

// Fold index per pair (in rows_by_pair order): pairs are shuffled by seed and
// dealt round-robin.
std::vector<std::size_t> assign_pair_folds(std::size_t n_pairs, std::size_t k, std::uint64_t seed);

// Pair-grouped k-fold CV. NaN cells are imputed with training-fold medians.
// Throws DataError when there are fewer pairs than folds.
CvReport cross_validate(const ModelSpec& spec, const LabeledDataset& data, std::size_t k,
                        std::uint64_t seed, const std::string& feature_set = "");

struct ImportanceEntry {
  std::string feature;
  double importance = 0.0;  // mean AUC drop
  double share = 0.0;       // clamped at 0, normalised over the group
};

// Permutation importance on held-out rows for the given feature columns
// (all columns when empty). Shares are zero when no feature has positive
// importance.
std::vector<ImportanceEntry> permutation_importance(const Classifier& model, const Matrix& holdout,
                                                    const std::vector<int>& labels,
                                                    const std::vector<std::string>& feature_names,
                                                    std::size_t repeats, std::uint64_t seed,
                                                    const std::vector<std::size_t>& group = {});

// Renormalises shares from importances (clamping negatives).
void normalize_shares(std::vector<ImportanceEntry>& entries);

// Importance averaged over the held-out folds of pair-grouped CV.
std::vector<ImportanceEntry> cv_permutation_importance(const ModelSpec& spec, const LabeledDataset& data,
                                                       std::size_t k, std::size_t repeats,
                                                       std::uint64_t seed);

std::string importance_csv(const std::vector<ImportanceEntry>& entries);

}  // namespace debatenet
