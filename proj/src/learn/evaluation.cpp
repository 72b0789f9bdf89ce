#include "learn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace debatenet {

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw DataError("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (int l : labels) n_pos += l == 1;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DataError("AUC needs both classes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Average 1-based ranks over tie groups; all values are multiples of 1/2.
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) pos_rank_sum += avg_rank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos);
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

std::string CvReport::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["feature_set"] = feature_set;
  j["folds"] = folds;
  j["mean"] = mean;
  j["sd"] = sd;
  return j.dump(2);
}

std::vector<std::size_t> assign_pair_folds(std::size_t n_pairs, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> perm(n_pairs);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(derive_seed(seed, 0xf01d));
  rng.shuffle(perm);
  std::vector<std::size_t> fold(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) fold[perm[i]] = i % k;
  return fold;
}

namespace {

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

std::vector<FoldSplit> make_splits(const LabeledDataset& data, std::size_t k, std::uint64_t seed) {
  const auto groups = data.rows_by_pair();
  if (k < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (groups.size() < k) {
    throw DataError("cross-validation needs at least " + std::to_string(k) + " pairs, got " +
                    std::to_string(groups.size()));
  }
  const auto fold = assign_pair_folds(groups.size(), k, seed);
  std::vector<FoldSplit> splits(k);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t f = 0; f < k; ++f) {
      auto& dst = f == fold[g] ? splits[f].test : splits[f].train;
      dst.insert(dst.end(), groups[g].begin(), groups[g].end());
    }
  }
  for (auto& s : splits) {
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.test.begin(), s.test.end());
  }
  return splits;
}

void prepare_fold(const LabeledDataset& data, const FoldSplit& split, Matrix& xtr, std::vector<int>& ytr,
                  Matrix& xte, std::vector<int>& yte) {
  xtr = data.x.select_rows(split.train);
  xte = data.x.select_rows(split.test);
  const auto med = column_medians(xtr);
  impute_nan(xtr, med);
  impute_nan(xte, med);
  ytr.clear();
  yte.clear();
  for (std::size_t r : split.train) ytr.push_back(data.y[r]);
  for (std::size_t r : split.test) yte.push_back(data.y[r]);
}

}  // namespace

CvReport cross_validate(const ModelSpec& spec, const LabeledDataset& data, std::size_t k,
                        std::uint64_t seed, const std::string& feature_set) {
  data.validate();
  const auto splits = make_splits(data, k, seed);
  CvReport rep;
  rep.family = std::string(family_name(spec.family));
  rep.feature_set = feature_set;
  for (std::size_t f = 0; f < k; ++f) {
    Matrix xtr, xte;
    std::vector<int> ytr, yte;
    prepare_fold(data, splits[f], xtr, ytr, xte, yte);
    ModelSpec fold_spec = spec;
    fold_spec.seed = derive_seed(spec.seed, f);
    const auto model = train(fold_spec, xtr, ytr);
    rep.folds.push_back(auc(model->score_all(xte), yte));
  }
  rep.mean = std::accumulate(rep.folds.begin(), rep.folds.end(), 0.0) / static_cast<double>(k);
  double ss = 0.0;
  for (double a : rep.folds) ss += (a - rep.mean) * (a - rep.mean);
  rep.sd = std::sqrt(ss / static_cast<double>(k - 1));
  return rep;
}

void normalize_shares(std::vector<ImportanceEntry>& entries) {
  double total = 0.0;
  for (const auto& e : entries) total += std::max(e.importance, 0.0);
  for (auto& e : entries) e.share = total > 0.0 ? std::max(e.importance, 0.0) / total : 0.0;
}

std::vector<ImportanceEntry> permutation_importance(const Classifier& model, const Matrix& holdout,
                                                    const std::vector<int>& labels,
                                                    const std::vector<std::string>& feature_names,
                                                    std::size_t repeats, std::uint64_t seed,
                                                    const std::vector<std::size_t>& group) {
  std::vector<std::size_t> cols = group;
  if (cols.empty()) {
    cols.resize(holdout.cols());
    std::iota(cols.begin(), cols.end(), 0);
  }
  if (repeats == 0) throw ConfigError("permutation importance needs at least one repeat");
  const double baseline = auc(model.score_all(holdout), labels);  // throws on a degenerate holdout

  std::vector<ImportanceEntry> out;
  Matrix work = holdout;
  std::vector<double> column(holdout.rows());
  for (std::size_t c : cols) {
    double drop = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
      for (std::size_t i = 0; i < holdout.rows(); ++i) column[i] = holdout(i, c);
      Rng rng(derive_seed(derive_seed(seed, c), r));
      rng.shuffle(column);
      for (std::size_t i = 0; i < holdout.rows(); ++i) work(i, c) = column[i];
      drop += baseline - auc(model.score_all(work), labels);
    }
    for (std::size_t i = 0; i < holdout.rows(); ++i) work(i, c) = holdout(i, c);
    out.push_back({feature_names.at(c), drop / static_cast<double>(repeats), 0.0});
  }
  normalize_shares(out);
  return out;
}

std::vector<ImportanceEntry> cv_permutation_importance(const ModelSpec& spec, const LabeledDataset& data,
                                                       std::size_t k, std::size_t repeats,
                                                       std::uint64_t seed) {
  data.validate();
  const auto splits = make_splits(data, k, seed);
  std::vector<ImportanceEntry> total;
  for (std::size_t f = 0; f < k; ++f) {
    Matrix xtr, xte;
    std::vector<int> ytr, yte;
    prepare_fold(data, splits[f], xtr, ytr, xte, yte);
    ModelSpec fold_spec = spec;
    fold_spec.seed = derive_seed(spec.seed, f);
    const auto model = train(fold_spec, xtr, ytr);
    const auto imp = permutation_importance(*model, xte, yte, data.feature_names, repeats,
                                            derive_seed(seed, 1000 + f));
    if (total.empty()) total = imp;
    else {
      for (std::size_t i = 0; i < imp.size(); ++i) total[i].importance += imp[i].importance;
    }
  }
  for (auto& e : total) e.importance /= static_cast<double>(k);
  normalize_shares(total);
  return total;
}

std::string importance_csv(const std::vector<ImportanceEntry>& entries) {
  std::string out = csv_line({"feature", "importance", "share"});
  for (const auto& e : entries) {
    out += csv_line({e.feature, format_double(e.importance), format_double(e.share)});
  }
  return out;
}

}  // namespace debatenet
