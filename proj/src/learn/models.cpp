#include "learn/models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "util/error.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace debatenet {

std::vector<double> Classifier::score_all(const Matrix& x) const {
  std::vector<double> s(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) s[i] = score(x.row(i));
  return s;
}

// ---------------------------------------------------------------------------
// Decision tree

void DecisionTree::fit(const Matrix& x, const std::vector<int>& y) {
  fit_weighted(x, y, std::vector<double>(y.size(), 1.0));
}

void DecisionTree::fit_weighted(const Matrix& x, const std::vector<int>& y,
                                const std::vector<double>& w) {
  nodes_.clear();
  split_counts_.assign(x.cols(), 0);
  std::vector<std::size_t> idx;
  idx.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (w[i] > 0.0) idx.push_back(i);
  }
  Rng rng(seed_);
  if (idx.empty()) {
    nodes_.push_back(Node{});
    nodes_.back().value = 0.5;
    return;
  }
  grow(x, y, w, idx, 0, rng);
}

int DecisionTree::grow(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
                       std::vector<std::size_t>& idx, int depth, Rng& rng) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});

  double total = 0.0;
  double pos = 0.0;
  for (std::size_t i : idx) {
    total += w[i];
    if (y[i] == 1) pos += w[i];
  }
  const double p = pos / total;
  nodes_[id].value = p;

  const bool pure = pos == 0.0 || pos == total;
  if (pure || idx.size() < params_.min_samples_split ||
      (params_.max_depth > 0 && depth >= params_.max_depth)) {
    return id;
  }

  const std::size_t n_features = x.cols();
  std::vector<std::size_t> order(n_features);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  const std::size_t budget =
      params_.max_features == 0 ? n_features : std::min(params_.max_features, n_features);

  const double parent_impurity = total * 2.0 * p * (1.0 - p);
  double best_gain = -1.0;
  int best_feature = -1;
  double best_threshold = 0.0;

  std::vector<std::size_t> sorted(idx.size());
  std::size_t evaluated = 0;
  for (std::size_t f : order) {
    if (evaluated >= budget) break;
    std::copy(idx.begin(), idx.end(), sorted.begin());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](std::size_t a, std::size_t b) { return x(a, f) < x(b, f); });
    if (x(sorted.front(), f) == x(sorted.back(), f)) continue;  // constant: not counted
    ++evaluated;

    double lw = 0.0;
    double lpos = 0.0;
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
      const std::size_t i = sorted[k];
      lw += w[i];
      if (y[i] == 1) lpos += w[i];
      const double cur = x(i, f);
      const double next = x(sorted[k + 1], f);
      if (cur == next) continue;
      const std::size_t nl = k + 1;
      const std::size_t nr = sorted.size() - nl;
      if (nl < params_.min_samples_leaf || nr < params_.min_samples_leaf) continue;
      const double rw = total - lw;
      const double rpos = pos - lpos;
      const double pl = lpos / lw;
      const double pr = rpos / rw;
      const double impurity = lw * 2.0 * pl * (1.0 - pl) + rw * 2.0 * pr * (1.0 - pr);
      const double gain = parent_impurity - impurity;
      if (gain > best_gain) {
        best_gain = gain;
        best_feature = static_cast<int>(f);
        double mid = cur + (next - cur) / 2.0;
        if (!(mid < next)) mid = cur;
        best_threshold = mid;
      }
    }
  }
  if (best_feature < 0) return id;

  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (std::size_t i : idx) {
    (x(i, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right).push_back(i);
  }
  ++split_counts_[static_cast<std::size_t>(best_feature)];
  nodes_[id].feature = best_feature;
  nodes_[id].threshold = best_threshold;
  idx.clear();
  idx.shrink_to_fit();
  const int l = grow(x, y, w, left, depth + 1, rng);
  const int r = grow(x, y, w, right, depth + 1, rng);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

double DecisionTree::score(std::span<const double> row) const {
  int n = 0;
  while (nodes_[n].feature >= 0) {
    const Node& node = nodes_[n];
    n = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes_[n].value;
}

// ---------------------------------------------------------------------------
// Random forest

void RandomForest::fit(const Matrix& x, const std::vector<int>& y) {
  const std::size_t p = x.cols();
  TreeParams tp = params_.tree;
  tp.max_features = params_.max_features > 0
                        ? params_.max_features
                        : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))));
  trees_.clear();
  for (std::size_t t = 0; t < params_.n_trees; ++t) trees_.emplace_back(tp, derive_seed(seed_, t));

  const std::size_t n = y.size();
  parallel_for(params_.n_trees, params_.threads, [&](std::size_t t) {
    std::vector<double> w(n, 1.0);
    if (params_.bootstrap) {
      std::fill(w.begin(), w.end(), 0.0);
      Rng rng(derive_seed(derive_seed(seed_, t), 1));
      for (std::size_t k = 0; k < n; ++k) w[rng.index(n)] += 1.0;
    }
    trees_[t].fit_weighted(x, y, w);
  });
}

double RandomForest::score(std::span<const double> row) const {
  double s = 0.0;
  for (const auto& t : trees_) s += t.score(row);
  return trees_.empty() ? 0.5 : s / static_cast<double>(trees_.size());
}

std::vector<std::size_t> RandomForest::split_counts() const {
  std::vector<std::size_t> counts;
  for (const auto& t : trees_) {
    const auto& c = t.split_counts();
    if (counts.empty()) counts.assign(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) counts[i] += c[i];
  }
  return counts;
}

// ---------------------------------------------------------------------------
// AdaBoost

void AdaBoost::fit(const Matrix& x, const std::vector<int>& y) {
  stumps_.clear();
  alphas_.clear();
  const std::size_t n = y.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  TreeParams stump;
  stump.max_depth = 1;
  for (std::size_t m = 0; m < rounds_; ++m) {
    DecisionTree t(stump, derive_seed(seed_, m));
    t.fit_weighted(x, y, w);
    double err = 0.0;
    double total = 0.0;
    std::vector<char> miss(n);
    for (std::size_t i = 0; i < n; ++i) {
      miss[i] = t.predict(x.row(i)) != y[i];
      total += w[i];
      if (miss[i]) err += w[i];
    }
    err /= total;
    if (err <= 1e-12) {
      // Perfect stump: it alone decides.
      stumps_.push_back(std::move(t));
      alphas_.push_back(1.0);
      break;
    }
    if (err >= 0.5) {
      if (stumps_.empty()) {
        stumps_.push_back(std::move(t));
        alphas_.push_back(1.0);
      }
      break;
    }
    const double alpha = std::log((1.0 - err) / err);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (miss[i]) w[i] *= std::exp(alpha);
      sum += w[i];
    }
    for (double& v : w) v /= sum;
    stumps_.push_back(std::move(t));
    alphas_.push_back(alpha);
  }
}

double AdaBoost::score(std::span<const double> row) const {
  double s = 0.0;
  for (std::size_t m = 0; m < stumps_.size(); ++m) {
    s += alphas_[m] * (stumps_[m].predict(row) == 1 ? 1.0 : -1.0);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Standardisation shared by the linear and Bayes models

namespace {

void standardizer(const Matrix& x, std::vector<double>& mean, std::vector<double>& scale) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  mean.assign(p, 0.0);
  scale.assign(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += x(i, j);
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - m) * (x(i, j) - m);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    mean[j] = m;
    scale[j] = sd > 0.0 ? sd : 1.0;
  }
}

double log1pexp(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

// ---------------------------------------------------------------------------
// Logistic regression

void LogisticRegression::fit(const Matrix& x, const std::vector<int>& y) {
  standardizer(x, mean_, scale_);
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  Eigen::MatrixXd z(n, p + 1);
  Eigen::VectorXd t(n);
  for (std::size_t i = 0; i < n; ++i) {
    z(i, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) z(i, j + 1) = (x(i, j) - mean_[j]) / scale_[j];
    t(i) = y[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(p + 1, l2_);
  penalty(0) = 0.0;

  auto objective = [&](const Eigen::VectorXd& b) {
    const Eigen::VectorXd eta = z * b;
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) loss += log1pexp(eta(i)) - t(i) * eta(i);
    return loss * inv_n + 0.5 * (penalty.array() * b.array().square()).sum();
  };

  converged_ = false;
  double obj = objective(beta);
  for (int it = 0; it < max_iter_; ++it) {
    const Eigen::VectorXd eta = z * beta;
    Eigen::VectorXd prob(n);
    Eigen::VectorXd curv(n);
    for (std::size_t i = 0; i < n; ++i) {
      prob(i) = sigmoid(eta(i));
      curv(i) = prob(i) * (1.0 - prob(i));
    }
    const Eigen::VectorXd grad = inv_n * (z.transpose() * (prob - t)) + penalty.cwiseProduct(beta);
    Eigen::MatrixXd hess = inv_n * (z.transpose() * curv.asDiagonal() * z);
    hess.diagonal() += penalty;
    hess.diagonal().array() += 1e-12;
    const Eigen::VectorXd step = hess.ldlt().solve(grad);

    double scale = 1.0;
    Eigen::VectorXd candidate = beta - step;
    double cand_obj = objective(candidate);
    while (cand_obj > obj + 1e-4 * scale * grad.dot(-step) && scale > 1e-10) {
      scale *= 0.5;
      candidate = beta - scale * step;
      cand_obj = objective(candidate);
    }
    const double change = (candidate - beta).cwiseAbs().maxCoeff();
    beta = candidate;
    obj = cand_obj;
    if (change < tol_) {
      converged_ = true;
      break;
    }
  }
  beta_.assign(beta.data(), beta.data() + beta.size());
}

double LogisticRegression::score(std::span<const double> row) const {
  double eta = beta_[0];
  for (std::size_t j = 0; j < row.size(); ++j) eta += beta_[j + 1] * (row[j] - mean_[j]) / scale_[j];
  return eta;
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes

void GaussianNB::fit(const Matrix& x, const std::vector<int>& y) {
  standardizer(x, mean_, scale_);
  const std::size_t p = x.cols();
  double count[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    mu_[c].assign(p, 0.0);
    var_[c].assign(p, 0.0);
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const int c = y[i];
    count[c] += 1.0;
    for (std::size_t j = 0; j < p; ++j) mu_[c][j] += (x(i, j) - mean_[j]) / scale_[j];
  }
  for (int c = 0; c < 2; ++c) {
    for (double& m : mu_[c]) m /= count[c];
  }
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const int c = y[i];
    for (std::size_t j = 0; j < p; ++j) {
      const double d = (x(i, j) - mean_[j]) / scale_[j] - mu_[c][j];
      var_[c][j] += d * d;
    }
  }
  const double n = count[0] + count[1];
  for (int c = 0; c < 2; ++c) {
    for (double& v : var_[c]) v = std::max(v / count[c], var_floor_);
    log_prior_[c] = std::log(count[c] / n);
  }
}

double GaussianNB::score(std::span<const double> row) const {
  double s = log_prior_[1] - log_prior_[0];
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double zj = (row[j] - mean_[j]) / scale_[j];
    for (int c = 0; c < 2; ++c) {
      const double d = zj - mu_[c][j];
      const double ll = -0.5 * std::log(var_[c][j]) - 0.5 * d * d / var_[c][j];
      s += c == 1 ? ll : -ll;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Specs and factory

std::string_view family_name(Family f) {
  switch (f) {
    case Family::DecisionTree: return "decision_tree";
    case Family::RandomForest: return "random_forest";
    case Family::AdaBoost: return "adaboost";
    case Family::LogisticRegression: return "logistic_regression";
    case Family::GaussianNB: return "gaussian_nb";
  }
  return "random_forest";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> f{Family::DecisionTree, Family::RandomForest, Family::AdaBoost,
                                     Family::LogisticRegression, Family::GaussianNB};
  return f;
}

Family parse_family(std::string_view name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

double ModelSpec::param(const std::string& key, double fallback) const {
  auto it = hyperparameters.find(key);
  return it == hyperparameters.end() ? fallback : it->second;
}

ModelSpec default_spec(Family f, std::uint64_t seed) {
  ModelSpec s;
  s.family = f;
  s.seed = seed;
  switch (f) {
    case Family::RandomForest:
      s.hyperparameters = {{"n_trees", 100}, {"max_features", 0}, {"max_depth", 0}, {"bootstrap", 1}};
      break;
    case Family::AdaBoost: s.hyperparameters = {{"rounds", 100}}; break;
    case Family::LogisticRegression: s.hyperparameters = {{"l2", 1e-4}, {"tol", 1e-8}}; break;
    case Family::GaussianNB: s.hyperparameters = {{"var_floor", 1e-9}}; break;
    case Family::DecisionTree: s.hyperparameters = {{"max_depth", 0}, {"max_features", 0}}; break;
  }
  return s;
}

std::unique_ptr<Classifier> make_classifier(const ModelSpec& spec) {
  auto count = [&](const char* key, double fallback) {
    const double v = spec.param(key, fallback);
    if (v < 0 || !std::isfinite(v)) throw ConfigError(std::string("hyperparameter '") + key + "' must be >= 0");
    return static_cast<std::size_t>(v);
  };
  TreeParams tp;
  tp.max_depth = static_cast<int>(count("max_depth", 0));
  tp.min_samples_leaf = std::max<std::size_t>(1, count("min_samples_leaf", 1));
  switch (spec.family) {
    case Family::DecisionTree:
      tp.max_features = count("max_features", 0);
      // Same seed derivation as tree 0 of a forest.
      return std::make_unique<DecisionTree>(tp, derive_seed(spec.seed, 0));
    case Family::RandomForest: {
      ForestParams fp;
      fp.n_trees = std::max<std::size_t>(1, count("n_trees", 100));
      fp.max_features = count("max_features", 0);
      fp.bootstrap = spec.param("bootstrap", 1) != 0.0;
      fp.tree = tp;
      fp.threads = spec.threads;
      return std::make_unique<RandomForest>(fp, spec.seed);
    }
    case Family::AdaBoost:
      return std::make_unique<AdaBoost>(std::max<std::size_t>(1, count("rounds", 100)), spec.seed);
    case Family::LogisticRegression:
      return std::make_unique<LogisticRegression>(spec.param("l2", 1e-4), spec.param("tol", 1e-8),
                                                  static_cast<int>(count("max_iter", 200)));
    case Family::GaussianNB:
      return std::make_unique<GaussianNB>(spec.param("var_floor", 1e-9));
  }
  throw ConfigError("unknown model family");
}

std::unique_ptr<Classifier> train(const ModelSpec& spec, const Matrix& x, const std::vector<int>& y) {
  std::size_t pos = 0;
  for (int v : y) pos += v == 1;
  if (pos < 2 || y.size() - pos < 2) {
    throw DataError("training data needs at least two rows of each class (got " +
                    std::to_string(pos) + " positive, " + std::to_string(y.size() - pos) + " negative)");
  }
  auto model = make_classifier(spec);
  model->fit(x, y);
  return model;
}

std::unique_ptr<Classifier> train(const ModelSpec& spec, const LabeledDataset& data) {
  return train(spec, data.x, data.y);
}

}  // namespace debatenet
