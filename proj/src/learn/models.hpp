#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "learn/dataset.hpp"

namespace debatenet {

class Rng;

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const Matrix& x, const std::vector<int>& y) = 0;
  // Larger means more likely class 1. Only the ordering is meaningful.
  virtual double score(std::span<const double> row) const = 0;
  std::vector<double> score_all(const Matrix& x) const;
};

struct TreeParams {
  int max_depth = 0;  // 0: grow until pure
  std::size_t min_samples_split = 2;
  std::size_t min_samples_leaf = 1;
  std::size_t max_features = 0;  // 0: every feature at every split
};

// CART with Gini impurity and optional sample weights. Leaves store the
// weighted fraction of positives.
class DecisionTree : public Classifier {
 public:
  DecisionTree(TreeParams params, std::uint64_t seed) : params_(params), seed_(seed) {}

  void fit(const Matrix& x, const std::vector<int>& y) override;
  void fit_weighted(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w);
  double score(std::span<const double> row) const override;
  int predict(std::span<const double> row) const { return score(row) > 0.5 ? 1 : 0; }

  // Number of internal nodes splitting on each feature.
  const std::vector<std::size_t>& split_counts() const { return split_counts_; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };
  int grow(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
           std::vector<std::size_t>& idx, int depth, Rng& rng);

  TreeParams params_;
  std::uint64_t seed_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> split_counts_;
};

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_features = 0;  // 0: floor(sqrt(p)), at least 1
  bool bootstrap = true;
  TreeParams tree;
  unsigned threads = 1;
};

class RandomForest : public Classifier {
 public:
  RandomForest(ForestParams params, std::uint64_t seed) : params_(params), seed_(seed) {}
  void fit(const Matrix& x, const std::vector<int>& y) override;
  double score(std::span<const double> row) const override;
  std::vector<std::size_t> split_counts() const;

 private:
  ForestParams params_;
  std::uint64_t seed_;
  std::vector<DecisionTree> trees_;
};

// Discrete AdaBoost (SAMME with two classes) over depth-1 stumps.
class AdaBoost : public Classifier {
 public:
  AdaBoost(std::size_t rounds, std::uint64_t seed) : rounds_(rounds), seed_(seed) {}
  void fit(const Matrix& x, const std::vector<int>& y) override;
  double score(std::span<const double> row) const override;
  std::size_t rounds_used() const { return stumps_.size(); }

 private:
  std::size_t rounds_;
  std::uint64_t seed_;
  std::vector<DecisionTree> stumps_;
  std::vector<double> alphas_;
};

// L2-penalised logistic regression on standardised inputs, fitted by damped
// Newton iterations. score() is the linear predictor.
class LogisticRegression : public Classifier {
 public:
  LogisticRegression(double l2, double tol, int max_iter = 200) : l2_(l2), tol_(tol), max_iter_(max_iter) {}
  void fit(const Matrix& x, const std::vector<int>& y) override;
  double score(std::span<const double> row) const override;
  const std::vector<double>& coefficients() const { return beta_; }  // intercept first
  bool converged() const { return converged_; }

 private:
  double l2_;
  double tol_;
  int max_iter_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> beta_;
  bool converged_ = false;
};

// Gaussian naive Bayes on standardised inputs. score() is the log posterior odds.
class GaussianNB : public Classifier {
 public:
  explicit GaussianNB(double var_floor) : var_floor_(var_floor) {}
  void fit(const Matrix& x, const std::vector<int>& y) override;
  double score(std::span<const double> row) const override;

 private:
  double var_floor_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> mu_[2];
  std::vector<double> var_[2];
  double log_prior_[2] = {0.0, 0.0};
};

enum class Family { DecisionTree, RandomForest, AdaBoost, LogisticRegression, GaussianNB };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);  // throws ConfigError
const std::vector<Family>& all_families();

struct ModelSpec {
  Family family = Family::RandomForest;
  // Recognised keys: n_trees, max_features, max_depth, min_samples_leaf,
  // bootstrap, rounds, l2, tol, max_iter, var_floor.
  std::map<std::string, double> hyperparameters;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  double param(const std::string& key, double fallback) const;
};

ModelSpec default_spec(Family f, std::uint64_t seed = 0);

std::unique_ptr<Classifier> make_classifier(const ModelSpec& spec);

// Fits a fresh model; throws DataError when either class has fewer than two rows.
std::unique_ptr<Classifier> train(const ModelSpec& spec, const Matrix& x, const std::vector<int>& y);
std::unique_ptr<Classifier> train(const ModelSpec& spec, const LabeledDataset& data);

}  // namespace debatenet
