#include "did/ols.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <map>

#include "util/error.hpp"

namespace debatenet {

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  if (!(df > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::min(1.0, std::max(0.0, p));
}

namespace {

struct Fit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd xtx_inv;
  Eigen::VectorXd resid;
};

std::string column_label(const std::vector<std::string>& names, Eigen::Index j) {
  if (static_cast<std::size_t>(j) < names.size()) return names[static_cast<std::size_t>(j)];
  return "column " + std::to_string(j);
}

Fit fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::string>& names) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (y.size() != n) throw DataError("design matrix and response differ in length");
  if (n <= p) {
    throw DataError("OLS needs more observations (" + std::to_string(n) + ") than coefficients (" +
                    std::to_string(p) + ")");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < p) {
    // Pivoted columns past the rank are the ones explained by the others.
    std::string cols;
    const auto perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < p; ++k) {
      if (!cols.empty()) cols += ", ";
      cols += column_label(names, perm(k));
    }
    throw RankDeficientError("design matrix is rank deficient (rank " + std::to_string(qr.rank()) +
                             " of " + std::to_string(p) + "); collinear column(s): " + cols);
  }
  Fit f;
  f.beta = qr.solve(y);
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd unpermuted = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  f.xtx_inv = perm * unpermuted * perm.transpose();
  f.resid = y - x * f.beta;
  return f;
}

void finish(OlsResult& r, const Eigen::VectorXd& beta, const Eigen::MatrixXd& cov, double df) {
  const Eigen::Index p = beta.size();
  r.beta = beta;
  r.df = df;
  r.se.resize(p);
  r.t_stats.resize(p);
  r.p_values.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    r.se(j) = std::sqrt(std::max(cov(j, j), 0.0));
    if (r.se(j) > 0.0) {
      r.t_stats(j) = beta(j) / r.se(j);
    } else {
      r.t_stats(j) = beta(j) == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), beta(j));
    }
    r.p_values(j) = student_t_two_sided_p(r.t_stats(j), df);
  }
}

}  // namespace

OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const std::vector<std::string>& names) {
  const Fit f = fit(x, y, names);
  OlsResult r;
  r.rss = f.resid.squaredNorm();
  const double df = static_cast<double>(x.rows() - x.cols());
  r.sigma2 = r.rss / df;
  finish(r, f.beta, r.sigma2 * f.xtx_inv, df);
  return r;
}

OlsResult ols_clustered(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        const std::vector<std::size_t>& cluster, const std::vector<std::string>& names) {
  if (cluster.size() != static_cast<std::size_t>(x.rows())) throw DataError("cluster ids differ in length");
  const Fit f = fit(x, y, names);
  const Eigen::Index p = x.cols();
  std::map<std::size_t, Eigen::VectorXd> score;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    auto [it, fresh] = score.try_emplace(cluster[static_cast<std::size_t>(i)], Eigen::VectorXd::Zero(p));
    it->second += x.row(i).transpose() * f.resid(i);
  }
  const double g = static_cast<double>(score.size());
  if (g < 2) throw DataError("clustered standard errors need at least two clusters");
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(p, p);
  for (const auto& [_, s] : score) meat += s * s.transpose();
  const double n = static_cast<double>(x.rows());
  const double correction = g / (g - 1.0) * (n - 1.0) / (n - static_cast<double>(p));
  OlsResult r;
  r.rss = f.resid.squaredNorm();
  r.sigma2 = r.rss / (n - static_cast<double>(p));
  finish(r, f.beta, correction * f.xtx_inv * meat * f.xtx_inv, g - 1.0);
  return r;
}

}  // namespace debatenet
