#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace debatenet {

struct OlsResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;  // two-sided, Student t with df degrees of freedom
  double rss = 0.0;
  double sigma2 = 0.0;
  double df = 0.0;
};

// Least squares via column-pivoted QR; classical SE with sigma^2 = RSS/(n-p).
// Throws RankDeficientError naming the collinear columns.
OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
              const std::vector<std::string>& column_names = {});

// Same fit with cluster-robust (CR1) standard errors; df = clusters - 1.
OlsResult ols_clustered(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                        const std::vector<std::size_t>& cluster,
                        const std::vector<std::string>& column_names = {});

double student_t_two_sided_p(double t, double df);

}  // namespace debatenet
