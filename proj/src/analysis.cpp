#include "rankdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rankdyn/errors.hpp"
#include "rankdyn/mathutil.hpp"

namespace rankdyn {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void validate_correlation(const CorrelationMatrix& matrix) {
  if (matrix.dim < 1)
    throw InputError("correlation matrix: dimension must be >= 1");
  if (matrix.entries.size() !=
      static_cast<size_t>(matrix.dim) * static_cast<size_t>(matrix.dim))
    throw InputError("correlation matrix: entry count does not match dimension");
  for (int i = 0; i < matrix.dim; ++i) {
    if (matrix.at(i, i) != 1.0)
      throw InputError("correlation matrix: diagonal entry " +
                       std::to_string(i + 1) + " is not exactly 1");
    for (int j = 0; j < matrix.dim; ++j) {
      const double r = matrix.at(i, j);
      if (!std::isfinite(r) || std::fabs(r) > 1.0 + 1e-12)
        throw InputError("correlation matrix: entry (" + std::to_string(i + 1) +
                         "," + std::to_string(j + 1) + ") outside [-1, 1]");
      if (std::fabs(r - matrix.at(j, i)) > 1e-12)
        throw InputError("correlation matrix: not symmetric at (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ")");
    }
  }
  if (!matrix.names.empty() &&
      matrix.names.size() != static_cast<size_t>(matrix.dim))
    throw InputError("correlation matrix: name count does not match dimension");
}

}  // namespace

CorrelationMatrix correlation_matrix(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::string>& names) {
  if (columns.empty()) throw InputError("correlation_matrix: no columns");
  const size_t samples = columns.front().size();
  if (samples < 3)
    throw InputError("correlation_matrix: needs at least 3 samples");
  if (!names.empty() && names.size() != columns.size())
    throw InputError("correlation_matrix: name count does not match columns");

  const int dim = static_cast<int>(columns.size());
  auto column_name = [&](int i) {
    return names.empty() ? "column " + std::to_string(i + 1)
                         : "'" + names[static_cast<size_t>(i)] + "'";
  };

  std::vector<double> mean(columns.size(), 0.0);
  std::vector<double> sd(columns.size(), 0.0);
  for (int i = 0; i < dim; ++i) {
    const auto& col = columns[static_cast<size_t>(i)];
    if (col.size() != samples)
      throw InputError("correlation_matrix: columns differ in length");
    for (double v : col) {
      if (!std::isfinite(v))
        throw InputError("correlation_matrix: non-finite value in " +
                         column_name(i));
      mean[static_cast<size_t>(i)] += v;
    }
    mean[static_cast<size_t>(i)] /= static_cast<double>(samples);
    double ss = 0.0;
    for (double v : col) {
      const double d = v - mean[static_cast<size_t>(i)];
      ss += d * d;
    }
    if (!(ss > 0.0))
      throw ComputationError("correlation_matrix: zero variance in " +
                             column_name(i));
    sd[static_cast<size_t>(i)] = std::sqrt(ss);
  }

  CorrelationMatrix matrix;
  matrix.dim = dim;
  matrix.n_samples = static_cast<int>(samples);
  matrix.names = names;
  matrix.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    matrix.at(i, i) = 1.0;
    for (int j = i + 1; j < dim; ++j) {
      double cov = 0.0;
      for (size_t n = 0; n < samples; ++n)
        cov += (columns[static_cast<size_t>(i)][n] - mean[static_cast<size_t>(i)]) *
               (columns[static_cast<size_t>(j)][n] - mean[static_cast<size_t>(j)]);
      double r = cov / (sd[static_cast<size_t>(i)] * sd[static_cast<size_t>(j)]);
      r = std::clamp(r, -1.0, 1.0);
      matrix.at(i, j) = r;
      matrix.at(j, i) = r;
    }
  }
  return matrix;
}

PcaReport pca_from_correlation(const CorrelationMatrix& matrix) {
  validate_correlation(matrix);
  const int dim = matrix.dim;
  SymmetricEigen eigen = jacobi_eigen(matrix.entries, dim);

  for (double& lambda : eigen.values) {
    if (lambda < 0.0) {
      if (lambda < -1e-10)
        throw ComputationError(
            "pca_from_correlation: matrix is not a valid correlation matrix "
            "(eigenvalue " + std::to_string(lambda) + ")");
      lambda = 0.0;
    }
  }

  PcaReport report;
  report.names = matrix.names;
  report.eigenvalues = eigen.values;
  report.pct_variance.reserve(static_cast<size_t>(dim));
  report.cumulative_pct.reserve(static_cast<size_t>(dim));
  double running = 0.0;
  for (double lambda : eigen.values) {
    const double pct = 100.0 * lambda / dim;
    running += pct;
    report.pct_variance.push_back(pct);
    report.cumulative_pct.push_back(running);
  }

  const double lambda1 = eigen.values.front();
  if (!(lambda1 > 0.0))
    throw ComputationError("pca_from_correlation: first eigenvalue is zero");

  // First-component direction, sign fixed so the largest-magnitude entry is
  // positive.
  std::vector<double> v(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i)
    v[static_cast<size_t>(i)] = eigen.vectors[static_cast<size_t>(i) * dim];
  int peak = 0;
  for (int i = 1; i < dim; ++i)
    if (std::fabs(v[static_cast<size_t>(i)]) > std::fabs(v[static_cast<size_t>(peak)]))
      peak = i;
  if (v[static_cast<size_t>(peak)] < 0.0)
    for (double& x : v) x = -x;

  report.sigma = matrix.n_samples >= 2
                     ? 1.0 / std::sqrt(static_cast<double>(matrix.n_samples) - 1.0)
                     : kNan;
  const double half_width = 1.96 * report.se_factor * report.sigma;
  const double root = std::sqrt(lambda1);
  for (int i = 0; i < dim; ++i) {
    const double loading = root * v[static_cast<size_t>(i)];
    report.loadings.push_back(loading);
    report.communalities.push_back(loading * loading);
    report.score_coefficients.push_back(loading / lambda1);
    report.ci_lower.push_back((loading - half_width) / lambda1);
    report.ci_upper.push_back((loading + half_width) / lambda1);
  }

  report.kmo = kNan;
  report.bartlett_chi2 = kNan;
  report.bartlett_df = 0;
  report.bartlett_p = kNan;
  return report;
}

double kmo(const CorrelationMatrix& matrix) {
  validate_correlation(matrix);
  const int dim = matrix.dim;

  double sum_r2 = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i != j) sum_r2 += matrix.at(i, j) * matrix.at(i, j);
  // No off-diagonal correlation at all: the adequacy ratio is 0/0.
  if (sum_r2 == 0.0) return kNan;

  const std::vector<double> inv = invert_matrix(matrix.entries, dim);
  auto inv_at = [&](int i, int j) {
    return inv[static_cast<size_t>(i) * dim + j];
  };
  double sum_q2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      const double q = -inv_at(i, j) / std::sqrt(inv_at(i, i) * inv_at(j, j));
      sum_q2 += q * q;
    }
  }
  return sum_r2 / (sum_r2 + sum_q2);
}

BartlettResult bartlett(const CorrelationMatrix& matrix, int n_samples) {
  validate_correlation(matrix);
  if (matrix.dim < 2)
    throw InputError("bartlett: needs at least 2 indicators");
  if (n_samples <= matrix.dim)
    throw InputError("bartlett: sample size must exceed the dimension");

  const std::vector<double> lower = cholesky_lower(matrix.entries, matrix.dim);
  double log_det = 0.0;
  for (int i = 0; i < matrix.dim; ++i)
    log_det += 2.0 * std::log(lower[static_cast<size_t>(i) * matrix.dim + i]);

  const double p = matrix.dim;
  BartlettResult result;
  result.chi2 = -(n_samples - 1.0 - (2.0 * p + 5.0) / 6.0) * log_det + 0.0;
  if (result.chi2 < 0.0) result.chi2 = 0.0;  // guard fp wobble at det = 1
  result.df = matrix.dim * (matrix.dim - 1) / 2;
  result.p = chi_square_survival(result.chi2, result.df);
  return result;
}

PcaReport analyze_correlation(const CorrelationMatrix& matrix) {
  PcaReport report = pca_from_correlation(matrix);
  report.kmo = kmo(matrix);
  const BartlettResult bart = bartlett(matrix, matrix.n_samples);
  report.bartlett_chi2 = bart.chi2;
  report.bartlett_df = bart.df;
  report.bartlett_p = bart.p;
  return report;
}

DifferenceSeries difference_series(const std::vector<double>& raw_scores) {
  if (raw_scores.size() < 2)
    throw InputError("difference_series: needs at least 2 values");
  for (double v : raw_scores)
    if (!std::isfinite(v))
      throw InputError("difference_series: values must be finite");

  DifferenceSeries series;
  series.sorted_scores = raw_scores;
  // Stable sort: tied scores keep their input order.
  std::stable_sort(series.sorted_scores.begin(), series.sorted_scores.end(),
                   [](double x, double y) { return x > y; });
  series.ds.reserve(series.sorted_scores.size() - 1);
  for (size_t n = 0; n + 1 < series.sorted_scores.size(); ++n)
    series.ds.push_back(series.sorted_scores[n] - series.sorted_scores[n + 1]);

  if (raw_scores.size() >= 3) {
    // Exact O(L^2) pair count; zero gaps (ties) satisfy the >= relation.
    const size_t len = series.ds.size();
    long long favourable = 0;
    for (size_t n = 0; n < len; ++n)
      for (size_t m = n + 1; m < len; ++m)
        if (series.ds[n] >= series.ds[m]) ++favourable;
    const long long pairs = static_cast<long long>(len) * (len - 1) / 2;
    series.regressiveness_index =
        static_cast<double>(favourable) / static_cast<double>(pairs);
  }
  return series;
}

RegressivenessReport regressiveness_report(const std::vector<double>& values,
                                           bool drop_top, bool rescale) {
  std::vector<double> work = values;
  RegressivenessReport report;
  if (drop_top) {
    if (work.size() < 3)
      throw InputError(
          "regressiveness_report: dropping the top needs at least 3 values");
    work.erase(std::max_element(work.begin(), work.end()));
    report.dropped_top = true;
  }
  report.series = difference_series(work);

  double peak = 0.0;
  for (double d : report.series.ds) peak = std::max(peak, d);
  report.rescaled = rescale;
  report.points.reserve(report.series.ds.size());
  for (size_t n = 0; n < report.series.ds.size(); ++n) {
    double d = report.series.ds[n];
    if (rescale && peak > 0.0) d /= peak;
    report.points.push_back({static_cast<int>(n) + 1, d});
  }
  return report;
}

}  // namespace rankdyn
