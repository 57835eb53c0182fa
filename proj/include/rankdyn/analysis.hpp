#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rankdyn {

struct CorrelationMatrix {
  int dim = 0;
  std::vector<double> entries;     // row-major dim*dim, symmetric, unit diag
  int n_samples = 0;               // sample size behind the correlations
  std::vector<std::string> names;  // column labels (may be empty)

  double at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }
  double& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
};

/// Pearson correlation matrix of equally long value columns. Requires at
/// least 3 samples; throws ComputationError naming any zero-variance column.
CorrelationMatrix correlation_matrix(
    const std::vector<std::vector<double>>& columns,
    const std::vector<std::string>& names = {});

/// One-component PCA report plus sampling diagnostics. Fields that a given
/// operation does not fill stay NaN (kmo, bartlett_p) or 0 (bartlett_df).
struct PcaReport {
  std::vector<double> eigenvalues;     // descending
  std::vector<double> pct_variance;    // 100 * lambda_i / dim
  std::vector<double> cumulative_pct;
  std::vector<double> loadings;        // first component: sqrt(l1) * v_i1
  std::vector<double> communalities;   // loading^2
  std::vector<double> score_coefficients;  // loading / lambda_1
  std::vector<double> ci_lower;   // (loading - 1.96*se_factor*sigma)/lambda_1
  std::vector<double> ci_upper;   // (loading + 1.96*se_factor*sigma)/lambda_1
  double sigma = std::numeric_limits<double>::quiet_NaN();  // 1/sqrt(n-1)
  double se_factor = 1.5;
  double kmo = std::numeric_limits<double>::quiet_NaN();
  double bartlett_chi2 = std::numeric_limits<double>::quiet_NaN();
  int bartlett_df = 0;
  double bartlett_p = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> names;
};

/// PCA on a correlation matrix: Jacobi eigensolve, eigenvalues descending
/// (tiny negatives above -1e-10 clipped to 0), loading sign fixed so the
/// largest-magnitude entry is positive. Confidence bounds are
/// (loading -/+ 1.96 * se_factor * sigma) / lambda_1 with sigma = 1/sqrt(n-1);
/// they stay NaN when the matrix carries no usable n_samples. Throws
/// InputError for an asymmetric or non-unit-diagonal matrix.
PcaReport pca_from_correlation(const CorrelationMatrix& matrix);

/// Kaiser-Meyer-Olkin sampling adequacy:
///   KMO = sum r_ij^2 / (sum r_ij^2 + sum q_ij^2)  over i != j
/// with anti-image partials q_ij = -inv_ij / sqrt(inv_ii * inv_jj). Returns
/// NaN for a matrix with no off-diagonal correlation at all (0/0 case);
/// throws ComputationError when the matrix is singular.
double kmo(const CorrelationMatrix& matrix);

struct BartlettResult {
  double chi2 = 0.0;
  int df = 0;
  double p = 1.0;
};

/// Bartlett's test of sphericity:
///   chi2 = -(n - 1 - (2p + 5)/6) * ln det(R), df = p(p-1)/2
/// with the p-value from the chi-square survival function. Requires
/// n > dim and a positive-definite matrix.
BartlettResult bartlett(const CorrelationMatrix& matrix, int n_samples);

/// Full validation report: PCA fields plus KMO and Bartlett (using the
/// matrix's own n_samples).
PcaReport analyze_correlation(const CorrelationMatrix& matrix);

struct DifferenceSeries {
  std::vector<double> sorted_scores;  // descending
  std::vector<double> ds;             // adjacent differences, all >= 0
  std::optional<double> regressiveness_index;  // unset for < 3 scores
};

/// Sort scores descending (stable; ties keep input order) and take adjacent
/// differences ds[n] = s(n) - s(n+1). The regressiveness index is the exact
/// fraction of pairs n < m with ds[n] >= ds[m]; it is left unset when fewer
/// than 3 scores make the pair set empty. Requires >= 2 values.
DifferenceSeries difference_series(const std::vector<double>& raw_scores);

struct DsPoint {
  int n = 0;  // 1-based adjacent-pair index
  double ds = 0.0;
};

struct RegressivenessReport {
  DifferenceSeries series;      // computed after the optional top drop
  std::vector<DsPoint> points;  // plot series, rescaled when requested
  bool dropped_top = false;
  bool rescaled = false;        // max emitted ds normalized to 1.0
};

/// Plot-ready difference series with two presentation switches: optionally
/// drop the single top-ranked value before differencing, and optionally
/// rescale the emitted ds values to a maximum of 1.0.
RegressivenessReport regressiveness_report(const std::vector<double>& values,
                                           bool drop_top, bool rescale);

}  // namespace rankdyn
