#include "rankdyn/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rankdyn/errors.hpp"

namespace rankdyn {

namespace {

constexpr double kOffDiagonalTol = 1e-12;
constexpr int kMaxSweeps = 100;

double max_off_diagonal(const std::vector<double>& a, int dim) {
  double worst = 0.0;
  for (int p = 0; p < dim - 1; ++p)
    for (int q = p + 1; q < dim; ++q)
      worst = std::max(worst, std::fabs(a[static_cast<size_t>(p) * dim + q]));
  return worst;
}

}  // namespace

SymmetricEigen jacobi_eigen(const std::vector<double>& matrix, int dim) {
  if (dim <= 0 || matrix.size() != static_cast<size_t>(dim) * dim)
    throw InputError("jacobi_eigen: matrix size does not match dimension");

  std::vector<double> a = matrix;
  std::vector<double> v(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i) * dim + i] = 1.0;

  auto at = [&](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<size_t>(i) * dim + j];
  };

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (max_off_diagonal(a, dim) < kOffDiagonalTol) {
      converged = true;
      break;
    }
    // Fixed sweep order (row-major over the upper triangle) keeps the
    // rotation sequence, and therefore the output bits, deterministic.
    for (int p = 0; p < dim - 1; ++p) {
      for (int q = p + 1; q < dim; ++q) {
        const double apq = at(a, p, q);
        if (std::fabs(apq) < kOffDiagonalTol) continue;

        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        double t;
        if (std::fabs(theta) > 1e154) {
          t = 1.0 / (2.0 * theta);  // avoid overflow in theta^2
        } else {
          t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = at(a, p, p);
        const double aqq = at(a, q, q);
        at(a, p, p) = app - t * apq;
        at(a, q, q) = aqq + t * apq;
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;

        for (int i = 0; i < dim; ++i) {
          if (i == p || i == q) continue;
          const double aip = at(a, i, p);
          const double aiq = at(a, i, q);
          at(a, i, p) = aip - s * (aiq + tau * aip);
          at(a, p, i) = at(a, i, p);
          at(a, i, q) = aiq + s * (aip - tau * aiq);
          at(a, q, i) = at(a, i, q);
        }
        for (int i = 0; i < dim; ++i) {
          const double vip = at(v, i, p);
          const double viq = at(v, i, q);
          at(v, i, p) = vip - s * (viq + tau * vip);
          at(v, i, q) = viq + s * (vip - tau * viq);
        }
      }
    }
  }
  if (!converged && max_off_diagonal(a, dim) >= kOffDiagonalTol)
    throw ComputationError("jacobi_eigen: no convergence after " +
                           std::to_string(kMaxSweeps) + " sweeps");

  // Sort eigenpairs by descending eigenvalue; ties keep original order.
  std::vector<int> order(static_cast<size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[static_cast<size_t>(x) * dim + x] > a[static_cast<size_t>(y) * dim + y];
  });

  SymmetricEigen result;
  result.dim = dim;
  result.values.resize(static_cast<size_t>(dim));
  result.vectors.resize(static_cast<size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    const int src = order[static_cast<size_t>(j)];
    result.values[static_cast<size_t>(j)] = a[static_cast<size_t>(src) * dim + src];
    for (int i = 0; i < dim; ++i)
      result.vectors[static_cast<size_t>(i) * dim + j] =
          v[static_cast<size_t>(i) * dim + src];
  }
  return result;
}

std::vector<double> cholesky_lower(const std::vector<double>& matrix, int dim) {
  if (dim <= 0 || matrix.size() != static_cast<size_t>(dim) * dim)
    throw InputError("cholesky_lower: matrix size does not match dimension");

  std::vector<double> l(static_cast<size_t>(dim) * dim, 0.0);
  for (int j = 0; j < dim; ++j) {
    double d = matrix[static_cast<size_t>(j) * dim + j];
    for (int k = 0; k < j; ++k) {
      const double ljk = l[static_cast<size_t>(j) * dim + k];
      d -= ljk * ljk;
    }
    if (!(d > 0.0))
      throw ComputationError("cholesky_lower: matrix is not positive definite");
    const double diag = std::sqrt(d);
    l[static_cast<size_t>(j) * dim + j] = diag;
    for (int i = j + 1; i < dim; ++i) {
      double sum = matrix[static_cast<size_t>(i) * dim + j];
      for (int k = 0; k < j; ++k)
        sum -= l[static_cast<size_t>(i) * dim + k] *
               l[static_cast<size_t>(j) * dim + k];
      l[static_cast<size_t>(i) * dim + j] = sum / diag;
    }
  }
  return l;
}

std::vector<double> invert_matrix(const std::vector<double>& matrix, int dim) {
  if (dim <= 0 || matrix.size() != static_cast<size_t>(dim) * dim)
    throw InputError("invert_matrix: matrix size does not match dimension");

  // Gauss-Jordan on [A | I] with partial pivoting.
  std::vector<double> a = matrix;
  std::vector<double> inv(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) inv[static_cast<size_t>(i) * dim + i] = 1.0;

  double scale = 0.0;
  for (double x : matrix) scale = std::max(scale, std::fabs(x));
  const double tiny = std::max(scale, 1.0) * 1e-13;

  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::fabs(a[static_cast<size_t>(r) * dim + col]) >
          std::fabs(a[static_cast<size_t>(pivot) * dim + col]))
        pivot = r;
    const double pv = a[static_cast<size_t>(pivot) * dim + col];
    if (std::fabs(pv) < tiny)
      throw ComputationError("invert_matrix: matrix is singular");
    if (pivot != col) {
      for (int c = 0; c < dim; ++c) {
        std::swap(a[static_cast<size_t>(pivot) * dim + c],
                  a[static_cast<size_t>(col) * dim + c]);
        std::swap(inv[static_cast<size_t>(pivot) * dim + c],
                  inv[static_cast<size_t>(col) * dim + c]);
      }
    }
    const double inv_pv = 1.0 / a[static_cast<size_t>(col) * dim + col];
    for (int c = 0; c < dim; ++c) {
      a[static_cast<size_t>(col) * dim + c] *= inv_pv;
      inv[static_cast<size_t>(col) * dim + c] *= inv_pv;
    }
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<size_t>(r) * dim + col];
      if (f == 0.0) continue;
      for (int c = 0; c < dim; ++c) {
        a[static_cast<size_t>(r) * dim + c] -=
            f * a[static_cast<size_t>(col) * dim + c];
        inv[static_cast<size_t>(r) * dim + c] -=
            f * inv[static_cast<size_t>(col) * dim + c];
      }
    }
  }
  return inv;
}

namespace {

// Regularized lower incomplete gamma P(a, x) by power series; valid x < a+1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n <= 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction; valid x >= a+1.
double gamma_q_fraction(double a, double x) {
  constexpr double kFloor = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kFloor;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFloor) d = kFloor;
    c = b + an / c;
    if (std::fabs(c) < kFloor) c = kFloor;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x))
    throw InputError("regularized_gamma_q: requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_square_survival(double x, int df) {
  if (df < 1) throw InputError("chi_square_survival: df must be >= 1");
  if (!std::isfinite(x) || x < 0.0)
    throw InputError("chi_square_survival: statistic must be finite and >= 0");
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace rankdyn
