#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "basisrisk/errors.hpp"
#include "basisrisk/panel.hpp"
#include "basisrisk/types.hpp"

namespace basisrisk {

/// Second-moment summary of an N-field panel: covariance, its diagonal, and
/// the correlation matrix. Zero-variance fields are listed in `degenerate`;
/// their correlation rows/columns (including the diagonal) are set to zero.
template <typename Scalar>
struct MomentSummary {
  Matrix<Scalar> sigma;
  Vector<Scalar> var_diag;
  Matrix<Scalar> corr;
  Index n = 0;
  Index t = 0;
  VarianceDenominator denominator = VarianceDenominator::unbiased;
  std::vector<Index> degenerate;

  Index n_effective() const { return n - static_cast<Index>(degenerate.size()); }
};

template <typename Scalar>
struct EigenSummary {
  Vector<Scalar> eigenvalues;        // descending; Gram path omits trailing zeros
  Vector<Scalar> first_eigenvector;  // unit norm, sign-normalized
  Scalar trace = Scalar(0);          // sum of all eigenvalues of the input
  Scalar top_share = Scalar(0);      // eigenvalues[0] / trace
};

/// Sign convention: flip so the entry sum is nonnegative; a zero sum is
/// broken toward a positive first nonzero entry.
template <typename Derived>
void normalize_sign(Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Scalar s = v.sum();
  if (s == Scalar(0)) {
    for (Index i = 0; i < v.size(); ++i) {
      if (v[i] != Scalar(0)) {
        s = v[i];
        break;
      }
    }
  }
  if (s < Scalar(0)) v = -v;
}

/// Rows demeaned over time: X = Y - rowmean(Y).
template <typename Derived>
Matrix<typename Derived::Scalar> centered_rows(
    const Eigen::MatrixBase<Derived>& values) {
  return values.colwise() - values.rowwise().mean();
}

template <typename Derived>
MomentSummary<typename Derived::Scalar> compute_moments(
    const Eigen::MatrixBase<Derived>& values,
    VarianceDenominator denominator = VarianceDenominator::unbiased) {
  using Scalar = typename Derived::Scalar;
  const Index n = values.rows();
  const Index t = values.cols();
  if (t < 2)
    throw Error(ErrorKind::insufficient_data,
                "covariance requires at least two periods");
  MomentSummary<Scalar> m;
  m.n = n;
  m.t = t;
  m.denominator = denominator;
  const Matrix<Scalar> x = centered_rows(values);
  const Scalar dof = static_cast<Scalar>(denominator_value(denominator, t));
  m.sigma.noalias() = (x * x.transpose()) / dof;
  m.sigma = ((m.sigma + m.sigma.transpose()) / Scalar(2)).eval();
  m.var_diag = m.sigma.diagonal();
  Vector<Scalar> inv_sd(n);
  for (Index i = 0; i < n; ++i) {
    if (m.var_diag[i] > Scalar(0)) {
      inv_sd[i] = Scalar(1) / std::sqrt(m.var_diag[i]);
    } else {
      inv_sd[i] = Scalar(0);
      m.degenerate.push_back(i);
    }
  }
  m.corr = inv_sd.asDiagonal() * m.sigma * inv_sd.asDiagonal();
  for (Index i : m.degenerate) {
    m.corr.row(i).setZero();
    m.corr.col(i).setZero();
  }
  return m;
}

inline MomentSummary<double> compute_moments(
    const YieldPanel& panel,
    VarianceDenominator denominator = VarianceDenominator::unbiased) {
  return compute_moments(panel.values(), denominator);
}

/// Top eigenpair of a symmetric PSD matrix. The input must be symmetric to
/// within 1e-10 of its largest entry. Uses Eigen's self-adjoint solver
/// (deterministic direct tridiagonalization, no randomized methods).
template <typename Derived>
EigenSummary<typename Derived::Scalar> top_eigen(
    const Eigen::MatrixBase<Derived>& matrix) {
  using Scalar = typename Derived::Scalar;
  if (matrix.rows() != matrix.cols())
    throw Error(ErrorKind::validation, "top_eigen: matrix must be square");
  const Scalar scale = matrix.cwiseAbs().maxCoeff();
  const Scalar asym =
      (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > Scalar(1e-10) * std::max(scale, Scalar(1)))
    throw Error(ErrorKind::validation, "top_eigen: matrix is not symmetric");

  const Matrix<Scalar> sym = (matrix + matrix.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::numeric, "top_eigen: eigensolver failed");

  EigenSummary<Scalar> out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.first_eigenvector = solver.eigenvectors().col(matrix.cols() - 1);
  out.first_eigenvector.normalize();
  normalize_sign(out.first_eigenvector);
  out.trace = out.eigenvalues.sum();
  if (!(out.trace > Scalar(0)))
    throw Error(ErrorKind::degenerate, "top_eigen: nonpositive trace");
  out.top_share = out.eigenvalues[0] / out.trace;
  return out;
}

enum class EigenMethod {
  automatic,  // gram when N > T, direct otherwise
  direct,     // form the N x N matrix
  gram,       // decompose the T x T Gram matrix of the centered data
};

/// Eigenstructure of X X' / dof without necessarily forming the N x N
/// matrix, where X holds one centered (or standardized) series per row.
///
/// X X' and X' X share their min(N, T) leading eigenvalues and their trace,
/// so for N >> T the T x T Gram matrix X' X gives the same spectrum, and the
/// long eigenvector is recovered as X u / |X u| from the short one.
template <typename Derived>
EigenSummary<typename Derived::Scalar> top_eigen_rows(
    const Eigen::MatrixBase<Derived>& centered, double dof,
    EigenMethod method = EigenMethod::automatic) {
  using Scalar = typename Derived::Scalar;
  const Index n = centered.rows();
  const Index t = centered.cols();
  if (!(dof > 0))
    throw Error(ErrorKind::validation, "top_eigen_rows: dof must be positive");
  const bool use_gram =
      method == EigenMethod::gram ||
      (method == EigenMethod::automatic && n > t);
  if (!use_gram) {
    const Matrix<Scalar> sigma =
        (centered * centered.transpose()) / static_cast<Scalar>(dof);
    return top_eigen(sigma);
  }
  const Matrix<Scalar> gram =
      (centered.transpose() * centered) / static_cast<Scalar>(dof);
  EigenSummary<Scalar> out = top_eigen(gram);
  Vector<Scalar> lifted = centered * out.first_eigenvector;
  const Scalar norm = lifted.norm();
  if (norm > Scalar(0)) {
    lifted /= norm;
  } else {
    // top eigenvalue 0: any unit vector spans the (null) top eigenspace
    lifted.setZero();
    lifted[0] = Scalar(1);
  }
  normalize_sign(lifted);
  out.first_eigenvector = std::move(lifted);
  return out;
}

/// Standardized centered rows for correlation-metric eigenstructure:
/// zero-variance rows are removed, the rest divided by their sd.
/// `kept` (optional) receives the surviving original row indices.
template <typename Derived>
Matrix<typename Derived::Scalar> standardized_rows(
    const Eigen::MatrixBase<Derived>& values, VarianceDenominator denominator,
    std::vector<Index>* kept = nullptr) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> x = centered_rows(values);
  const Scalar dof =
      static_cast<Scalar>(denominator_value(denominator, values.cols()));
  std::vector<Index> rows;
  for (Index i = 0; i < x.rows(); ++i)
    if (x.row(i).squaredNorm() / dof > Scalar(0)) rows.push_back(i);
  if (rows.empty())
    throw Error(ErrorKind::degenerate,
                "all fields have zero variance");
  Matrix<Scalar> z(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Scalar sd = std::sqrt(x.row(rows[k]).squaredNorm() / dof);
    z.row(static_cast<Index>(k)) = x.row(rows[k]) / sd;
  }
  if (kept) *kept = std::move(rows);
  return z;
}

/// Metric behind an eigen-based summary: correlation matrix (average R²) or
/// covariance matrix (variance-weighted R²).
enum class EigenMetric { correlation, covariance };

/// Panel shortcut: top eigenstructure of the panel's correlation or
/// covariance matrix, choosing the Gram path automatically when N > T.
/// For the correlation metric the eigenvector covers non-degenerate fields
/// only, in panel order (use MomentSummary::degenerate to map back).
inline EigenSummary<double> top_eigen(
    const YieldPanel& panel, EigenMetric metric,
    VarianceDenominator denominator = VarianceDenominator::unbiased,
    EigenMethod method = EigenMethod::automatic) {
  const double dof =
      denominator_value(denominator, panel.period_count());
  if (metric == EigenMetric::covariance)
    return top_eigen_rows(centered_rows(panel.values()), dof, method);
  const Matrix<double> z =
      standardized_rows(panel.values(), denominator);
  return top_eigen_rows(z, dof, method);
}

}  // namespace basisrisk
