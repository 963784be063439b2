#pragma once

#include <Eigen/Dense>

namespace basisrisk {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Denominator used for sample variances and covariances.
enum class VarianceDenominator {
  unbiased,            // T - 1
  maximum_likelihood,  // T
};

inline double denominator_value(VarianceDenominator d, Index t) {
  return d == VarianceDenominator::unbiased ? static_cast<double>(t - 1)
                                            : static_cast<double>(t);
}

}  // namespace basisrisk
