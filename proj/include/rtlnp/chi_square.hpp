#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace rtlnp {

// Chi-square distance between two histogram vectors,
// 0.5 * sum_i (x_i - y_i)^2 / (x_i + y_i), where terms with a zero denominator
// contribute 0. Symmetric, non-negative, and 0 iff x == y.
template <typename DerivedX, typename DerivedY>
double chi_square(const Eigen::MatrixBase<DerivedX>& x,
                  const Eigen::MatrixBase<DerivedY>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("chi_square: vector lengths differ");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = static_cast<double>(x.derived()(i));
    const double yi = static_cast<double>(y.derived()(i));
    const double den = xi + yi;
    if (den != 0.0) {
      const double diff = xi - yi;
      sum += diff * diff / den;
    }
  }
  return 0.5 * sum;
}

}  // namespace rtlnp
