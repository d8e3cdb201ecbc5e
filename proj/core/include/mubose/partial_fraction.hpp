#pragma once

// Simple-fraction weights A^(r)_l(mu) of
//
//   prod_{l<r} (n-l)/(1+mu(n-l)) = mu^{-r} (1 + sum_{l<r} A^(r)_l / (1+mu(n-l)))
//
// generated by the order-raising recurrence
//   A^(r+1)_l = A^(r)_l (1 + 1/(mu(r-l))),          l < r
//   A^(r+1)_r = -1 - sum_{l<r} A^(r)_l / (mu(r-l)),
// seeded with A^(1)_0 = -1.

#include <cstddef>
#include <string>
#include <vector>

#include "mubose/errors.hpp"

namespace mubose {

struct ACoefficients {
  int order = 1;
  double mu = 0.0;
  std::vector<double> values;  ///< values[l] = A^(order)_l(mu)

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t l) const { return values[l]; }
};

namespace detail {
inline void check_a_domain(int r, bool mu_positive) {
  if (r < 1) throw DomainError("a_coeffs: order r must be >= 1, got " + std::to_string(r));
  if (!mu_positive) throw DomainError("a_coeffs: mu must be positive");
}
}  // namespace detail

/// Weights in any floating type; `mu` is taken as exact.
template <class Real>
std::vector<Real> a_coeffs_as(int r, const Real& mu) {
  detail::check_a_domain(r, mu > 0);
  std::vector<Real> a{Real(-1)};
  a.reserve(static_cast<std::size_t>(r));
  for (int k = 1; k < r; ++k) {
    Real last = Real(-1);
    for (int l = 0; l < k; ++l) {
      const Real inv = Real(1) / (mu * (k - l));
      last -= a[l] * inv;
      a[l] *= Real(1) + inv;
    }
    a.push_back(last);
  }
  return a;
}

ACoefficients a_coeffs(int r, double mu);

/// prod - mu^{-r}(1 + sum A/(1+mu(n-l))) at a real n, evaluated at a working
/// precision wide enough to absorb the cancellation on the right-hand side.
/// Throws PoleError if some 1 + mu(n-l) vanishes (within 1e-12 relative).
double expansion_residual(int r, double mu, double n);

/// Left-hand product alone, in double.
double fraction_product(int r, double mu, double n);

}  // namespace mubose
