#include "mubose/partial_fraction.hpp"

#include <algorithm>
#include <cmath>

#include "precision.hpp"

namespace mubose {

ACoefficients a_coeffs(int r, double mu) {
  detail::check_a_domain(r, mu > 0.0);
  // Long double keeps a few extra bits through the product updates.
  const auto wide = a_coeffs_as<long double>(r, static_cast<long double>(mu));
  ACoefficients out{r, mu, {}};
  out.values.assign(wide.begin(), wide.end());
  return out;
}

namespace {

void check_poles(int r, double mu, double n) {
  for (int l = 0; l < r; ++l) {
    const double x = mu * (n - l);
    if (std::abs(1.0 + x) <= 1e-12 * std::max(1.0, std::abs(x))) {
      throw PoleError("expansion_residual: 1 + mu(n - " + std::to_string(l) +
                      ") vanishes at n = " + std::to_string(n));
    }
  }
}

}  // namespace

double fraction_product(int r, double mu, double n) {
  double p = 1.0;
  for (int l = 0; l < r; ++l) p *= (n - l) / (1.0 + mu * (n - l));
  return p;
}

double expansion_residual(int r, double mu, double n) {
  detail::check_a_domain(r, mu > 0.0);
  check_poles(r, mu, n);

  // Size of the right-hand terms relative to the product sets the digits.
  const auto est = a_coeffs(r, mu);
  double rhs_scale = 1.0;
  for (int l = 0; l < r; ++l) rhs_scale += std::abs(est[l]) / std::abs(1.0 + mu * (n - l));
  const double log_scale = std::log10(rhs_scale) - r * std::log10(mu);
  const double lhs = std::abs(fraction_product(r, mu, n));
  const double digits = std::max(20.0, log_scale - std::log10(std::max(lhs, 1e-12)) + 20.0);

  return detail::with_precision(digits, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const Real m(mu);
    const Real x(n);
    const auto a = a_coeffs_as<Real>(r, m);
    Real prod(1);
    Real sum(1);
    for (int l = 0; l < r; ++l) {
      const Real d = Real(1) + m * (x - l);
      prod *= (x - l) / d;
      sum += a[l] / d;
    }
    const Real rhs = sum / pow(m, r);
    return detail::to_double(Real(prod - rhs));
  });
}

}  // namespace mubose
