#pragma once

// Thermal averages and correlation intercepts of the mu-Bose gas, with
// structure function phi_mu(n) = n / (1 + mu n).
//
// Closed forms combine Lerch transcendents Phi(e^{-alpha}, 1, 1/mu - l)
// with the partial-fraction weights A^(r)_l(mu). Those sums cancel heavily
// (the bracket 1 + mu^{-1}(1-z) sum A Phi is of order mu^r e^{-r alpha}),
// so they are evaluated at a multiprecision tier picked from the
// cancellation estimate. The oracle paths sum the defining positive series
// in plain double and share no code with the closed forms.

#include <cstdint>
#include <string>
#include <string_view>

#include "mubose/errors.hpp"
#include "mubose/special_fn.hpp"

namespace mubose {

/// Charged pion mass in MeV, the default particle for the figure grids.
inline constexpr double kPionMassMeV = 139.57;
inline constexpr std::uint64_t kDefaultOracleMaxTerms = 10'000'000;

class DeformationMu {
 public:
  /// Throws DomainError for negative or non-finite mu.
  explicit DeformationMu(double mu);

  double value() const noexcept { return mu_; }
  bool undeformed() const noexcept { return mu_ == 0.0; }

  /// Upper bound 1/(r-1) of the closed-form domain (infinite for r <= 1).
  static double closed_form_bound(int r) noexcept;
  /// mu < 1/(r-1), i.e. every Lerch argument 1/mu - l stays positive.
  bool closed_form_admissible(int r) const noexcept;
  /// 1/mu is an integer in [1, r-1]: some factor of the defining series is 0/0.
  bool series_has_pole(int r) const noexcept;

 private:
  double mu_;
};

/// (T, k, m) in MeV with hbar = c = k_B = 1.
struct ThermoPoint {
  double temperature = 120.0;
  double momentum = 0.0;
  double mass = kPionMassMeV;

  /// alpha = beta hbar omega = sqrt(m^2 + k^2) / T. Validates the point.
  double alpha() const;
};

enum class Method { closed_form, oracle, asymptotic };

std::string_view to_string(Method m) noexcept;

struct CorrelationResult {
  double value = 0.0;
  double error_bound = 0.0;
  Method method = Method::closed_form;
  std::string note;
};

/// What intercept() does when mu >= 1/(r-1).
enum class Fallback { none, oracle };

/// phi_mu(n) = n / (1 + mu n).
double mu_bracket(double n, double mu);

/// [r]_mu! = prod_{j=1}^r j / (1 + mu j).
double mu_factorial(int r, double mu);

/// <phi(N)>: 1/(e^alpha - 1) for mu = 0, otherwise
/// 1/mu - (1 - e^{-alpha}) Phi(e^{-alpha}, 1, 1/mu) / mu^2. `tol` is absolute.
CorrelationResult mean_occupation(DeformationMu d, double alpha, double tol = kDefaultTol);

/// Normalized r-th moment <phi(N) phi(N-1) ... phi(N-r+1)>.
/// mu > 0 requires mu < 1/(r-1) (DomainError otherwise); mu = 0 gives
/// r!/(e^alpha - 1)^r. `tol` is absolute.
CorrelationResult r_moment(DeformationMu d, double alpha, int r, double tol = kDefaultTol);

/// Same moment by direct summation of the defining series with a rigorous
/// tail bound (each factor |phi(n-l)| <= n). `tol` is absolute.
CorrelationResult oracle_moment(DeformationMu d, double alpha, int r,
                                double tol = kDefaultTol,
                                std::uint64_t max_terms = kDefaultOracleMaxTerms);

/// lambda^(r) = <r-th moment> / <phi(N)>^r - 1 for r >= 2; `tol` is an
/// absolute target on lambda. Returns r! - 1 exactly for mu = 0 and the
/// asymptotic limit once <phi(N)> drops below (1e-280)^{1/r}.
CorrelationResult intercept(DeformationMu d, double alpha, int r, double tol = kDefaultTol,
                            Fallback fallback = Fallback::none);

/// lambda^(r) assembled from oracle_moment only.
CorrelationResult oracle_intercept(DeformationMu d, double alpha, int r,
                                   double tol = kDefaultTol);

/// k -> infinity limit (1 + mu)^r [r]_mu! - 1.
double intercept_asymptotic(DeformationMu d, int r);

/// (lambda3 - 3 lambda2) / (2 lambda2^{3/2}); DomainError if lambda2 <= 0.
double r3_combination(double lambda2, double lambda3);

CorrelationResult r3_function(DeformationMu d, double alpha, double tol = kDefaultTol,
                              Fallback fallback = Fallback::none);
CorrelationResult oracle_r3(DeformationMu d, double alpha, double tol = kDefaultTol);

/// r3_combination of the two asymptotic intercepts.
double r3_asymptotic(DeformationMu d);

}  // namespace mubose
