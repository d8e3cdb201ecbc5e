#pragma once

// p,q-Bose gas counterparts of the mu-gas moments and intercepts, with
// [n]_{p,q} = (p^n - q^n)/(p - q). Used to compare the two deformation
// families, in particular their k -> infinity intercepts, which differ by
// the factor (1 + mu)^r coming from [1]_mu = 1/(1 + mu) != 1 = [1]_{p,q}.

#include <cstdint>

#include "mubose/mu_core.hpp"

namespace mubose {

/// Canonicalized so that 0 < q <= p <= 1; every quantity is symmetric in p, q.
class PQParams {
 public:
  PQParams(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

/// [n]_{p,q} = sum_{j<n} p^j q^{n-1-j} (equal to n p^{n-1} at p = q).
double pq_bracket(int n, const PQParams& pq);

/// [r]_{p,q}! = [r][r-1]...[1].
double pq_factorial(int r, const PQParams& pq);

/// [r]! (e^alpha - 1) / prod_{j=0}^{r} (e^alpha - p^j q^{r-j}), evaluated in
/// the equivalent e^{-alpha}-scaled form.
double pq_moment(const PQParams& pq, double alpha, int r);

/// pq_moment(r) / pq_moment(1)^r - 1, formed in log space.
double pq_intercept(const PQParams& pq, double alpha, int r);

/// The two-parameter intercept in its expanded form
///   [r]! (x-p)^r (x-q)^r / ((x-1)^{r-1} prod_j (x - q^{r-j} p^j)) - 1, x = e^alpha.
double pq_intercept_expanded(const PQParams& pq, double alpha, int r);

/// [r]_{p,q}! - 1.
double pq_intercept_asymptotic(const PQParams& pq, int r);

/// Direct summation (1 - z) sum_n [n][n-1]...[n-r+1] z^n with tail bound
/// n^r z^n (valid since [n]_{p,q} <= n for p, q <= 1). `tol` absolute.
CorrelationResult pq_oracle_moment(const PQParams& pq, double alpha, int r,
                                   double tol = kDefaultTol,
                                   std::uint64_t max_terms = kDefaultOracleMaxTerms);

/// Intercept assembled from pq_oracle_moment.
CorrelationResult pq_oracle_intercept(const PQParams& pq, double alpha, int r,
                                      double tol = kDefaultTol);

/// (lambda_mu,asympt + 1) / [r]_mu!, which equals (1 + mu)^r.
double mu_vs_pq_asymptotic_gap(DeformationMu d, int r);

}  // namespace mubose
