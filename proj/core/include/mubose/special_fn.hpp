#pragma once

// Lerch transcendent Phi(z, 1, a) by direct summation with a certified
// geometric tail bound, plus the exact integer combinatorics behind the
// Taylor coefficients (Stirling numbers of the second kind and the
// g-coefficients of the (x d/dx)^s 1/(x-1) expansion).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mubose/errors.hpp"

namespace mubose {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::uint64_t kDefaultLerchMaxTerms = 100'000'000;

/// Arguments of Phi(z, 1, a) = sum_{n>=0} z^n / (a + n).
struct LerchQuery {
  double z = 0.0;    ///< 0 <= z < 1
  double a = 1.0;    ///< a > 0
  double tol = kDefaultTol;  ///< absolute truncation tolerance
};

/// Throws DomainError unless 0 <= z < 1, a > 0, tol > 0.
void validate(const LerchQuery& q);

template <class Real>
struct SeriesSum {
  Real value{};
  Real tail_bound{};       ///< certified bound on the discarded tail
  std::uint64_t terms = 0; ///< number of summed terms
};

/// Sum of z^n/(a+n) up to the first N with
///   z^{N+1} / ((a+N+1)(1-z)) <= tol.
/// Works for any floating type with the usual arithmetic and comparisons.
template <class Real>
SeriesSum<Real> lerch_sum(const Real& z, const Real& a, const Real& tol,
                          std::uint64_t max_terms = kDefaultLerchMaxTerms) {
  if (!(z >= 0) || !(z < 1)) throw DomainError("lerch_sum: z must satisfy 0 <= z < 1");
  if (!(a > 0)) throw DomainError("lerch_sum: a must be positive");
  if (!(tol > 0)) throw DomainError("lerch_sum: tol must be positive");

  const Real one_minus_z = Real(1) - z;
  SeriesSum<Real> out;
  Real zn = Real(1);
  Real n = Real(0);
  for (std::uint64_t i = 0; i < max_terms; ++i) {
    out.value += zn / (a + n);
    ++out.terms;
    zn *= z;
    n += 1;
    // zn is z^{i+1}, n is i+1: bound on sum_{m>i} z^m/(a+m).
    out.tail_bound = zn / ((a + n) * one_minus_z);
    if (out.tail_bound <= tol) return out;
  }
  throw ConvergenceError("lerch_sum: tail bound did not reach tol within " +
                         std::to_string(max_terms) + " terms");
}

/// Phi(z, 1, a) to absolute accuracy q.tol, in double precision.
double lerch_phi_s1(const LerchQuery& q, std::uint64_t max_terms = kDefaultLerchMaxTerms);

/// Checked 128-bit unsigned; arithmetic overflow throws std::overflow_error.
using ExactInt = boost::multiprecision::checked_uint128_t;

/// Immutable triangle of Stirling numbers of the second kind {n, k} for
/// 0 <= k <= n <= max_n. Entries whose exact value does not fit ExactInt
/// are kept as overflowed and reported on access.
class StirlingTable {
 public:
  static constexpr int kDefaultMaxN = 64;

  explicit StirlingTable(int max_n = kDefaultMaxN);

  int max_n() const noexcept { return max_n_; }

  /// {n, k}; 0 for k > n. Throws RangeError past max_n, OverflowError for
  /// entries that exceed 128 bits.
  ExactInt at(int n, int k) const;

  bool overflowed(int n, int k) const;

 private:
  int max_n_;
  std::vector<std::vector<std::optional<ExactInt>>> rows_;
};

/// {n, k} from the shared default table (max_n = 64).
ExactInt stirling2(int n, int k);

/// g_s^j from g_{s+1}^j = (j+1)(g_s^j + g_s^{j-1}), g_0^0 = 1.
/// Requires 0 <= j <= s. Equals (j+1)! {s+1, j+1}.
ExactInt g_coeff(int s, int j);

/// n! as an exact integer; OverflowError past 34!.
ExactInt factorial_exact(int n);

/// Signed exact integer with the same overflow policy.
using ExactSigned = boost::multiprecision::checked_int128_t;

}  // namespace mubose
