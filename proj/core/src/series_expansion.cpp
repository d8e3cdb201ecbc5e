#include "mubose/series_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mubose/partial_fraction.hpp"
#include "precision.hpp"

namespace mubose {

namespace {

void check_indices(int s, int l) {
  if (s < 0 || l < 0) throw DomainError("c_s(l): s and l must be non-negative");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

// c_s(l) at working precision Real. The factors j!{s+1,j+1} come from
// h_{t+1}^j = (j+1) h_t^j + j h_t^{j-1}, h_0^0 = 1 (h = g/(j+1)).
template <class Real>
Real c_value_as(int s, int l, double alpha) {
  using std::exp;
  using std::pow;
  const Real a(alpha);
  std::vector<Real> h{Real(1)};
  for (int t = 0; t < s; ++t) {
    std::vector<Real> next(h.size() + 1, Real(0));
    for (std::size_t j = 0; j < next.size(); ++j) {
      if (j < h.size()) next[j] += Real(static_cast<double>(j + 1)) * h[j];
      if (j > 0) next[j] += Real(static_cast<double>(j)) * h[j - 1];
    }
    h = std::move(next);
  }
  const Real inv = Real(1) / (exp(a) - Real(1));
  Real bose(0);
  Real power = inv;
  for (const auto& hj : h) {
    bose += hj * power;
    power *= inv;
  }
  if (s % 2 == 1) bose = -bose;

  const Real damp = exp(-a * l);
  Real finite = s == 0 ? damp : Real(0);
  for (int j = 1; j <= l; ++j) finite += pow(Real(j), s) * exp(-a * (l - j));
  return finite + damp * bose;
}

// Bound on sum_{n>n_max} n^s e^{-alpha n}; infinity when the ratio test fails.
double tail_bound(int s, double alpha, std::int64_t n_max) {
  const double next = static_cast<double>(n_max) + 1.0;
  const double q = std::exp(s * std::log1p(1.0 / next) - alpha);
  if (!(q < 1.0)) return std::numeric_limits<double>::infinity();
  return std::exp(s * std::log(next) - alpha * next) / (1.0 - q);
}

}  // namespace

double CCoefficient::reconstruct() const {
  const double inv = 1.0 / std::expm1(alpha);
  double bose = 0.0;
  double power = inv;
  for (const auto& b : bose_terms) {
    bose += b.convert_to<double>() * power;
    power *= inv;
  }
  double finite = s == 0 ? std::exp(-alpha * l) : 0.0;
  for (int j = 1; j <= l; ++j) {
    finite += shift_terms[j - 1].convert_to<double>() * std::exp(-alpha * (l - j));
  }
  return finite + std::exp(-alpha * l) * bose;
}

CCoefficient c_coeff(int s, int l, double alpha) {
  check_indices(s, l);
  check_alpha(alpha);
  CCoefficient c{s, l, alpha, 0.0, {}, {}};
  try {
    for (int j = 0; j <= s; ++j) {
      ExactSigned term(factorial_exact(j) * stirling2(s + 1, j + 1));
      c.bose_terms.push_back(s % 2 == 0 ? term : ExactSigned(-term));
    }
    for (int j = 1; j <= l; ++j) {
      ExactInt p(1);
      for (int t = 0; t < s; ++t) p *= j;
      c.shift_terms.push_back(p);
    }
  } catch (const std::overflow_error& e) {
    throw OverflowError(std::string("c_coeff: exact coefficient exceeds 128 bits (") +
                        e.what() + ")");
  }
  c.value = c.reconstruct();
  return c;
}

double c_value(int s, int l, double alpha) {
  check_indices(s, l);
  check_alpha(alpha);
  return c_value_as<double>(s, l, alpha);
}

std::int64_t oracle_terms_needed(int s, double alpha, double tol) {
  check_alpha(alpha);
  for (std::int64_t n = 0; n < 100'000'000; ++n) {
    if (tail_bound(s, alpha, n) <= tol) return n;
  }
  throw ConvergenceError("oracle_terms_needed: no n_max below 1e8 meets the tolerance");
}

double series_coeff_oracle(int s, int l, double alpha, std::int64_t n_max) {
  check_indices(s, l);
  check_alpha(alpha);
  if (n_max < l || tail_bound(s, alpha, n_max) >= 1e-12) {
    throw ConvergenceError("series_coeff_oracle: n_max = " + std::to_string(n_max) +
                           " leaves a tail above 1e-12");
  }
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const double x = std::pow(static_cast<double>(n - l), s) * std::exp(-alpha * n);
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  const double total = sum + carry;
  return s % 2 == 0 ? total : -total;
}

namespace {

void check_taylor_domain(const DeformationMu& d, double alpha, int r) {
  if (d.undeformed()) throw DomainError("Taylor expansion in mu requires mu > 0");
  check_alpha(alpha);
  if (r < 1) throw DomainError("order r must be >= 1");
}

// Digits to absorb mu^{-r} sum |A_l c_s(l)| mu^s against an O(1) result.
double taylor_digits(const DeformationMu& d, double alpha, int r, int s_max) {
  const double mu = d.value();
  const auto a = a_coeffs(r, mu);
  double worst = 1.0 / -std::expm1(-alpha);
  for (int s = 0; s <= s_max; ++s) {
    for (int l = 0; l < r; ++l) {
      const double t = std::abs(a[l] * c_value(s, l, alpha)) * std::pow(mu, s);
      if (std::isfinite(t)) worst = std::max(worst, t);
    }
  }
  return 30.0 + std::max(0.0, std::log10(worst) - r * std::log10(mu));
}

}  // namespace

double taylor_moment(DeformationMu d, double alpha, int r, int order) {
  check_taylor_domain(d, alpha, r);
  if (order < 0) throw DomainError("taylor_moment: truncation order must be >= 0");
  return detail::with_precision(taylor_digits(d, alpha, r, order), [&](auto tag) {
    using Real = typename decltype(tag)::type;
    using std::exp;
    using std::pow;
    const Real mu(d.value());
    const auto a = a_coeffs_as<Real>(r, mu);
    Real sum = Real(1) / (Real(1) - exp(-Real(alpha)));
    Real mu_s(1);
    for (int s = 0; s <= order; ++s) {
      for (int l = 0; l < r; ++l) sum += a[l] * c_value_as<Real>(s, l, alpha) * mu_s;
      mu_s *= mu;
    }
    return detail::to_double(Real(sum / pow(mu, r)));
  });
}

std::vector<DivergenceEntry> divergence_diagnostic(DeformationMu d, double alpha, int r,
                                                   int s_max) {
  check_taylor_domain(d, alpha, r);
  if (s_max < 0) throw DomainError("divergence_diagnostic: s_max must be >= 0");
  return detail::with_precision(taylor_digits(d, alpha, r, s_max), [&](auto tag) {
    using Real = typename decltype(tag)::type;
    using std::abs;
    using std::exp;
    using std::pow;
    const Real mu(d.value());
    const auto a = a_coeffs_as<Real>(r, mu);
    const Real inv_mu_r = Real(1) / pow(mu, r);
    Real sum = Real(1) / (Real(1) - exp(-Real(alpha)));
    Real mu_s(1);
    std::vector<DivergenceEntry> rows;
    for (int s = 0; s <= s_max; ++s) {
      Real term(0);
      for (int l = 0; l < r; ++l) term += a[l] * c_value_as<Real>(s, l, alpha);
      term *= mu_s;
      sum += term;
      mu_s *= mu;
      DivergenceEntry e{s, detail::to_double(Real(sum * inv_mu_r)),
                        detail::to_double(Real(abs(term))), false};
      if (!std::isfinite(e.term_magnitude) || !std::isfinite(e.partial_sum)) {
        e.overflow = true;
        rows.push_back(e);
        break;
      }
      rows.push_back(e);
    }
    return rows;
  });
}

int growth_onset(const std::vector<DivergenceEntry>& rows) {
  int best = -1;
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& e : rows) {
    if (e.overflow) continue;
    if (e.term_magnitude < smallest) {
      smallest = e.term_magnitude;
      best = e.s;
    }
  }
  return best;
}

bool eventually_increasing(const std::vector<DivergenceEntry>& rows, int window) {
  std::vector<double> mags;
  for (const auto& e : rows) {
    if (!e.overflow) mags.push_back(e.term_magnitude);
  }
  if (window < 2 || static_cast<int>(mags.size()) < window) return false;
  for (std::size_t i = mags.size() - window + 1; i < mags.size(); ++i) {
    if (!(mags[i] > mags[i - 1])) return false;
  }
  return true;
}

}  // namespace mubose
