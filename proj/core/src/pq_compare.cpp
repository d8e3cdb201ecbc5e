#include "mubose/pq_compare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace mubose {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

void check_order(int r, int min_order) {
  if (r < min_order) {
    throw DomainError("order r = " + std::to_string(r) + " must be >= " +
                      std::to_string(min_order));
  }
}

// log of 1 - c e^{-alpha} with c = p^j q^{r-j} <= 1, accurate when c z -> 1.
double log_one_minus(double log_c, double alpha) {
  const double z = std::exp(-alpha);
  // 1 - c z = (1 - z) + (1 - c) z
  const double v = -std::expm1(-alpha) - std::expm1(log_c) * z;
  if (!(v > 0.0)) throw DomainError("p,q moment: denominator factor e^alpha - p^j q^(r-j) <= 0");
  return std::log(v);
}

// log of the p,q moment.
double log_pq_moment(const PQParams& pq, double alpha, int r) {
  const double lp = std::log(pq.p());
  const double lq = std::log(pq.q());
  double out = std::log(pq_factorial(r, pq)) + std::log(-std::expm1(-alpha)) - r * alpha;
  for (int j = 0; j <= r; ++j) out -= log_one_minus(j * lp + (r - j) * lq, alpha);
  return out;
}

}  // namespace

PQParams::PQParams(double p, double q) : p_(p), q_(q) {
  if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0)) {
    throw DomainError("p,q parameters must lie in (0, 1]");
  }
  if (q_ > p_) std::swap(p_, q_);
}

double pq_bracket(int n, const PQParams& pq) {
  if (n < 0) throw DomainError("pq_bracket: n must be non-negative");
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += std::pow(pq.p(), j) * std::pow(pq.q(), n - 1 - j);
  return sum;
}

double pq_factorial(int r, const PQParams& pq) {
  check_order(r, 0);
  double f = 1.0;
  for (int j = 1; j <= r; ++j) f *= pq_bracket(j, pq);
  return f;
}

double pq_moment(const PQParams& pq, double alpha, int r) {
  check_alpha(alpha);
  check_order(r, 1);
  return std::exp(log_pq_moment(pq, alpha, r));
}

double pq_intercept(const PQParams& pq, double alpha, int r) {
  check_alpha(alpha);
  check_order(r, 2);
  return std::expm1(log_pq_moment(pq, alpha, r) - r * log_pq_moment(pq, alpha, 1));
}

double pq_intercept_expanded(const PQParams& pq, double alpha, int r) {
  check_alpha(alpha);
  check_order(r, 2);
  const double x = std::exp(alpha);
  const double p = pq.p();
  const double q = pq.q();
  double denom = std::pow(std::expm1(alpha), r - 1);
  for (int j = 0; j <= r; ++j) denom *= x - std::pow(q, r - j) * std::pow(p, j);
  return pq_factorial(r, pq) * std::pow(x - p, r) * std::pow(x - q, r) / denom - 1.0;
}

double pq_intercept_asymptotic(const PQParams& pq, int r) {
  check_order(r, 2);
  return pq_factorial(r, pq) - 1.0;
}

CorrelationResult pq_oracle_moment(const PQParams& pq, double alpha, int r, double tol,
                                   std::uint64_t max_terms) {
  check_alpha(alpha);
  check_order(r, 1);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double omz = -std::expm1(-alpha);
  double sum = 0.0;
  double carry = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  for (std::uint64_t n = static_cast<std::uint64_t>(r);; ++n) {
    double prod = 1.0;
    for (int l = 0; l < r; ++l) prod *= pq_bracket(static_cast<int>(n) - l, pq);
    const double x = prod * std::exp(-alpha * static_cast<double>(n));
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
    ++count;

    const double next = static_cast<double>(n) + 1.0;
    const double q = std::exp(r * std::log1p(1.0 / next) - alpha);
    if (q < 1.0) {
      tail = std::exp(r * std::log(next) - alpha * next) / (1.0 - q);
      if (omz * tail <= tol) break;
    }
    if (count >= max_terms) {
      throw ConvergenceError("pq_oracle_moment: tail bound did not reach tol within " +
                             std::to_string(max_terms) + " terms");
    }
  }
  const double value = omz * (sum + carry);
  return {value, omz * tail + 2.0 * kEps * static_cast<double>(count + r) * value,
          Method::oracle, {}};
}

CorrelationResult pq_oracle_intercept(const PQParams& pq, double alpha, int r, double tol) {
  check_alpha(alpha);
  check_order(r, 2);
  // n = 1 term (1 - z) z is a lower bound on the first moment.
  const double l1 = -std::expm1(-alpha) * std::exp(-alpha);
  double r_fact = 1.0;
  for (int j = 2; j <= r; ++j) r_fact *= j;
  const auto m1 = pq_oracle_moment(pq, alpha, 1, tol / (2.0 * r * r_fact) * l1);
  const auto mr = pq_oracle_moment(pq, alpha, r, tol / 2.0 * std::pow(l1, r));
  const double ratio = mr.value / std::pow(m1.value, r);
  return {ratio - 1.0,
          ratio * (mr.error_bound / mr.value + r * m1.error_bound / m1.value) * 1.01,
          Method::oracle, {}};
}

double mu_vs_pq_asymptotic_gap(DeformationMu d, int r) {
  const double gap = (intercept_asymptotic(d, r) + 1.0) / mu_factorial(r, d.value());
  const double expected = std::pow(1.0 + d.value(), r);
  if (std::abs(gap - expected) > 1e-12 * expected) {
    throw std::logic_error("asymptotic gap deviates from (1 + mu)^r");
  }
  return gap;
}

}  // namespace mubose
