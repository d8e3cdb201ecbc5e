#include "mubose/mu_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "mubose/partial_fraction.hpp"
#include "precision.hpp"

namespace mubose {

namespace {

constexpr double kLn10 = 2.302585092994045684;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// <phi(N)>^r below this is treated as the k -> infinity regime.
constexpr double kUnderflowFloor = 1e-280;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha = beta hbar omega must be positive and finite");
  }
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

void check_order(int r, int min_order) {
  if (r < min_order) {
    throw DomainError("order r = " + std::to_string(r) + " must be >= " +
                      std::to_string(min_order));
  }
}

double factorial_double(int r) {
  double f = 1.0;
  for (int j = 2; j <= r; ++j) f *= j;
  return f;
}

std::string closed_form_message(const DeformationMu& d, int r) {
  return "closed form for r = " + std::to_string(r) + " requires mu < 1/(r-1) = " +
         std::to_string(DeformationMu::closed_form_bound(r)) + ", got mu = " +
         std::to_string(d.value()) + "; the oracle fallback evaluates the series directly";
}

// Natural log of the n = 1 term (1 - z) z / (1 + mu), a lower bound on <phi(N)>.
double log_first_term(double mu, double alpha) {
  return std::log(-std::expm1(-alpha)) - alpha - std::log1p(mu);
}

std::optional<CorrelationResult> underflow_guard(const DeformationMu& d, double alpha, int r) {
  if (r * log_first_term(d.value(), alpha) >= std::log(kUnderflowFloor)) return std::nullopt;
  const double limit = intercept_asymptotic(d, r);
  // Leading correction to the limit is O(e^{-alpha}) with an O(r^2) coefficient.
  const double err = (limit + 1.0) * 4.0 * r * r * std::exp(-alpha);
  return CorrelationResult{limit, err, Method::asymptotic,
                           "mean occupation below (1e-280)^(1/r); returned the k -> inf limit"};
}

struct MomentPlan {
  double log10_lerch_tol = 0.0;
  double digits = 0.0;
};

// Chooses the Lerch tolerance and working digits so the closed-form moment
// lands within 10^log10_target (absolute).
MomentPlan plan_moment(double mu, double alpha, int r, double log10_target) {
  const double z = std::exp(-alpha);
  const double omz = -std::expm1(-alpha);
  const auto a = a_coeffs(r, mu);
  double sum_abs = 0.0;
  double weighted = 0.0;
  double a_min = std::numeric_limits<double>::infinity();
  for (int l = 0; l < r; ++l) {
    const double arg = 1.0 / mu - l;
    const double phi_bound = 1.0 / arg + z / ((arg + 1.0) * omz);
    sum_abs += std::abs(a[l]);
    weighted += std::abs(a[l]) * phi_bound;
    a_min = std::min(a_min, arg);
  }
  const double log10_mu = std::log10(mu);
  const double log10_scale = std::log10(1.0 + omz / mu * weighted) - r * log10_mu;

  MomentPlan plan;
  plan.log10_lerch_tol = log10_target - std::log10(2.0) + (r + 1) * log10_mu -
                         std::log10(omz) - std::log10(sum_abs);
  double n_terms = 1.0;
  if (z > 0.0) {
    const double need = plan.log10_lerch_tol + std::log10(a_min * omz);
    if (need < 0.0) n_terms = need / std::log10(z) + 1.0;
  }
  plan.digits = log10_scale + std::log10(n_terms + 4.0 * r * r + 20.0) + std::log10(2.0) -
                log10_target + 3.0;
  plan.digits = std::max(plan.digits, 20.0);
  return plan;
}

template <class Real>
struct MomentValue {
  Real value;
  Real error;
};

// mu^{-r} (1 + (1 - z)/mu sum_l A_l Phi(z, 1, 1/mu - l)) at working precision Real.
template <class Real>
MomentValue<Real> closed_moment(double mu, double alpha, int r, double log10_lerch_tol) {
  using std::abs;
  using std::exp;
  using std::pow;
  const Real m(mu);
  const Real z = exp(-Real(alpha));
  const Real omz = Real(1) - z;
  const Real tau = pow(Real(10), Real(log10_lerch_tol));
  const auto a = a_coeffs_as<Real>(r, m);
  const Real inv_mu = Real(1) / m;

  Real acc(0), acc_abs(0), trunc(0);
  std::uint64_t terms = 0;
  for (int l = 0; l < r; ++l) {
    const auto s = lerch_sum<Real>(z, inv_mu - l, tau);
    acc += a[l] * s.value;
    acc_abs += abs(a[l]) * s.value;
    trunc += abs(a[l]) * s.tail_bound;
    terms += s.terms;
  }
  const Real mu_r = pow(m, r);
  const Real c = omz / m;
  const Real scale = (Real(1) + c * acc_abs) / mu_r;
  const Real rounding = std::numeric_limits<Real>::epsilon() *
                        Real(static_cast<double>(terms) + 4.0 * r * r + 20.0) * scale;
  return {(Real(1) + c * acc) / mu_r, c * trunc / mu_r + rounding};
}

CorrelationResult closed_moment_result(double mu, double alpha, int r, double log10_target) {
  const auto plan = plan_moment(mu, alpha, r, log10_target);
  return detail::with_precision(plan.digits, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const auto mv = closed_moment<Real>(mu, alpha, r, plan.log10_lerch_tol);
    return CorrelationResult{detail::to_double(mv.value), detail::to_double(mv.error),
                             Method::closed_form, {}};
  });
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

Method weaker(Method a, Method b) {
  auto rank = [](Method m) {
    switch (m) {
      case Method::closed_form: return 0;
      case Method::oracle: return 1;
      case Method::asymptotic: return 2;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

struct R3Partials {
  double d_l2;
  double d_l3;
};

R3Partials r3_partials(double l2, double l3) {
  const double p = std::pow(l2, 1.5);
  return {-3.0 / (2.0 * p) - 0.75 * (l3 - 3.0 * l2) / (l2 * p), 1.0 / (2.0 * p)};
}

CorrelationResult combine_r3(const CorrelationResult& l2, const CorrelationResult& l3) {
  const double value = r3_combination(l2.value, l3.value);
  const auto g = r3_partials(l2.value, l3.value);
  CorrelationResult out{value,
                        std::abs(g.d_l2) * l2.error_bound + std::abs(g.d_l3) * l3.error_bound,
                        weaker(l2.method, l3.method), {}};
  if (!l2.note.empty()) out.note = l2.note;
  if (!l3.note.empty()) out.note = l3.note;
  return out;
}

}  // namespace

DeformationMu::DeformationMu(double mu) : mu_(mu) {
  if (!std::isfinite(mu) || mu < 0.0) {
    throw DomainError("deformation mu must be finite and non-negative, got " +
                      std::to_string(mu));
  }
}

double DeformationMu::closed_form_bound(int r) noexcept {
  return r <= 1 ? std::numeric_limits<double>::infinity() : 1.0 / (r - 1);
}

bool DeformationMu::closed_form_admissible(int r) const noexcept {
  return r <= 1 || mu_ * (r - 1) < 1.0;
}

bool DeformationMu::series_has_pole(int r) const noexcept {
  if (mu_ == 0.0) return false;
  const double inv = 1.0 / mu_;
  const double nearest = std::round(inv);
  return nearest >= 1.0 && nearest <= r - 1 && std::abs(inv - nearest) <= 1e-12 * inv;
}

double ThermoPoint::alpha() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive");
  }
  if (!(momentum >= 0.0) || !std::isfinite(momentum)) {
    throw DomainError("momentum must be non-negative");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
  return std::hypot(mass, momentum) / temperature;
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::oracle: return "oracle";
    case Method::asymptotic: return "asymptotic";
  }
  return "unknown";
}

double mu_bracket(double n, double mu) {
  if (!(n >= 0.0)) throw DomainError("mu_bracket: n must be non-negative");
  if (!(mu >= 0.0)) throw DomainError("mu_bracket: mu must be non-negative");
  return n / (1.0 + mu * n);
}

double mu_factorial(int r, double mu) {
  check_order(r, 0);
  double f = 1.0;
  for (int j = 1; j <= r; ++j) f *= j / (1.0 + mu * j);
  return f;
}

CorrelationResult mean_occupation(DeformationMu d, double alpha, double tol) {
  check_alpha(alpha);
  check_tol(tol);
  if (d.undeformed()) {
    const double v = 1.0 / std::expm1(alpha);
    return {v, 4.0 * kEps * v, Method::closed_form, {}};
  }
  return closed_moment_result(d.value(), alpha, 1, std::log10(tol));
}

CorrelationResult r_moment(DeformationMu d, double alpha, int r, double tol) {
  check_alpha(alpha);
  check_order(r, 1);
  check_tol(tol);
  if (d.undeformed()) {
    const double v = factorial_double(r) / std::pow(std::expm1(alpha), r);
    return {v, (r + 4) * kEps * v, Method::closed_form, {}};
  }
  if (!d.closed_form_admissible(r)) throw DomainError(closed_form_message(d, r));
  return closed_moment_result(d.value(), alpha, r, std::log10(tol));
}

CorrelationResult oracle_moment(DeformationMu d, double alpha, int r, double tol,
                                std::uint64_t max_terms) {
  check_alpha(alpha);
  check_order(r, 1);
  check_tol(tol);
  if (d.series_has_pole(r)) {
    throw PoleError("defining series has a vanishing denominator: 1/mu = " +
                    std::to_string(1.0 / d.value()) + " is an integer below r = " +
                    std::to_string(r));
  }
  const double mu = d.value();
  const double omz = -std::expm1(-alpha);

  // Terms with n < r vanish: the product contains the factor phi(0).
  CompensatedSum sum;
  double tail = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  for (std::uint64_t n = static_cast<std::uint64_t>(r);; ++n) {
    double prod = 1.0;
    for (int l = 0; l < r; ++l) {
      const double x = static_cast<double>(n) - l;
      prod *= x / (1.0 + mu * x);
    }
    sum.add(prod * std::exp(-alpha * static_cast<double>(n)));
    ++count;

    // sum_{m>n} m^r z^m <= (n+1)^r z^{n+1} / (1 - q), q = ((n+2)/(n+1))^r z.
    const double next = static_cast<double>(n) + 1.0;
    const double q = std::exp(r * std::log1p(1.0 / next) - alpha);
    if (q < 1.0) {
      tail = std::exp(r * std::log(next) - alpha * next) / (1.0 - q);
      if (omz * tail <= tol) break;
    }
    if (count >= max_terms) {
      throw ConvergenceError("oracle_moment: tail bound did not reach tol within " +
                             std::to_string(max_terms) + " terms");
    }
  }
  const double value = omz * sum.value();
  return {value, omz * tail + 2.0 * kEps * static_cast<double>(count + r) * value,
          Method::oracle, {}};
}

CorrelationResult intercept(DeformationMu d, double alpha, int r, double tol,
                            Fallback fallback) {
  check_alpha(alpha);
  check_order(r, 2);
  check_tol(tol);
  if (d.undeformed()) return {factorial_double(r) - 1.0, 0.0, Method::closed_form, {}};
  if (auto limit = underflow_guard(d, alpha, r)) return *limit;
  if (!d.closed_form_admissible(r)) {
    if (fallback == Fallback::oracle) {
      auto res = oracle_intercept(d, alpha, r, tol);
      res.note = "mu >= 1/(r-1): closed form unavailable, evaluated by oracle";
      return res;
    }
    throw DomainError(closed_form_message(d, r));
  }

  const double mu = d.value();
  // Plan against the lower bound L1 <= <phi(N)> and lambda + 1 <= r!.
  const double log10_l1 = log_first_term(mu, alpha) / kLn10;
  const double log10_tol = std::log10(tol);
  const double log10_t1 =
      log10_tol - std::log10(2.0 * r) - std::lgamma(r + 1.0) / kLn10 + log10_l1;
  const double log10_tr = log10_tol - std::log10(2.0) + r * log10_l1;
  const auto plan1 = plan_moment(mu, alpha, 1, log10_t1);
  const auto plan_r = plan_moment(mu, alpha, r, log10_tr);

  return detail::with_precision(std::max(plan1.digits, plan_r.digits), [&](auto tag) {
    using Real = typename decltype(tag)::type;
    using std::pow;
    const auto m1 = closed_moment<Real>(mu, alpha, 1, plan1.log10_lerch_tol);
    const auto mr = closed_moment<Real>(mu, alpha, r, plan_r.log10_lerch_tol);
    if (!(m1.value > 0) || !(mr.value > 0)) {
      throw ConvergenceError("intercept: working precision too narrow for the cancellation");
    }
    const Real ratio = mr.value / pow(m1.value, r);
    const Real err = ratio * (mr.error / mr.value + Real(r) * m1.error / m1.value) *
                     Real(1.01);
    return CorrelationResult{detail::to_double(Real(ratio - 1)), detail::to_double(err),
                             Method::closed_form, {}};
  });
}

CorrelationResult oracle_intercept(DeformationMu d, double alpha, int r, double tol) {
  check_alpha(alpha);
  check_order(r, 2);
  check_tol(tol);
  if (auto limit = underflow_guard(d, alpha, r)) return *limit;

  const double l1 = std::exp(log_first_term(d.value(), alpha));
  const double t1 = tol / (2.0 * r * factorial_double(r)) * l1;
  const double tr = tol / 2.0 * std::pow(l1, r);
  const auto m1 = oracle_moment(d, alpha, 1, t1);
  const auto mr = oracle_moment(d, alpha, r, tr);
  const double ratio = mr.value / std::pow(m1.value, r);
  const double err =
      ratio * (mr.error_bound / mr.value + r * m1.error_bound / m1.value) * 1.01;
  return {ratio - 1.0, err, Method::oracle, {}};
}

double intercept_asymptotic(DeformationMu d, int r) {
  check_order(r, 2);
  const double mu = d.value();
  double f = 1.0;
  for (int j = 1; j <= r; ++j) f *= j * (1.0 + mu) / (1.0 + mu * j);
  return f - 1.0;
}

double r3_combination(double lambda2, double lambda3) {
  if (!(lambda2 > 0.0)) throw DomainError("r3: lambda2 must be positive");
  return (lambda3 - 3.0 * lambda2) / (2.0 * std::pow(lambda2, 1.5));
}

CorrelationResult r3_function(DeformationMu d, double alpha, double tol, Fallback fallback) {
  const auto l2 = intercept(d, alpha, 2, tol / 4.0, fallback);
  const auto l3 = intercept(d, alpha, 3, tol / 4.0, fallback);
  auto res = combine_r3(l2, l3);
  if (res.error_bound <= tol) return res;
  const auto g = r3_partials(l2.value, l3.value);
  const double weight = std::abs(g.d_l2) + std::abs(g.d_l3);
  return combine_r3(intercept(d, alpha, 2, tol / (2.0 * weight), fallback),
                    intercept(d, alpha, 3, tol / (2.0 * weight), fallback));
}

CorrelationResult oracle_r3(DeformationMu d, double alpha, double tol) {
  return combine_r3(oracle_intercept(d, alpha, 2, tol), oracle_intercept(d, alpha, 3, tol));
}

double r3_asymptotic(DeformationMu d) {
  return r3_combination(intercept_asymptotic(d, 2), intercept_asymptotic(d, 3));
}

}  // namespace mubose
