#pragma once

// Runtime selection among fixed-width MPFR types. Every closed-form path
// that subtracts large Lerch terms runs through here so the working
// precision tracks the cancellation it has to survive.

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include <boost/multiprecision/mpfr.hpp>

#include "mubose/errors.hpp"

namespace mubose::detail {

template <unsigned Digits10>
using mp_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<Digits10>,
    boost::multiprecision::et_off>;

inline constexpr std::array<unsigned, 6> kPrecisionTiers{40, 80, 160, 320, 640, 1280};

template <class T>
struct type_tag {
  using type = T;
};

/// Calls `fn(type_tag<Real>{})` with the narrowest tier holding at least
/// `digits10` decimal digits.
template <class Fn>
decltype(auto) with_precision(double digits10, Fn&& fn) {
  if (!(digits10 <= kPrecisionTiers.back())) {
    throw ConvergenceError("required working precision of " + std::to_string(digits10) +
                           " digits exceeds the widest tier (" +
                           std::to_string(kPrecisionTiers.back()) + ")");
  }
  if (digits10 <= 40) return fn(type_tag<mp_real<40>>{});
  if (digits10 <= 80) return fn(type_tag<mp_real<80>>{});
  if (digits10 <= 160) return fn(type_tag<mp_real<160>>{});
  if (digits10 <= 320) return fn(type_tag<mp_real<320>>{});
  if (digits10 <= 640) return fn(type_tag<mp_real<640>>{});
  return fn(type_tag<mp_real<1280>>{});
}

template <class Real>
Real epsilon_of() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<double>(x);
  } else {
    return x.template convert_to<double>();
  }
}

}  // namespace mubose::detail
