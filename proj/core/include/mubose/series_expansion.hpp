#pragma once

// Taylor-in-mu expansion of the generic series
//
//   sum_{n>=0} e^{-alpha n} / (1 + mu (n - l)) = sum_s c_s(l) mu^s
//
// with
//   c_s(l) = e^{-alpha l} [ delta_{s0} + sum_{j=1}^{l} j^s e^{alpha j}
//            + (-1)^s sum_{j=0}^{s} j! {s+1, j+1} (e^alpha - 1)^{-(j+1)} ].
//
// The expansion is asymptotic only; divergence_diagnostic() exposes the
// eventual factorial growth of the terms.

#include <cstdint>
#include <vector>

#include "mubose/mu_core.hpp"
#include "mubose/special_fn.hpp"

namespace mubose {

struct CCoefficient {
  int s = 0;
  int l = 0;
  double alpha = 0.0;
  double value = 0.0;
  /// bose_terms[j] multiplies (e^alpha - 1)^{-(j+1)}, j = 0..s; equals
  /// (-1)^s j! {s+1, j+1}.
  std::vector<ExactSigned> bose_terms;
  /// shift_terms[j-1] = j^s multiplies e^{alpha j}, j = 1..l.
  std::vector<ExactInt> shift_terms;

  /// e^{-alpha l} [delta_{s0} + sum shift e^{alpha j} + sum bose (e^alpha-1)^{-(j+1)}]
  /// recomputed from the stored integers.
  double reconstruct() const;
};

/// Exact-integer representation plus its value. OverflowError once the
/// integers exceed 128 bits (s around 30).
CCoefficient c_coeff(int s, int l, double alpha);

/// Floating-point value of c_s(l) for any s (the combinatorial factors are
/// generated in double through the g recurrence; may be +-inf for huge s).
double c_value(int s, int l, double alpha);

/// Brute force (-1)^s sum_{n=0}^{n_max} (n-l)^s e^{-alpha n}. Throws
/// ConvergenceError unless the tail beyond n_max is certified below 1e-12.
double series_coeff_oracle(int s, int l, double alpha, std::int64_t n_max);

/// Smallest n_max for which series_coeff_oracle's tail bound is below `tol`.
std::int64_t oracle_terms_needed(int s, double alpha, double tol = 1e-12);

/// Order-S truncation of the unnormalized moment series
///   sum_n phi(n) ... phi(n-r+1) e^{-alpha n}
///     ~ mu^{-r} (1-e^{-alpha})^{-1} + mu^{-r} sum_{s<=S} sum_{l<r} A^(r)_l c_s(l) mu^s.
double taylor_moment(DeformationMu d, double alpha, int r, int order);

struct DivergenceEntry {
  int s = 0;
  double partial_sum = 0.0;     ///< taylor_moment truncated at order s
  double term_magnitude = 0.0;  ///< |sum_l A_l c_s(l) mu^s|
  bool overflow = false;        ///< terminal entry: magnitude left double range
};

/// Rows for s = 0..s_max; stops early with an overflow entry if the terms
/// leave double range. DomainError for mu = 0.
std::vector<DivergenceEntry> divergence_diagnostic(DeformationMu d, double alpha, int r,
                                                   int s_max);

/// Index of the smallest term magnitude (the onset of growth).
int growth_onset(const std::vector<DivergenceEntry>& rows);

/// True if the last `window` magnitudes are strictly increasing.
bool eventually_increasing(const std::vector<DivergenceEntry>& rows, int window = 10);

}  // namespace mubose
