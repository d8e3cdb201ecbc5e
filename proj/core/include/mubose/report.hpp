#pragma once

// Grid evaluation and record formatting behind the command-line tool.
//
// CSV schema: quantity,k_mev,T_mev,mu,r,value,error_bound,method
// Numbers are printed with 12 significant digits; asymptote records carry
// k = inf. JSON output is an array of flat objects with the same keys.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mubose/mu_core.hpp"
#include "mubose/series_expansion.hpp"

namespace mubose {

enum class Quantity { distribution, lambda2, lambda3, lambda_r, r3, asymptote };

std::string_view to_string(Quantity q) noexcept;

/// Quantity tag for an intercept of order r (lambda2, lambda3 or lambda_r).
Quantity intercept_quantity(int r) noexcept;

struct OutputRecord {
  Quantity quantity = Quantity::distribution;
  double k_mev = 0.0;  ///< +inf for asymptote records
  double t_mev = 0.0;
  double mu = 0.0;
  int r = 1;
  double value = 0.0;
  double error_bound = 0.0;
  std::string method;  ///< closed_form | oracle | asymptotic | failed
};

enum class FigurePreset { fig1, fig2, fig3, fig4 };

std::optional<FigurePreset> parse_preset(std::string_view name) noexcept;
std::string_view to_string(FigurePreset p) noexcept;

struct GridSpec {
  double k_min = 0.0;
  double k_max = 1000.0;
  int k_steps = 101;
  std::vector<double> temperatures{120.0, 180.0};
  std::vector<double> mus{0.1, 0.2};
  double mass = kPionMassMeV;
  double tol = kDefaultTol;
  bool oracle_fallback = false;
  unsigned threads = 0;  ///< 0: hardware concurrency

  /// Throws DomainError on an inconsistent grid.
  void validate() const;
  /// k_steps equally spaced momenta from k_min to k_max inclusive.
  std::vector<double> momenta() const;
};

/// Published figure defaults; fig1 also carries the mu = 0 reference curve.
GridSpec default_grid(FigurePreset preset);

struct GridReport {
  std::vector<OutputRecord> records;
  std::vector<std::string> failures;  ///< one message per failed record
  int flagged = 0;                    ///< records whose error_bound exceeds tol
};

/// Evaluates the preset over the grid. Points may run concurrently; records
/// come back ordered by (T, mu, r, k) with asymptotes last in each group.
/// fig1 always includes mu = 0.
GridReport run_figure(FigurePreset preset, GridSpec grid);

/// Single-point record for distribution, intercept (any r >= 2) or r3.
/// Propagates DomainError / ConvergenceError.
OutputRecord evaluate_point(Quantity quantity, double mu, const ThermoPoint& point, int r,
                            double tol, Fallback fallback);

/// Oracle counterpart of evaluate_point (distribution uses oracle_moment).
OutputRecord evaluate_point_oracle(Quantity quantity, double mu, const ThermoPoint& point,
                                   int r, double tol);

/// 12 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

std::string format_csv(std::span<const OutputRecord> records);
std::string format_json(std::span<const OutputRecord> records);

/// r,mu,l,value rows of the partial-fraction weights.
std::string format_coeffs_csv(int r, double mu);

/// s,partial_sum,term_magnitude,overflow rows.
std::string format_divergence_csv(std::span<const DivergenceEntry> rows);

}  // namespace mubose
