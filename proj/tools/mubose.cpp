// Command-line front end: figure grids, point evaluations, coefficient
// tables, Taylor divergence diagnostics and the p,q comparison.
//
// Exit codes: 0 success, 1 domain error, 2 convergence failure,
// 3 partial grid failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "mubose/mu_core.hpp"
#include "mubose/partial_fraction.hpp"
#include "mubose/pq_compare.hpp"
#include "mubose/report.hpp"
#include "mubose/series_expansion.hpp"

namespace {

enum ExitCode : int { kOk = 0, kDomain = 1, kConvergence = 2, kPartial = 3 };

struct Output {
  std::string format = "csv";
  std::string path;

  void add_to(CLI::App* cmd, bool with_format = true) {
    if (with_format) {
      cmd->add_option("--format", format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    }
    cmd->add_option("--output", path, "output file (default stdout)");
  }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
  }

  std::string render(const std::vector<mubose::OutputRecord>& recs) const {
    return format == "json" ? mubose::format_json(recs) : mubose::format_csv(recs);
  }
};

struct PointArgs {
  std::vector<double> mus;
  std::vector<double> temperatures{120.0};
  std::vector<double> momenta{0.0};
  double mass = mubose::kPionMassMeV;
  double tol = mubose::kDefaultTol;
  bool with_oracle = false;
  bool oracle_fallback = false;

  void add_to(CLI::App* cmd, bool mu_required = true) {
    auto* mu = cmd->add_option("--mu", mus, "deformation parameter (repeatable)");
    if (mu_required) mu->required();
    cmd->add_option("--temperature", temperatures, "temperature in MeV (repeatable)")
        ->capture_default_str();
    cmd->add_option("--k", momenta, "momentum in MeV (repeatable)")->capture_default_str();
    cmd->add_option("--mass", mass, "particle mass in MeV")->capture_default_str();
    cmd->add_option("--tol", tol, "absolute tolerance")->capture_default_str();
    cmd->add_flag("--with-oracle", with_oracle, "also print the brute-force series value");
    cmd->add_flag("--oracle-fallback", oracle_fallback,
                  "use the series oracle where the closed form is unavailable");
  }
};

int run_points(mubose::Quantity quantity, const PointArgs& args, int order,
               const Output& out) {
  std::vector<mubose::OutputRecord> recs;
  const auto fallback =
      args.oracle_fallback ? mubose::Fallback::oracle : mubose::Fallback::none;
  int flagged = 0;
  for (double t : args.temperatures) {
    for (double mu : args.mus) {
      for (double k : args.momenta) {
        const mubose::ThermoPoint point{t, k, args.mass};
        auto rec = mubose::evaluate_point(quantity, mu, point, order, args.tol, fallback);
        if (rec.error_bound > args.tol) ++flagged;
        recs.push_back(rec);
        if (args.with_oracle) {
          auto orc = mubose::evaluate_point_oracle(quantity, mu, point, order, args.tol);
          const double diff = std::abs(rec.value - orc.value);
          std::cerr << "# T=" << mubose::format_number(t) << " mu=" << mubose::format_number(mu)
                    << " k=" << mubose::format_number(k)
                    << " closed_form - oracle: abs " << mubose::format_number(diff) << ", rel "
                    << mubose::format_number(diff / std::abs(orc.value)) << "\n";
          recs.push_back(orc);
        }
      }
    }
  }
  out.write(out.render(recs));
  if (flagged > 0) {
    std::cerr << "warning: " << flagged << " record(s) with error_bound above tol\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mu-deformed Bose gas: thermal averages, correlation intercepts, "
               "Taylor coefficients and p,q comparison"};
  app.require_subcommand(1);

  // figure
  auto* figure = app.add_subcommand("figure", "emit the data behind one figure preset");
  std::string preset_name;
  mubose::GridSpec grid;
  std::vector<double> fig_mus;
  std::vector<double> fig_temps;
  Output figure_out;
  figure->add_option("preset", preset_name, "fig1 | fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  figure->add_option("--mu", fig_mus, "deformation parameter (repeatable)");
  figure->add_option("--temperature", fig_temps, "temperature in MeV (repeatable)");
  figure->add_option("--mass", grid.mass, "particle mass in MeV")->capture_default_str();
  figure->add_option("--k-min", grid.k_min, "smallest momentum, MeV")->capture_default_str();
  figure->add_option("--k-max", grid.k_max, "largest momentum, MeV")->capture_default_str();
  figure->add_option("--k-steps", grid.k_steps, "number of momenta")->capture_default_str();
  figure->add_option("--tol", grid.tol, "absolute tolerance")->capture_default_str();
  figure->add_option("--threads", grid.threads, "worker threads (0: all cores)");
  figure->add_flag("--oracle-fallback", grid.oracle_fallback,
                   "use the series oracle where the closed form is unavailable");
  figure_out.add_to(figure);

  // intercept / distribution / r3
  auto* intercept = app.add_subcommand("intercept", "r-particle correlation intercept");
  PointArgs intercept_args;
  int intercept_order = 2;
  Output intercept_out;
  intercept_args.add_to(intercept);
  intercept->add_option("--order", intercept_order, "order r >= 2")->capture_default_str();
  intercept_out.add_to(intercept);

  auto* distribution = app.add_subcommand("distribution", "mean occupation <phi(N)>");
  PointArgs distribution_args;
  Output distribution_out;
  distribution_args.add_to(distribution);
  distribution_out.add_to(distribution);

  auto* r3 = app.add_subcommand("r3", "(lambda3 - 3 lambda2) / (2 lambda2^(3/2))");
  PointArgs r3_args;
  Output r3_out;
  r3_args.add_to(r3);
  r3_out.add_to(r3);

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "partial-fraction weights A^(r)_l(mu)");
  int coeffs_order = 2;
  double coeffs_mu = 0.1;
  Output coeffs_out;
  coeffs->add_option("--order", coeffs_order, "order r >= 1")->capture_default_str();
  coeffs->add_option("--mu", coeffs_mu, "deformation parameter > 0")->required();
  coeffs_out.add_to(coeffs, false);

  // taylor-diagnose
  auto* taylor = app.add_subcommand("taylor-diagnose",
                                    "term growth of the Taylor-in-mu moment expansion");
  double taylor_mu = 0.1;
  double taylor_t = 120.0;
  double taylor_k = 0.0;
  double taylor_mass = mubose::kPionMassMeV;
  int taylor_order = 1;
  int taylor_smax = 40;
  Output taylor_out;
  taylor->add_option("--mu", taylor_mu, "deformation parameter > 0")->required();
  taylor->add_option("--temperature", taylor_t, "temperature in MeV")->capture_default_str();
  taylor->add_option("--k", taylor_k, "momentum in MeV")->capture_default_str();
  taylor->add_option("--mass", taylor_mass, "particle mass in MeV")->capture_default_str();
  taylor->add_option("--order", taylor_order, "moment order r >= 1")->capture_default_str();
  taylor->add_option("--s-max", taylor_smax, "largest Taylor order")->capture_default_str();
  taylor_out.add_to(taylor, false);

  // pq-compare
  auto* pq = app.add_subcommand("pq-compare", "p,q-Bose gas moments and intercepts");
  double pq_p = 1.0;
  double pq_q = 1.0;
  std::vector<double> pq_mus;
  double pq_t = 120.0;
  double pq_k = 0.0;
  double pq_mass = mubose::kPionMassMeV;
  int pq_order = 2;
  Output pq_out;
  pq->add_option("--p", pq_p, "p in (0, 1]")->capture_default_str();
  pq->add_option("--q", pq_q, "q in (0, 1]")->capture_default_str();
  pq->add_option("--mu", pq_mus, "mu values to set against the p,q asymptote");
  pq->add_option("--temperature", pq_t, "temperature in MeV")->capture_default_str();
  pq->add_option("--k", pq_k, "momentum in MeV")->capture_default_str();
  pq->add_option("--mass", pq_mass, "particle mass in MeV")->capture_default_str();
  pq->add_option("--order", pq_order, "order r >= 2")->capture_default_str();
  pq_out.add_to(pq, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*figure) {
      const auto preset = *mubose::parse_preset(preset_name);
      auto spec = grid;
      spec.mus = fig_mus.empty() ? mubose::default_grid(preset).mus : fig_mus;
      if (!fig_temps.empty()) spec.temperatures = fig_temps;
      const auto report = mubose::run_figure(preset, spec);
      figure_out.write(figure_out.render(report.records));
      for (const auto& msg : report.failures) std::cerr << "failed: " << msg << "\n";
      if (report.flagged > 0) {
        std::cerr << "warning: " << report.flagged
                  << " record(s) with error_bound above tol\n";
      }
      return report.failures.empty() ? kOk : kPartial;
    }
    if (*intercept) {
      return run_points(mubose::intercept_quantity(intercept_order), intercept_args,
                        intercept_order, intercept_out);
    }
    if (*distribution) {
      return run_points(mubose::Quantity::distribution, distribution_args, 1,
                        distribution_out);
    }
    if (*r3) return run_points(mubose::Quantity::r3, r3_args, 3, r3_out);
    if (*coeffs) {
      coeffs_out.write(mubose::format_coeffs_csv(coeffs_order, coeffs_mu));
      return kOk;
    }
    if (*taylor) {
      const double alpha = mubose::ThermoPoint{taylor_t, taylor_k, taylor_mass}.alpha();
      const auto rows = mubose::divergence_diagnostic(mubose::DeformationMu(taylor_mu), alpha,
                                                      taylor_order, taylor_smax);
      taylor_out.write(mubose::format_divergence_csv(rows));
      std::cerr << "# alpha=" << mubose::format_number(alpha)
                << " growth onset s*=" << mubose::growth_onset(rows) << " increasing over last 10: "
                << (mubose::eventually_increasing(rows) ? "yes" : "no") << "\n";
      return kOk;
    }
    if (*pq) {
      const mubose::PQParams params(pq_p, pq_q);
      const double alpha = mubose::ThermoPoint{pq_t, pq_k, pq_mass}.alpha();
      std::string text = "quantity,k_mev,T_mev,p,q,mu,r,value\n";
      auto row = [&](std::string_view name, double mu, double value) {
        text += std::string(name) + ',' + mubose::format_number(pq_k) + ',' +
                mubose::format_number(pq_t) + ',' + mubose::format_number(params.p()) + ',' +
                mubose::format_number(params.q()) + ',' +
                (std::isnan(mu) ? std::string() : mubose::format_number(mu)) + ',' +
                std::to_string(pq_order) + ',' + mubose::format_number(value) + '\n';
      };
      const double none = std::nan("");
      row("pq_moment", none, mubose::pq_moment(params, alpha, pq_order));
      row("pq_intercept", none, mubose::pq_intercept(params, alpha, pq_order));
      row("pq_asymptote", none, mubose::pq_intercept_asymptotic(params, pq_order));
      for (double mu : pq_mus) {
        const mubose::DeformationMu d(mu);
        row("mu_asymptote", mu, mubose::intercept_asymptotic(d, pq_order));
        row("mu_pq_gap", mu, mubose::mu_vs_pq_asymptotic_gap(d, pq_order));
      }
      pq_out.write(text);
      return kOk;
    }
  } catch (const mubose::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kConvergence;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    if (std::string_view(e.what()).find("oracle fallback") != std::string_view::npos) {
      std::cerr << "hint: rerun with --oracle-fallback\n";
    }
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
