#include "mubose/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include <json.hpp>

#include "mubose/partial_fraction.hpp"

namespace mubose {

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::distribution: return "distribution";
    case Quantity::lambda2: return "lambda2";
    case Quantity::lambda3: return "lambda3";
    case Quantity::lambda_r: return "lambda_r";
    case Quantity::r3: return "r3";
    case Quantity::asymptote: return "asymptote";
  }
  return "unknown";
}

Quantity intercept_quantity(int r) noexcept {
  if (r == 2) return Quantity::lambda2;
  if (r == 3) return Quantity::lambda3;
  return Quantity::lambda_r;
}

std::optional<FigurePreset> parse_preset(std::string_view name) noexcept {
  if (name == "fig1") return FigurePreset::fig1;
  if (name == "fig2") return FigurePreset::fig2;
  if (name == "fig3") return FigurePreset::fig3;
  if (name == "fig4") return FigurePreset::fig4;
  return std::nullopt;
}

std::string_view to_string(FigurePreset p) noexcept {
  switch (p) {
    case FigurePreset::fig1: return "fig1";
    case FigurePreset::fig2: return "fig2";
    case FigurePreset::fig3: return "fig3";
    case FigurePreset::fig4: return "fig4";
  }
  return "unknown";
}

void GridSpec::validate() const {
  if (!(k_min >= 0.0) || !(k_max > k_min)) {
    throw DomainError("grid: need 0 <= k_min < k_max");
  }
  if (k_steps < 2) throw DomainError("grid: k_steps must be >= 2");
  if (temperatures.empty()) throw DomainError("grid: at least one temperature is required");
  for (double t : temperatures) {
    if (!(t > 0.0)) throw DomainError("grid: temperatures must be positive");
  }
  for (double mu : mus) {
    if (!(mu >= 0.0)) throw DomainError("grid: mu values must be non-negative");
  }
  if (!(mass > 0.0)) throw DomainError("grid: mass must be positive");
  if (!(tol > 0.0)) throw DomainError("grid: tol must be positive");
}

std::vector<double> GridSpec::momenta() const {
  std::vector<double> ks(static_cast<std::size_t>(k_steps));
  const double step = (k_max - k_min) / (k_steps - 1);
  for (int i = 0; i < k_steps; ++i) ks[i] = k_min + step * i;
  ks.back() = k_max;
  return ks;
}

GridSpec default_grid(FigurePreset preset) {
  GridSpec g;
  if (preset == FigurePreset::fig1) g.mus = {0.0, 0.1, 0.2};
  return g;
}

OutputRecord evaluate_point(Quantity quantity, double mu, const ThermoPoint& point, int r,
                            double tol, Fallback fallback) {
  const double alpha = point.alpha();
  const DeformationMu d(mu);
  CorrelationResult res;
  switch (quantity) {
    case Quantity::distribution:
      r = 1;
      res = mean_occupation(d, alpha, tol);
      break;
    case Quantity::lambda2:
    case Quantity::lambda3:
    case Quantity::lambda_r:
      res = intercept(d, alpha, r, tol, fallback);
      quantity = intercept_quantity(r);
      break;
    case Quantity::r3:
      r = 3;
      res = r3_function(d, alpha, tol, fallback);
      break;
    case Quantity::asymptote:
      throw DomainError("asymptote is not a point quantity");
  }
  return {quantity,  point.momentum,   point.temperature,
          mu,        r,                res.value,
          res.error_bound, std::string(to_string(res.method))};
}

OutputRecord evaluate_point_oracle(Quantity quantity, double mu, const ThermoPoint& point,
                                   int r, double tol) {
  const double alpha = point.alpha();
  const DeformationMu d(mu);
  CorrelationResult res;
  switch (quantity) {
    case Quantity::distribution:
      r = 1;
      res = oracle_moment(d, alpha, 1, tol);
      break;
    case Quantity::lambda2:
    case Quantity::lambda3:
    case Quantity::lambda_r:
      res = oracle_intercept(d, alpha, r, tol);
      quantity = intercept_quantity(r);
      break;
    case Quantity::r3:
      r = 3;
      res = oracle_r3(d, alpha, tol);
      break;
    case Quantity::asymptote:
      throw DomainError("asymptote is not a point quantity");
  }
  return {quantity,  point.momentum,   point.temperature,
          mu,        r,                res.value,
          res.error_bound, std::string(to_string(res.method))};
}

namespace {

struct Task {
  double t_mev;
  double mu;
  double k_mev;  // +inf marks the asymptote record
};

OutputRecord asymptote_record(FigurePreset preset, const Task& task) {
  const DeformationMu d(task.mu);
  OutputRecord rec{Quantity::asymptote, task.k_mev, task.t_mev, task.mu, 0, 0.0, 0.0,
                   "asymptotic"};
  switch (preset) {
    case FigurePreset::fig2:
      rec.r = 2;
      rec.value = intercept_asymptotic(d, 2);
      break;
    case FigurePreset::fig3:
      rec.r = 3;
      rec.value = intercept_asymptotic(d, 3);
      break;
    case FigurePreset::fig4:
      rec.r = 3;
      rec.value = r3_asymptotic(d);
      break;
    case FigurePreset::fig1:
      throw DomainError("fig1 has no asymptote records");
  }
  return rec;
}

Quantity preset_quantity(FigurePreset preset) {
  switch (preset) {
    case FigurePreset::fig1: return Quantity::distribution;
    case FigurePreset::fig2: return Quantity::lambda2;
    case FigurePreset::fig3: return Quantity::lambda3;
    case FigurePreset::fig4: return Quantity::r3;
  }
  return Quantity::distribution;
}

int preset_order(FigurePreset preset) {
  switch (preset) {
    case FigurePreset::fig1: return 1;
    case FigurePreset::fig2: return 2;
    case FigurePreset::fig3:
    case FigurePreset::fig4: return 3;
  }
  return 1;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

GridReport run_figure(FigurePreset preset, GridSpec grid) {
  if (preset == FigurePreset::fig1) grid.mus.push_back(0.0);
  grid.validate();
  const auto temps = sorted_unique(grid.temperatures);
  const auto mus = sorted_unique(grid.mus);
  if (mus.empty()) throw DomainError("grid: at least one mu is required");
  const auto ks = grid.momenta();
  const Quantity quantity = preset_quantity(preset);
  const int order = preset_order(preset);
  const Fallback fallback = grid.oracle_fallback ? Fallback::oracle : Fallback::none;

  std::vector<Task> tasks;
  for (double t : temps) {
    for (double mu : mus) {
      for (double k : ks) tasks.push_back({t, mu, k});
      if (preset != FigurePreset::fig1) {
        tasks.push_back({t, mu, std::numeric_limits<double>::infinity()});
      }
    }
  }

  std::vector<OutputRecord> records(tasks.size());
  std::vector<std::string> errors(tasks.size());
  auto run_one = [&](std::size_t i) {
    const Task& task = tasks[i];
    try {
      if (std::isinf(task.k_mev)) {
        records[i] = asymptote_record(preset, task);
      } else {
        records[i] = evaluate_point(quantity, task.mu, {task.t_mev, task.k_mev, grid.mass},
                                    order, grid.tol, fallback);
      }
    } catch (const std::exception& e) {
      records[i] = {quantity, task.k_mev, task.t_mev, task.mu, order,
                    std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), "failed"};
      errors[i] = "T=" + format_number(task.t_mev) + " mu=" + format_number(task.mu) +
                  " k=" + format_number(task.k_mev) + ": " + e.what();
    }
  };

  unsigned workers = grid.threads != 0 ? grid.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
      });
    }
  }

  GridReport report;
  report.records = std::move(records);
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) report.failures.push_back(std::move(errors[i]));
  }
  for (const auto& rec : report.records) {
    if (rec.method != "failed" && rec.error_bound > grid.tol) ++report.flagged;
  }
  return report;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_csv(std::span<const OutputRecord> records) {
  std::string out = "quantity,k_mev,T_mev,mu,r,value,error_bound,method\n";
  for (const auto& rec : records) {
    out += to_string(rec.quantity);
    out += ',' + format_number(rec.k_mev) + ',' + format_number(rec.t_mev) + ',' +
           format_number(rec.mu) + ',' + std::to_string(rec.r) + ',' +
           format_number(rec.value) + ',' + format_number(rec.error_bound) + ',' +
           rec.method + '\n';
  }
  return out;
}

namespace {

// Finite numbers rounded to the CSV's 12 digits; non-finite as strings or null.
nlohmann::ordered_json json_number(double x, bool null_if_nan) {
  if (std::isnan(x) && null_if_nan) return nullptr;
  if (!std::isfinite(x)) return format_number(x);
  return std::strtod(format_number(x).c_str(), nullptr);
}

}  // namespace

std::string format_json(std::span<const OutputRecord> records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& rec : records) {
    nlohmann::ordered_json obj;
    obj["quantity"] = std::string(to_string(rec.quantity));
    obj["k_mev"] = json_number(rec.k_mev, false);
    obj["T_mev"] = json_number(rec.t_mev, false);
    obj["mu"] = json_number(rec.mu, false);
    obj["r"] = rec.r;
    obj["value"] = json_number(rec.value, true);
    obj["error_bound"] = json_number(rec.error_bound, true);
    obj["method"] = rec.method;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string format_coeffs_csv(int r, double mu) {
  const auto a = a_coeffs(r, mu);
  std::string out = "r,mu,l,value\n";
  for (std::size_t l = 0; l < a.size(); ++l) {
    out += std::to_string(r) + ',' + format_number(mu) + ',' + std::to_string(l) + ',' +
           format_number(a[l]) + '\n';
  }
  return out;
}

std::string format_divergence_csv(std::span<const DivergenceEntry> rows) {
  std::string out = "s,partial_sum,term_magnitude,overflow\n";
  for (const auto& e : rows) {
    out += std::to_string(e.s) + ',' + format_number(e.partial_sum) + ',' +
           format_number(e.term_magnitude) + ',' + (e.overflow ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace mubose
