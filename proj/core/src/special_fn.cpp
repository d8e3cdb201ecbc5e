#include "mubose/special_fn.hpp"

#include <stdexcept>

namespace mubose {

void validate(const LerchQuery& q) {
  if (!(q.z >= 0.0) || !(q.z < 1.0)) {
    throw DomainError("Lerch query: z = " + std::to_string(q.z) + " outside [0, 1)");
  }
  if (!(q.a > 0.0)) {
    throw DomainError("Lerch query: a = " + std::to_string(q.a) + " must be positive");
  }
  if (!(q.tol > 0.0)) throw DomainError("Lerch query: tol must be positive");
}

double lerch_phi_s1(const LerchQuery& q, std::uint64_t max_terms) {
  validate(q);
  return lerch_sum<double>(q.z, q.a, q.tol, max_terms).value;
}

namespace {

using Cell = std::optional<ExactInt>;

// a*x + y with overflow collapsing to nullopt.
Cell checked_fma(const ExactInt& a, const Cell& x, const Cell& y) {
  if (!x || !y) return std::nullopt;
  try {
    return a * *x + *y;
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

}  // namespace

StirlingTable::StirlingTable(int max_n) : max_n_(max_n) {
  if (max_n < 0) throw RangeError("StirlingTable: max_n must be non-negative");
  rows_.resize(static_cast<std::size_t>(max_n) + 1);
  rows_[0] = {ExactInt(1)};
  for (int n = 1; n <= max_n; ++n) {
    auto& row = rows_[n];
    const auto& prev = rows_[n - 1];
    row.assign(static_cast<std::size_t>(n) + 1, ExactInt(0));
    for (int k = 1; k <= n; ++k) {
      const Cell same = k <= n - 1 ? prev[k] : Cell(ExactInt(0));
      row[k] = checked_fma(ExactInt(k), same, prev[k - 1]);
    }
  }
}

ExactInt StirlingTable::at(int n, int k) const {
  if (n < 0 || k < 0) throw RangeError("stirling2: negative index");
  if (n > max_n_) {
    throw RangeError("stirling2: n = " + std::to_string(n) + " beyond table bound " +
                     std::to_string(max_n_));
  }
  if (k > n) return ExactInt(0);
  const Cell& c = rows_[n][k];
  if (!c) {
    throw OverflowError("stirling2: {" + std::to_string(n) + "," + std::to_string(k) +
                        "} exceeds 128 bits");
  }
  return *c;
}

bool StirlingTable::overflowed(int n, int k) const {
  if (n < 0 || k < 0 || n > max_n_ || k > n) return false;
  return !rows_[n][k].has_value();
}

ExactInt stirling2(int n, int k) {
  static const StirlingTable table;
  return table.at(n, k);
}

ExactInt g_coeff(int s, int j) {
  if (s < 0 || j < 0 || j > s) {
    throw RangeError("g_coeff: requires 0 <= j <= s, got s = " + std::to_string(s) +
                     ", j = " + std::to_string(j));
  }
  std::vector<Cell> row{ExactInt(1)};
  for (int t = 0; t < s; ++t) {
    std::vector<Cell> next(row.size() + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const Cell same = i < row.size() ? row[i] : Cell(ExactInt(0));
      const Cell lower = i > 0 ? row[i - 1] : Cell(ExactInt(0));
      if (!same || !lower) continue;
      try {
        next[i] = ExactInt(i + 1) * (*same + *lower);
      } catch (const std::overflow_error&) {
      }
    }
    row = std::move(next);
  }
  if (!row[j]) {
    throw OverflowError("g_coeff: g_" + std::to_string(s) + "^" + std::to_string(j) +
                        " exceeds 128 bits");
  }
  return *row[j];
}

ExactInt factorial_exact(int n) {
  if (n < 0) throw RangeError("factorial_exact: negative argument");
  ExactInt f(1);
  try {
    for (int i = 2; i <= n; ++i) f *= i;
  } catch (const std::overflow_error&) {
    throw OverflowError("factorial_exact: " + std::to_string(n) + "! exceeds 128 bits");
  }
  return f;
}

}  // namespace mubose
