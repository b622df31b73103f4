#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wf2pt {

struct BenchRow {
  std::size_t size = 0;  // |P| + |T| of the input net
  std::int64_t micros = 0;
  std::string outcome;  // "tree" or "irreducible"
};

inline std::string write_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "size,micros,outcome\n";
  for (const auto& r : rows)
    out += std::to_string(r.size) + "," + std::to_string(r.micros) + "," + r.outcome + "\n";
  return out;
}

struct QuadraticFit {
  double a = 0, b = 0, c = 0;  // y = a*x^2 + b*x + c
  double r_squared = 0;
  std::size_t points = 0;

  double operator()(double x) const { return (a * x + b) * x + c; }
};

/// Least squares over (x, y). Needs three distinct x values.
inline std::optional<QuadraticFit> fit_quadratic(const std::vector<std::pair<double, double>>& pts) {
  std::map<double, int> distinct;
  for (const auto& p : pts) distinct[p.first]++;
  if (distinct.size() < 3) return std::nullopt;
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = pts[i].first;
    A(i, 0) = x * x;
    A(i, 1) = x;
    A(i, 2) = 1.0;
    y(i) = pts[i].second;
  }
  Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
  QuadraticFit fit{coef(0), coef(1), coef(2), 0.0, pts.size()};
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (A * coef - y).squaredNorm();
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

/// Mean micros per distinct size, in increasing size order.
inline std::vector<std::pair<double, double>> mean_time_per_size(const std::vector<BenchRow>& rows) {
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  for (const auto& r : rows) {
    auto& [sum, count] = acc[r.size];
    sum += static_cast<double>(r.micros);
    ++count;
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& [size, sc] : acc)
    out.emplace_back(static_cast<double>(size), sc.first / static_cast<double>(sc.second));
  return out;
}

/// Mean time of rows with size in [lo, hi), if any.
inline std::optional<double> mean_time_in(const std::vector<BenchRow>& rows, double lo, double hi) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& r : rows)
    if (r.size >= lo && r.size < hi) {
      sum += static_cast<double>(r.micros);
      ++n;
    }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace wf2pt
