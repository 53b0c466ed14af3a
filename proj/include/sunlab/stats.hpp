#pragma once

// Two-sample rank test and the regressions used in the analysis: ordinary
// least squares and the zero-intercept Fitts' law fit.

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sunlab {

enum class MwMethod { exact, normal_approx };

const char* to_string(MwMethod m);

struct MannWhitneyResult {
  double u_statistic = 0.0;  // min(U_a, U_b)
  double u_a = 0.0;          // U of the first sample
  double p_two_sided = 1.0;
  MwMethod method = MwMethod::exact;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  bool degenerate = false;  // every pooled value identical
};

/// Midranks (1-based, ties share the mean rank) of the given values.
std::vector<double> midranks(std::span<const double> values);

/// Exact two-sided p when both sample sizes are <= exact_threshold, else the
/// tie-corrected normal approximation with continuity correction.
MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b, std::size_t exact_threshold = 8);

/// Exact two-sided p of U_a over all C(n_a+n_b, n_a) assignments of the
/// pooled midranks. Rank sums are counted on doubled ranks, so ties compare
/// exactly.
double mann_whitney_exact_p(std::span<const double> pooled_ranks, std::size_t n_a, double u_a);

double mann_whitney_normal_p(std::span<const double> pooled_ranks, std::size_t n_a, double u_a);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares y = slope * x + intercept with centered R^2
/// (0 when y is constant). Throws std::invalid_argument for n < 2 or
/// constant x.
template <typename DerivedX, typename DerivedY>
LinearFit linear_fit(const Eigen::MatrixBase<DerivedX>& xs, const Eigen::MatrixBase<DerivedY>& ys) {
  using Scalar = typename DerivedX::Scalar;
  const auto n = xs.size();
  if (n != ys.size()) throw std::invalid_argument("linear_fit: xs and ys differ in length");
  if (n < 2) throw std::invalid_argument("linear_fit: need at least 2 points");
  const Scalar mx = xs.mean();
  const Scalar my = ys.mean();
  const auto dx = (xs.array() - mx).matrix().eval();
  const auto dy = (ys.array() - my).matrix().eval();
  const Scalar sxx = dx.squaredNorm();
  if (!(sxx > Scalar(0))) throw std::invalid_argument("linear_fit: xs are all equal");
  LinearFit fit;
  fit.n = static_cast<std::size_t>(n);
  fit.slope = static_cast<double>(dx.dot(dy) / sxx);
  fit.intercept = static_cast<double>(my - Scalar(fit.slope) * mx);
  const Scalar ss_tot = dy.squaredNorm();
  const Scalar ss_res = (dy - Scalar(fit.slope) * dx).squaredNorm();
  fit.r_squared = ss_tot > Scalar(0) ? static_cast<double>(Scalar(1) - ss_res / ss_tot) : 0.0;
  return fit;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

/// Shannon index of difficulty log2(D/W + 1), bits.
double index_of_difficulty(double distance_deg, double width_deg = 1.0);

struct FittsFit {
  double b = 0.0;  // seconds per bit
  double a = 0.0;  // intercept, fixed at zero
  double index_of_performance = 0.0;  // bits per second, 1/b
  double r_squared = 0.0;
  std::size_t n = 0;
};

/// MT = b * ID through the origin. R^2 against the centered total sum of
/// squares, clamped to [0, 1].
FittsFit fitts_fit(std::span<const std::pair<double, double>> id_mt_seconds);

}  // namespace sunlab
