#include "sunlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sunlab {

const char* to_string(MwMethod m) { return m == MwMethod::exact ? "exact" : "normal_approx"; }

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double mann_whitney_exact_p(std::span<const double> pooled_ranks, std::size_t n_a, double u_a) {
  const std::size_t n = pooled_ranks.size();
  if (n_a == 0 || n_a >= n) return 1.0;
  const std::size_t n_b = n - n_a;

  // Doubled midranks are integers.
  std::vector<long> twice(n);
  long max_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    twice[i] = std::lround(2.0 * pooled_ranks[i]);
    max_sum += twice[i];
  }

  // ways[k][s]: number of k-subsets of the ranks seen so far with doubled sum s.
  std::vector<std::vector<double>> ways(n_a + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(twice[i]);
    for (std::size_t k = std::min(i + 1, n_a); k >= 1; --k)
      for (std::size_t s = static_cast<std::size_t>(max_sum); s >= r; --s) {
        ways[k][s] += ways[k - 1][s - r];
        if (s == r) break;
      }
  }

  // 2U = 2R - n_a(n_a+1); 2*mean(U) = n_a*n_b.
  const long offset = static_cast<long>(n_a * (n_a + 1));
  const long twice_mean = static_cast<long>(n_a * n_b);
  const long observed = std::labs(std::lround(2.0 * u_a) - twice_mean);
  double extreme = 0.0;
  double total = 0.0;
  for (std::size_t s = 0; s <= static_cast<std::size_t>(max_sum); ++s) {
    const double w = ways[n_a][s];
    if (w == 0.0) continue;
    total += w;
    if (std::labs(static_cast<long>(s) - offset - twice_mean) >= observed) extreme += w;
  }
  return std::min(1.0, extreme / total);
}

double mann_whitney_normal_p(std::span<const double> pooled_ranks, std::size_t n_a, double u_a) {
  const double n = static_cast<double>(pooled_ranks.size());
  const double na = static_cast<double>(n_a);
  const double nb = n - na;
  // Tie term: sum over tie groups of (t^3 - t).
  std::vector<double> sorted(pooled_ranks.begin(), pooled_ranks.end());
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_sum += t * t * t - t;
    i = j;
  }
  const double mean = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double z = std::max(0.0, std::abs(u_a - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b, std::size_t exact_threshold) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney: both samples must be non-empty");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);

  MannWhitneyResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  const double na = static_cast<double>(r.n_a);
  const double nb = static_cast<double>(r.n_b);
  const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(r.n_a), 0.0);
  r.u_a = rank_sum_a - na * (na + 1.0) / 2.0;
  r.u_statistic = std::min(r.u_a, na * nb - r.u_a);
  r.degenerate = std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled.front(); });

  if (r.n_a <= exact_threshold && r.n_b <= exact_threshold) {
    r.method = MwMethod::exact;
    r.p_two_sided = r.degenerate ? 1.0 : mann_whitney_exact_p(ranks, r.n_a, r.u_a);
  } else {
    r.method = MwMethod::normal_approx;
    r.p_two_sided = r.degenerate ? 1.0 : mann_whitney_normal_p(ranks, r.n_a, r.u_a);
  }
  return r;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  using Map = Eigen::Map<const Eigen::VectorXd>;
  return linear_fit(Map(xs.data(), static_cast<Eigen::Index>(xs.size())),
                    Map(ys.data(), static_cast<Eigen::Index>(ys.size())));
}

double index_of_difficulty(double distance_deg, double width_deg) {
  if (!(distance_deg > 0) || !(width_deg > 0))
    throw std::invalid_argument("index_of_difficulty: distance and width must be positive");
  return std::log2(distance_deg / width_deg + 1.0);
}

FittsFit fitts_fit(std::span<const std::pair<double, double>> points) {
  if (points.empty()) throw std::invalid_argument("fitts_fit: need at least one point");
  Eigen::VectorXd id(static_cast<Eigen::Index>(points.size()));
  Eigen::VectorXd mt(id.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0)) throw std::invalid_argument("fitts_fit: index of difficulty must be positive");
    id[static_cast<Eigen::Index>(i)] = points[i].first;
    mt[static_cast<Eigen::Index>(i)] = points[i].second;
  }
  FittsFit fit;
  fit.n = points.size();
  fit.b = id.dot(mt) / id.squaredNorm();
  if (!(fit.b > 0)) throw std::domain_error("fitts_fit: slope is not positive");
  fit.index_of_performance = 1.0 / fit.b;
  const double ss_res = (mt - fit.b * id).squaredNorm();
  const double ss_tot = (mt.array() - mt.mean()).matrix().squaredNorm();
  if (ss_tot > 0.0)
    fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  else
    fit.r_squared = ss_res <= 1e-24 ? 1.0 : 0.0;
  return fit;
}

}  // namespace sunlab
