#include "avo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "avo/densities.hpp"
#include "avo/format.hpp"

namespace avo::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

RatioSeries koblitz_ratio(const SweepCache& cache, std::span<const u64> x_grid) {
  if (cache.records.empty()) throw std::invalid_argument("koblitz_ratio: empty cache");
  RatioSeries out;
  u64 coverage = cache.x_max;
  u64 max_x = 0;
  for (u64 x : x_grid) {
    if (x <= max_x) throw std::invalid_argument("koblitz_ratio: x grid must be increasing");
    if (x > coverage)
      throw std::invalid_argument("koblitz_ratio: x = " + std::to_string(x) +
                                  " beyond cache coverage " + std::to_string(coverage));
    max_x = x;
  }
  std::vector<u64> primes = arith::primes_up_to(max_x);
  size_t ri = 0;
  u64 prime_orders = 0;
  for (u64 x : x_grid) {
    while (ri < cache.records.size() && cache.records[ri].p <= x) {
      if (arith::is_prime(cache.records[ri].order)) ++prime_orders;
      ++ri;
    }
    RatioPoint pt;
    pt.x = x;
    pt.count = prime_orders;
    pt.pi_x = static_cast<u64>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
    pt.ratio = pt.pi_x == 0
                   ? 0.0
                   : static_cast<double>(pt.count) * std::log(static_cast<double>(x)) /
                         static_cast<double>(pt.pi_x);
    out.points.push_back(pt);
  }
  return out;
}

u64 almost_prime_count(const SweepCache& cache, int r, u64 x) {
  if (r < 0) throw std::invalid_argument("almost_prime_count: r must be >= 0");
  u64 count = 0;
  for (const auto& rec : cache.records) {
    if (rec.p > x) break;
    if (arith::factorize(rec.order).big_omega() <= r) ++count;
  }
  return count;
}

ChebotarevReport chebotarev_density(const SweepCache& cache, u64 d, int g) {
  if (cache.records.empty()) throw std::invalid_argument("chebotarev_density: empty cache");
  ChebotarevReport rep;
  rep.d = d;
  rep.total = cache.records.size();
  for (const auto& rec : cache.records)
    if (rec.order % d == 0) ++rep.hits;
  rep.observed = Rational(bigint(rep.hits), bigint(rep.total));
  rep.expected = dens::lambda_squarefree(g, d);
  double obs = rep.observed.to_double();
  double exp_v = rep.expected.to_double();
  if (exp_v <= 0.0 || exp_v >= 1.0) {
    rep.z = 0.0;
  } else {
    rep.z = (obs - exp_v) * std::sqrt(static_cast<double>(rep.total)) /
            std::sqrt(exp_v * (1.0 - exp_v));
  }
  return rep;
}

EkCdf erdos_kac_cdf(const SweepCache& cache, std::span<const double> gamma_grid) {
  EkCdf out;
  out.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
  if (!std::is_sorted(out.gamma_grid.begin(), out.gamma_grid.end()))
    throw std::invalid_argument("erdos_kac_cdf: gamma grid must be sorted");
  std::vector<double> stats;
  double omega_sum = 0.0;
  for (const auto& rec : cache.records) {
    if (rec.p < 3) continue;  // log log p must be positive
    double ll = std::log(std::log(static_cast<double>(rec.p)));
    if (ll <= 0.0) continue;
    int om = arith::factorize(rec.order).small_omega();
    omega_sum += om;
    stats.push_back((om - ll) / std::sqrt(ll));
  }
  if (stats.empty()) throw std::invalid_argument("erdos_kac_cdf: no eligible records");
  std::sort(stats.begin(), stats.end());
  out.sample_size = stats.size();
  out.mean_omega = omega_sum / static_cast<double>(stats.size());
  out.empirical.reserve(out.gamma_grid.size());
  out.gaussian.reserve(out.gamma_grid.size());
  out.sup_distance = 0.0;
  for (double gamma : out.gamma_grid) {
    auto it = std::upper_bound(stats.begin(), stats.end(), gamma);
    double emp = static_cast<double>(it - stats.begin()) / static_cast<double>(stats.size());
    double gau = normal_cdf(gamma);
    out.empirical.push_back(emp);
    out.gaussian.push_back(gau);
    out.sup_distance = std::max(out.sup_distance, std::fabs(emp - gau));
  }
  return out;
}

void write_ratio_csv(std::ostream& os, const RatioSeries& s, std::optional<double> c_a, int g) {
  if (c_a) {
    os << "x,count,pi_x,ratio,ref_c_a,ref_c_a_over_g\n";
  } else {
    os << "x,count,pi_x,ratio\n";
  }
  for (const auto& pt : s.points) {
    os << pt.x << ',' << pt.count << ',' << pt.pi_x << ',' << format_real15(pt.ratio);
    if (c_a) {
      os << ',' << format_real15(*c_a) << ','
         << format_real15(*c_a / static_cast<double>(g));
    }
    os << '\n';
  }
}

void write_ek_csv(std::ostream& os, const EkCdf& cdf) {
  os << "gamma,empirical,gaussian\n";
  for (size_t i = 0; i < cdf.gamma_grid.size(); ++i) {
    os << format_real15(cdf.gamma_grid[i]) << ',' << format_real15(cdf.empirical[i]) << ','
       << format_real15(cdf.gaussian[i]) << '\n';
  }
}

void write_chebotarev_csv(std::ostream& os, const ChebotarevReport& r) {
  os << "d,observed_num,observed_den,expected_num,expected_den,z\n";
  os << r.d << ',' << r.observed.num() << ',' << r.observed.den() << ',' << r.expected.num()
     << ',' << r.expected.den() << ',' << format_real15(r.z) << '\n';
}

}  // namespace avo::stats
