#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "avo/curves.hpp"
#include "avo/rational.hpp"

// Order statistics over sweep caches: the prime-order ratio series, almost
// prime counts, empirical divisibility densities against lambda_d, and the
// empirical Erdos-Kac distribution.

namespace avo::stats {

using arith::u128;
using arith::u64;
using curves::SweepCache;

struct RatioPoint {
  u64 x = 0;
  u64 count = 0;  // records with p <= x and prime order
  u64 pi_x = 0;
  double ratio = 0.0;  // count * log(x) / pi(x)
};

struct RatioSeries {
  std::vector<RatioPoint> points;
};

RatioSeries koblitz_ratio(const SweepCache& cache, std::span<const u64> x_grid);

// #{records: p <= x, Omega(order) <= r}
u64 almost_prime_count(const SweepCache& cache, int r, u64 x);

struct ChebotarevReport {
  u64 d = 1;
  u64 hits = 0;
  u64 total = 0;
  Rational observed;  // hits/total
  Rational expected;  // lambda_d
  double z = 0.0;     // (obs - exp) * sqrt(total) / sqrt(exp (1 - exp))
};

ChebotarevReport chebotarev_density(const SweepCache& cache, u64 d, int g);

struct EkCdf {
  std::vector<double> gamma_grid;
  std::vector<double> empirical;
  std::vector<double> gaussian;
  double sup_distance = 0.0;
  u64 sample_size = 0;
  double mean_omega = 0.0;
};

EkCdf erdos_kac_cdf(const SweepCache& cache, std::span<const double> gamma_grid);

double normal_cdf(double x);

// CSV emission; headers exactly as documented in the README.
void write_ratio_csv(std::ostream& os, const RatioSeries& s,
                     std::optional<double> c_a = std::nullopt, int g = 1);
void write_ek_csv(std::ostream& os, const EkCdf& cdf);
void write_chebotarev_csv(std::ostream& os, const ChebotarevReport& r);

}  // namespace avo::stats
