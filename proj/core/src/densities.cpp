#include "avo/densities.hpp"

#include <cmath>
#include <stdexcept>

#include "avo/arith.hpp"

namespace avo::dens {

namespace {

void validate_gl(int g, u64 l) {
  if (g < 1 || g > 4) throw std::invalid_argument("genus must be in 1..4");
  if (!arith::is_prime(l)) throw std::invalid_argument("l must be prime");
}

struct LambdaParts {
  bigint t1;  // -sum for the split branch, over denominator d1
  bigint d1;  // prod_{j=1..g} (1 - l^{2j})
  bigint t2;  // -sum for the nonsplit branch, over denominator d2
  bigint d2;  // prod_{j=1..g} (1 - l^j)
  bigint p;   // prod_{j=1..g} (1 + l^j) = d1 / d2
};

// Shared sums: branch "l | m-1" has terms l^r / prod_{j<=r}(1-l^{2j}); the
// other branch has 1 / prod_{j<=r}(1-l^j).
LambdaParts lambda_parts(int g, u64 l) {
  LambdaParts out;
  bigint L(l);
  std::vector<bigint> pw(2 * g + 1);
  pw[0] = 1;
  for (int i = 1; i <= 2 * g; ++i) pw[i] = pw[i - 1] * L;

  // suffix products prod_{j=r+1..g}
  std::vector<bigint> suf1(g + 2), suf2(g + 2);
  suf1[g + 1] = 1;
  suf2[g + 1] = 1;
  for (int j = g; j >= 1; --j) {
    suf1[j] = suf1[j + 1] * (bigint(1) - pw[2 * j]);
    suf2[j] = suf2[j + 1] * (bigint(1) - pw[j]);
  }
  out.d1 = suf1[1];
  out.d2 = suf2[1];
  out.t1 = 0;
  out.t2 = 0;
  for (int r = 1; r <= g; ++r) {
    out.t1 += pw[r] * suf1[r + 1];
    out.t2 += suf2[r + 1];
  }
  out.p = 1;
  for (int j = 1; j <= g; ++j) out.p *= bigint(1) + pw[j];
  return out;
}

}  // namespace

Rational coset_density(int g, u64 l, u64 m) {
  validate_gl(g, l);
  if (m % l == 0) throw std::invalid_argument("coset_density: m must be a unit mod l");
  LambdaParts parts = lambda_parts(g, l);
  if ((m - 1) % l == 0) return Rational(-parts.t1, parts.d1);
  return Rational(-parts.t2, parts.d2);
}

Rational lambda(int g, u64 l) {
  validate_gl(g, l);
  LambdaParts parts = lambda_parts(g, l);
  // (d_split + (l-2) d_nonsplit) / (l-1) over the common denominator d1
  bigint num = -parts.t1 - bigint(l - 2) * parts.t2 * parts.p;
  bigint den = bigint(l - 1) * parts.d1;
  return Rational(std::move(num), std::move(den));
}

Rational lambda_squarefree(int g, u64 d) {
  if (d < 1) throw std::invalid_argument("lambda_squarefree: d must be positive");
  Rational r(1);
  if (d == 1) return r;
  arith::FactoredInteger f = arith::factorize(d);
  for (const auto& [p, e] : f.factors) {
    if (e > 1) throw std::invalid_argument("lambda_squarefree: d must be squarefree");
    r *= lambda(g, static_cast<u64>(p));
  }
  return r;
}

namespace {

// log of the Euler factor (1 - lambda_l)/(1 - 1/l), evaluated so the only
// rounding happens in the final long-double division and log1p.
long double log_factor(int g, u64 l) {
  Rational lam = lambda(g, l);
  // factor = l (D - N) / (D (l - 1));  x = factor - 1 = (lD - lN - lD + D)/(D(l-1))
  bigint num = bigint(l) * (lam.den() - lam.num());
  bigint den = lam.den() * bigint(l - 1);
  bigint diff = num - den;
  long double x = diff.convert_to<long double>() / den.convert_to<long double>();
  return std::log1p(x);
}

}  // namespace

EulerProductResult universal_constant(int g, int cutoff_exponent) {
  if (g < 1 || g > 4) throw std::invalid_argument("universal_constant: g must be in 1..4");
  if (cutoff_exponent < 2 || cutoff_exponent > 24)
    throw std::invalid_argument("universal_constant: cutoff exponent must be in 2..24");
  u64 bound = (static_cast<u64>(1) << cutoff_exponent) - 1;  // primes l < 2^n
  std::vector<u64> primes = arith::primes_up_to(bound);
  long double sum = 0.0L, comp = 0.0L;
  for (u64 l : primes) {
    long double term = log_factor(g, l);
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  EulerProductResult r;
  r.g = g;
  r.cutoff_exponent = cutoff_exponent;
  r.factor_count = primes.size();
  r.value = static_cast<double>(std::exp(sum));
  return r;
}

double koblitz_constant(int g, const ExceptionalData& data, int cutoff_exponent) {
  if (data.m < 1) throw std::invalid_argument("koblitz_constant: M must be >= 1");
  if (data.corrected_mass < Rational(0) || data.corrected_mass > Rational(1))
    throw std::invalid_argument("koblitz_constant: corrected mass must lie in [0, 1]");
  if (data.m == 1 && data.corrected_mass != Rational(1))
    throw std::invalid_argument("koblitz_constant: M = 1 forces corrected mass 1");
  if (cutoff_exponent < 2 || cutoff_exponent > 24)
    throw std::invalid_argument("koblitz_constant: cutoff exponent must be in 2..24");

  arith::FactoredInteger mf = arith::factorize(data.m);
  for (const auto& [p, e] : mf.factors)
    if (e > 1) throw std::invalid_argument("koblitz_constant: M must be squarefree");

  Rational head = data.corrected_mass;
  for (const auto& [p, e] : mf.factors) {
    head /= Rational(bigint(p) - 1, bigint(p));  // divide by (1 - 1/l)
  }
  u64 bound = (static_cast<u64>(1) << cutoff_exponent) - 1;
  std::vector<u64> primes = arith::primes_up_to(bound);
  long double sum = 0.0L, comp = 0.0L;
  for (u64 l : primes) {
    if (data.m % l == 0) continue;
    long double term = log_factor(g, l);
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(head.to_long_double() * std::exp(sum));
}

double sieve_v_partial(int g, double y, u64 coprime_to) {
  if (g < 1 || g > 4) throw std::invalid_argument("sieve_v_partial: g must be in 1..4");
  if (y < 2.0) return 1.0;
  std::vector<u64> primes = arith::primes_up_to(static_cast<u64>(y));
  long double sum = 0.0L;
  for (u64 l : primes) {
    if (coprime_to % l == 0) continue;
    Rational lam = lambda(g, l);
    long double x = -lam.to_long_double();
    sum += std::log1p(x);
  }
  return static_cast<double>(std::exp(sum));
}

}  // namespace avo::dens
