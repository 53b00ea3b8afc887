#include "avo/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avo::sieve {

double weight_W(u64 p, const GreavesWeighting& w) {
  if (w.y < 2.0) throw std::invalid_argument("weight_W: y must be >= 2");
  double lp = std::log(static_cast<double>(p)) / std::log(w.y);
  if (lp < w.V || lp >= w.U) return 0.0;
  return (lp - w.V) / (w.U - w.V);
}

double gamma_weight(const arith::FactoredInteger& n, const GreavesWeighting& w) {
  if (w.y < 2.0) throw std::invalid_argument("gamma_weight: y must be >= 2");
  double acc = 1.0;
  for (const auto& [p, e] : n.factors) {
    if (p <= static_cast<arith::u128>(~static_cast<u64>(0)) &&
        w.coprime_to % static_cast<u64>(p) == 0)
      continue;  // primes outside P carry no weight
    double lp = static_cast<double>(std::log(static_cast<long double>(p))) / std::log(w.y);
    double W = (lp >= w.V && lp < w.U) ? (lp - w.V) / (w.U - w.V) : 0.0;
    acc -= 1.0 - W;
  }
  return std::max(0.0, acc);
}

double sifting_H(std::span<const u128> orders, const GreavesWeighting& w) {
  double z = std::pow(w.y, w.U);
  std::vector<u64> ps = arith::primes_up_to(static_cast<u64>(z));
  // gcd(a, P(y^U)) handled prime by prime; the literal product would overflow
  std::vector<u64> window;
  std::vector<double> penalty;  // 1 - W(p)
  for (u64 p : ps) {
    if (w.coprime_to % p == 0) continue;
    window.push_back(p);
    penalty.push_back(1.0 - weight_W(p, w));
  }
  double h = 0.0;
  for (u128 a : orders) {
    double acc = 1.0;
    for (size_t i = 0; i < window.size(); ++i) {
      if (a % window[i] == 0) acc -= penalty[i];
    }
    h += std::max(0.0, acc);
  }
  return h;
}

double J_value(double U) {
  if (U < 0.5 || U >= 1.0) throw std::invalid_argument("J_value: U must be in [1/2, 1)");
  return U * std::log(1.0 / U) + (1.0 - U) * std::log(1.0 / (1.0 - U)) - std::log(4.0 / 3.0) -
         0.25 * std::log(3.0);
}

long long r_of(int g, const Rational& theta) {
  if (g < 1) throw std::invalid_argument("r_of: g must be >= 1");
  if (theta < Rational(1, 2) || theta >= Rational(1))
    throw std::invalid_argument("r_of: theta must be in [1/2, 1)");
  // ((9/2)g^3 + (1/2)g)/(1-theta) - 1/3, exact ceiling
  Rational num(bigint(9) * g * g * g + g, 2);
  Rational q = num / (Rational(1) - theta) - Rational(1, 3);
  return q.ceil().convert_to<long long>();
}

Rational theta_star(int g) {
  if (g < 1) throw std::invalid_argument("theta_star: g must be >= 1");
  bigint base = bigint(9) * g * g * g + g;      // 9g^3 + g
  Rational num(base, 2);                        // (9/2)g^3 + (1/2)g
  Rational den = Rational(base) + Rational(1, 3);
  return Rational(1) - num / den;
}

double selberg_upper_coeff(int g, double theta) {
  if (theta >= 1.0) throw std::invalid_argument("selberg_upper_coeff: theta must be < 1");
  return (2.0 * g * g + 3.0 * g + 6.0) / (1.0 - theta);
}

std::vector<ConstraintReport> check_params(const SieveParams& p) {
  std::vector<ConstraintReport> out;
  double theta = p.theta.to_double();
  double g = p.g;
  out.push_back({"V0 <= V <= 1/4", p.V >= kV0 && p.V <= 0.25, true});
  out.push_back({"1/2 <= U < 1", p.U >= 0.5 && p.U < 1.0, true});
  out.push_back({"U + 3V >= 1", p.U + 3.0 * p.V >= 1.0, true});
  out.push_back({"g < xi (r U + V)", g < p.xi * (static_cast<double>(p.r) * p.U + p.V), true});
  out.push_back({"xi U < 1", p.xi * p.U < 1.0, true});
  // the paper guarantees this one only for g >= 2; report it regardless
  out.push_back({"theta + xi (g^2 + (3/2) g + 3) < 1",
                 theta + p.xi * (g * g + 1.5 * g + 3.0) < 1.0, p.g >= 2});
  out.push_back({"theta + xi U ((9/2) g^2 + 1/2) < 1",
                 theta + p.xi * p.U * (4.5 * g * g + 0.5) < 1.0, true});
  return out;
}

SieveParams optimal_params(int g, const Rational& theta, double epsilon, bool double_b,
                           std::vector<ConstraintReport>* reports) {
  if (g < 1) throw std::invalid_argument("optimal_params: g must be >= 1");
  if (epsilon <= 0.0 || epsilon >= 0.25)
    throw std::invalid_argument("optimal_params: epsilon must be in (0, 1/4)");
  if (theta < Rational(1, 2) || theta >= Rational(1))
    throw std::invalid_argument("optimal_params: theta must be in [1/2, 1)");
  SieveParams p;
  p.g = g;
  p.theta = theta;
  p.epsilon = epsilon;
  double one_minus_theta = (Rational(1) - theta).to_double();
  p.xi = one_minus_theta / (4.5 * g * g + 0.5) * (4.0 / 3.0 + epsilon);
  p.U = 0.75 - epsilon;
  p.V = 0.25;
  p.r = r_of(g, theta);
  p.B = J_value(p.U) / (p.xi * (p.U - p.V));
  if (double_b) p.B *= 2.0;
  std::vector<ConstraintReport> reps = check_params(p);
  for (const auto& rep : reps) {
    if (rep.enforced && !rep.satisfied)
      throw std::domain_error("optimal_params: constraint violated: " + rep.name);
  }
  if (reports) *reports = std::move(reps);
  return p;
}

Lemma36Report lemma36_check(const curves::SweepCache& cache, const SieveParams& p,
                            u64 coprime_to) {
  Lemma36Report rep;
  if (cache.records.empty()) return rep;
  double x = static_cast<double>(cache.x_max);
  double y = std::pow(x, p.xi);
  GreavesWeighting w{y, p.U, p.V, coprime_to};

  // preconditions: orders coprime to M, and max order <= y^{rU + V}
  long double bound = std::pow(static_cast<long double>(y),
                               static_cast<long double>(p.r) * p.U + p.V);
  std::vector<u128> orders;
  orders.reserve(cache.records.size());
  for (const auto& rec : cache.records) {
    if (coprime_to > 1 && arith::gcd_u128(rec.order, coprime_to) != 1)
      throw std::invalid_argument("lemma36_check: order " + arith::u128_to_string(rec.order) +
                                  " at p = " + std::to_string(rec.p) +
                                  " shares a factor with M = " + std::to_string(coprime_to));
    if (static_cast<long double>(rec.order) > bound)
      throw std::invalid_argument("lemma36_check: order " + arith::u128_to_string(rec.order) +
                                  " exceeds y^{rU+V} = " +
                                  std::to_string(static_cast<double>(bound)));
    orders.push_back(rec.order);
  }

  for (u128 a : orders)
    if (arith::factorize(a).big_omega() <= p.r) ++rep.lhs;

  rep.H = sifting_H(orders, w);

  double yv = std::pow(y, p.V), yu = std::pow(y, p.U);
  std::vector<u64> ps = arith::primes_up_to(static_cast<u64>(yu));
  for (u64 q : ps) {
    if (static_cast<double>(q) < yv || static_cast<double>(q) >= yu) continue;
    if (coprime_to % q == 0) continue;
    u128 q2 = static_cast<u128>(q) * q;
    for (u128 a : orders)
      if (a % q2 == 0) ++rep.correction;
  }
  rep.holds = static_cast<double>(rep.lhs) >= rep.H - static_cast<double>(rep.correction);
  return rep;
}

}  // namespace avo::sieve
