#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "avo/arith.hpp"
#include "avo/curves.hpp"
#include "avo/rational.hpp"

// Computational surface of the weighted (Greaves-type) sieve: the weights W
// and gamma, the sifting function H, J(U,V) at V = 1/4, the constraint system
// with its optimal constants r(g,theta), theta*(g) and B, the Selberg upper
// bound coefficient, and the almost-prime inequality checker on sweep data.

namespace avo::sieve {

using arith::u128;
using arith::u64;

inline constexpr double kV0 = 0.074368;

struct SieveParams {
  int g = 1;
  Rational theta = Rational(1, 2);
  double xi = 0.0;
  double U = 0.0;
  double V = 0.25;
  long long r = 0;
  double B = 0.0;
  double epsilon = 0.0;
};

struct GreavesWeighting {
  double y = 2.0;
  double U = 0.75;
  double V = 0.25;
  u64 coprime_to = 1;  // the prime set P is {p : gcd(p, coprime_to) = 1}
};

// (log p / log y - V) / (U - V) on [y^V, y^U), else 0.
double weight_W(u64 p, const GreavesWeighting& w);

// max{0, 1 - sum_{p | n, p in P} (1 - W(p))}; n given factored.
double gamma_weight(const arith::FactoredInteger& n, const GreavesWeighting& w);

// H = sum_a gamma(gcd(a, P(y^U))); the prime product is handled as a set.
double sifting_H(std::span<const u128> orders, const GreavesWeighting& w);

// J(U, 1/4) = U log(1/U) + (1-U) log(1/(1-U)) - log(4/3) - (1/4) log 3.
double J_value(double U);

// ceil( ((9/2)g^3 + (1/2)g)/(1-theta) - 1/3 ), exact rational arithmetic.
long long r_of(int g, const Rational& theta);

// theta with r_of(g, theta) = 9g^3 + g attained exactly.
Rational theta_star(int g);

// (2g^2 + 3g + 6)/(1 - theta).
double selberg_upper_coeff(int g, double theta);

struct ConstraintReport {
  std::string name;
  bool satisfied = false;
  bool enforced = true;
};

std::vector<ConstraintReport> check_params(const SieveParams& p);

// xi = (1-theta)/((9/2)g^2 + 1/2) * (4/3 + eps), U = 3/4 - eps, V = 1/4,
// r = r_of(g, theta), B = J(U,V)/(xi (U-V)) (doubled when double_b is set).
// Enforced constraint failures throw; the remainder land in `reports`.
SieveParams optimal_params(int g, const Rational& theta, double epsilon = 1e-3,
                           bool double_b = false,
                           std::vector<ConstraintReport>* reports = nullptr);

struct Lemma36Report {
  u64 lhs = 0;         // #{orders with Omega <= r}
  double H = 0.0;
  u64 correction = 0;  // sum over y^V <= p < y^U of #{orders divisible by p^2}
  bool holds = true;   // lhs >= H - correction
};

Lemma36Report lemma36_check(const curves::SweepCache& cache, const SieveParams& p,
                            u64 coprime_to = 1);

}  // namespace avo::sieve
