#pragma once

#include <cstdint>

#include "avo/rational.hpp"

// Exact per-prime densities lambda_l = #C(l)/#G(l), their multiplicative
// extension to squarefree moduli, the universal Euler-product constants, and
// the Koblitz constant assembled from user-supplied exceptional data.

namespace avo::dens {

using u64 = std::uint64_t;

// Density of matrices with eigenvalue 1 inside the multiplicator-m coset of
// GSp_2g(F_l); two branches depending on l | m-1.
Rational coset_density(int g, u64 l, u64 m);

// lambda_l = (1/(l-1)) * [coset_density(m=1) + (l-2) * coset_density(m!=1)].
Rational lambda(int g, u64 l);

// prod_{l | d} lambda(g, l); d squarefree (throws otherwise), d = 1 -> 1.
Rational lambda_squarefree(int g, u64 d);

struct EulerProductResult {
  int g = 1;
  int cutoff_exponent = 2;
  double value = 1.0;
  u64 factor_count = 0;  // number of primes l < 2^cutoff_exponent
};

// prod_{l < 2^n} (1 - lambda_l) / (1 - 1/l), compensated log-space
// accumulation; absolute error < 1e-13 over the supported range.
EulerProductResult universal_constant(int g, int cutoff_exponent);

struct ExceptionalData {
  u64 m = 1;                   // squarefree product of exceptional primes
  Rational corrected_mass = 1; // 1 - #C'(M)/#G(M), in [0, 1]
};

// corrected_mass / prod_{l | M}(1 - 1/l) * prod_{l < 2^n, l coprime to M}
// (1 - lambda_l)/(1 - 1/l). Equals universal_constant when M = 1.
double koblitz_constant(int g, const ExceptionalData& data, int cutoff_exponent);

// prod_{l <= y, l coprime to M} (1 - lambda_l): the sieve's V(y).
double sieve_v_partial(int g, double y, u64 coprime_to = 1);

}  // namespace avo::dens
