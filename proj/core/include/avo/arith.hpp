#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Exact integer, modular and finite-field primitives shared by every other
// component: deterministic primality up to 128 bits, factorization,
// prime sieves, the logarithmic integral, and small extension fields
// F_{p^k} (k <= 3) with quadratic-character evaluation.

namespace avo::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

std::string u128_to_string(u128 v);
u128 u128_from_string(std::string_view s);

u64 mulmod64(u64 a, u64 b, u64 m);
u64 powmod64(u64 a, u64 e, u64 m);
u128 mulmod128(u128 a, u128 b, u128 m);
u128 gcd_u128(u128 a, u128 b);

// Deterministic for n < 2^64 (fixed witness set) and for n < ~2^81
// (first twelve prime witnesses); beyond that the strong-pseudoprime +
// strong-Lucas combination has no known counterexample.
bool is_prime(u128 n);

struct FactoredInteger {
  u128 n = 1;
  std::vector<std::pair<u128, int>> factors;  // (prime, exponent), primes increasing

  int big_omega() const;    // Omega(n): prime factors with multiplicity
  int small_omega() const;  // omega(n): distinct prime factors
  bool is_almost_prime(int r) const { return big_omega() <= r; }
  u128 recompose() const;
};

FactoredInteger factorize(u128 n);  // throws on n == 0

std::vector<u64> primes_up_to(u64 x);
u64 prime_count(u64 x);  // pi(x), exact by sieve

// Integral of dt/log(t) from 2 to x, relative error <= 1e-10.
double log_integral(double x);

struct FiniteField {
  u64 p = 0;                      // odd prime characteristic
  int k = 1;                      // extension degree, 1..3
  u64 q = 0;                      // p^k
  std::array<u64, 4> modulus{};   // modulus[i] = coeff of x^i, modulus[k] = 1
};

// Field with the lexicographically smallest monic irreducible modulus of
// degree k (major key: highest-degree coefficient). Deterministic.
FiniteField build_field(u64 p, int k);

struct FieldElement {
  std::array<u64, 3> c{};  // coefficient i of x^i; entries beyond k-1 are zero
};

FieldElement fe_from(const FiniteField& F, std::vector<u64> coeffs);
FieldElement fe_const(const FiniteField& F, u64 a);
bool fe_is_zero(const FiniteField& F, const FieldElement& a);
bool fe_equal(const FiniteField& F, const FieldElement& a, const FieldElement& b);
FieldElement fe_add(const FiniteField& F, const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FiniteField& F, const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FiniteField& F, const FieldElement& a, const FieldElement& b);
FieldElement fe_pow(const FiniteField& F, FieldElement a, u128 e);

// Norm down to F_p (multiplication-matrix determinant).
u64 fe_norm(const FiniteField& F, const FieldElement& a);

// 0 for a = 0, +1 for nonzero squares, -1 otherwise.
int quadratic_character(const FieldElement& a, const FiniteField& F);

}  // namespace avo::arith
