#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "avo/rational.hpp"

// Matrices over Z/nZ, the standard symplectic form J = [[0, I_g], [-I_g, 0]],
// similitude (multiplicator) detection, exact characteristic polynomials via
// integer lifts, closed-form subgroup orders, and the exhaustive census of
// conjugation-stable classes in GSp_2g(Z/nZ).

namespace avo::sympl {

using u64 = std::uint64_t;

struct MatrixModN {
  int g = 1;
  u64 n = 2;
  std::vector<u64> e;  // row-major, (2g)^2 entries, reduced mod n

  int dim() const { return 2 * g; }
  u64& at(int i, int j) { return e[static_cast<size_t>(i) * dim() + j]; }
  u64 at(int i, int j) const { return e[static_cast<size_t>(i) * dim() + j]; }
};

MatrixModN zero_matrix(int g, u64 n);
MatrixModN identity_matrix(int g, u64 n);
MatrixModN standard_j(int g, u64 n);

MatrixModN sympl_multiply(const MatrixModN& a, const MatrixModN& b);

// Multiplicator mu with M^t J M = mu J, mu a unit mod n; nullopt otherwise.
std::optional<u64> is_gsp(const MatrixModN& m);

// Monic integer characteristic polynomial: coeffs[i] is the coefficient of
// x^{2g-i} (coeffs[0] = 1), reduced into [0, n).
struct CharPolyInt {
  int g = 1;
  std::vector<bigint> coeffs;
};

CharPolyInt char_poly(const MatrixModN& m);
// det(I - M) mod n on the canonical integer lift; value in [0, n).
u64 char_poly_at_one(const MatrixModN& m);

// #GSp_2g(Z/l^k Z) and #Sp_2g(F_l).
bigint group_order_closed(int g, u64 l, int k);
bigint sp_order_closed(int g, u64 l);

struct BorelOrders {
  bigint b;
  bigint u;
};
// k = 1: #B(l) = (l-1)^{g+1} l^{g^2}, #U(l) = l^{g^2};
// k = 2: #B(l^2) = (l-1)^{g+1} l^{2g^2+g+1}, #U(l^2) = l^{2g^2}.
BorelOrders borel_orders_closed(int g, u64 l, int k);

enum class CensusClass {
  G,        // all of GSp_2g(Z/nZ)
  Sp,       // multiplicator 1
  B,        // Borel: block [[T,A],[0,*]] with T upper-triangular, in GSp
  U,        // unipotent elements of B
  C,        // char(1) = 0 mod n
  CB,       // C intersect B
  CCoset,   // C intersect {multiplicator = m}
  CPrime,   // gcd(char(1) mod M, M) != 1, censused over GSp(Z/nZ), M | n
};

struct CensusSpec {
  int g = 1;
  u64 n = 2;
  CensusClass cls = CensusClass::G;
  u64 m = 1;         // CCoset only
  u64 modulus = 1;   // CPrime only
};

struct CensusOptions {
  u64 guard = 10'000'000'000ull;  // max enumerated candidates
  bool force_dense = false;       // scan full matrix space even for B/U/CB
  int workers = 0;                // 0: hardware concurrency
};

u64 census(const CensusSpec& spec, const CensusOptions& opt = {});

}  // namespace avo::sympl
