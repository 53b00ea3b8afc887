#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avo/arith.hpp"
#include "avo/rational.hpp"
#include "avo/symplectic.hpp"

// Hyperelliptic curves y^2 = f(x) over Q, reduction criteria, point counts
// over F_{p^k}, the Frobenius characteristic polynomial via Newton identities
// plus the functional equation, Jacobian orders, and resumable prime sweeps.

namespace avo::curves {

using arith::u128;
using arith::u64;

struct HyperellipticCurve {
  std::string label;
  int genus = 1;
  std::vector<long long> f;  // f[i] = coefficient of x^i; degree 2g+1 or 2g+2
  bigint disc;               // disc(f), nonzero

  int degree() const { return static_cast<int>(f.size()) - 1; }
};

// Validates degree/genus consistency and disc(f) != 0.
HyperellipticCurve make_curve(std::string label, int genus, std::vector<long long> f_coeffs);

bigint poly_discriminant(const std::vector<long long>& f);

// Odd p not dividing the leading coefficient, disc(f) nonzero mod p.
bool good_reduction(const HyperellipticCurve& c, u64 p);

// Projective point count of the smooth model over F_{p^k}.
u64 count_points(const HyperellipticCurve& c, u64 p, int k, u64 field_limit = u64(1) << 32);
u64 count_points(const HyperellipticCurve& c, const arith::FiniteField& F);

struct FrobeniusRecord {
  u64 p = 0;
  std::vector<u64> counts;    // N_1..N_g
  std::vector<long long> a;   // a_1..a_g
  u128 order = 0;             // char_p(1)
};

// Newton identities on s_k = p^k + 1 - N_k give a_1..a_g; the remaining
// coefficients follow from a_{2g-i} = p^{g-i} a_i. Throws when the counts
// are inconsistent with a Weil polynomial.
std::vector<long long> frobenius_charpoly(int genus, u64 p, const std::vector<u64>& counts);
sympl::CharPolyInt frobenius_charpoly_full(int genus, u64 p, const std::vector<long long>& a);

u128 jacobian_order(int genus, u64 p, const std::vector<long long>& a);

FrobeniusRecord frobenius_record(const HyperellipticCurve& c, u64 p,
                                 u64 field_limit = u64(1) << 32);

// order in [(sqrt(p)-1)^{2g}, (sqrt(p)+1)^{2g}], exact integer comparison.
bool weil_interval_ok(int genus, u64 p, u128 order);

struct SweepCache {
  std::string label;
  u64 x_max = 0;
  std::vector<FrobeniusRecord> records;  // sorted by p, no duplicates

  SweepCache truncated(u64 x) const;  // records with p <= x, x_max = min(x_max, x)
};

// One JSON object per line, sorted by p; see README for the schema.
SweepCache load_cache(const std::string& path);
std::string record_to_json(const std::string& label, const FrobeniusRecord& r);
void append_records(const std::string& path, const std::string& label,
                    const std::vector<FrobeniusRecord>& recs);

struct SweepOptions {
  u64 field_limit = u64(1) << 32;  // max p^k handled by the counting kernel
  int block = 64;                  // primes per append barrier
  int workers = 0;                 // 0: hardware concurrency
  std::string cache_path;          // when nonempty, records are appended per block
};

// Extends `cache` so every good-reduction prime p <= x_max has a record;
// existing records are reused, never recomputed.
SweepCache order_sweep(const HyperellipticCurve& c, u64 x_max, SweepCache cache,
                       const SweepOptions& opt = {});

const std::vector<HyperellipticCurve>& builtin_curves();
const HyperellipticCurve& builtin_curve(const std::string& label);  // throws on unknown
bool is_builtin_curve(const std::string& label);

// Structured text file {"label":..., "genus":..., "f":[c0,...]}.
HyperellipticCurve load_curve_file(const std::string& path);

}  // namespace avo::curves
