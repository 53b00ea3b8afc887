#include "avo/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace avo::arith {

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  char buf[48];
  int pos = 48;
  while (v > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  return std::string(buf + pos, 48 - pos);
}

u128 u128_from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  u128 v = 0;
  constexpr u128 kMax = ~static_cast<u128>(0);
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit in integer literal");
    int d = ch - '0';
    if (v > (kMax - d) / 10) throw std::overflow_error("integer literal exceeds 128 bits");
    v = v * 10 + d;
  }
  return v;
}

u64 mulmod64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod64(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

u128 mulmod128(u128 a, u128 b, u128 m) {
  a %= m;
  b %= m;
  if (m <= (static_cast<u128>(1) << 64)) {
    // operands fit 64 bits, the plain product fits 128
    return (a * b) % m;
  }
  // shift-and-add; only exercised for moduli above 2^64
  u128 r = 0;
  while (b > 0) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a <<= 1;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

static u128 powmod128(u128 a, u128 e, u128 m) {
  u128 r = 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod128(r, a, m);
    a = mulmod128(a, a, m);
    e >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin64(u64 n, std::initializer_list<u64> bases) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 base : bases) {
    u64 a = base % n;
    if (a == 0) continue;
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool miller_rabin128(u128 n, std::initializer_list<u64> bases) {
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 base : bases) {
    u128 a = base % n;
    if (a == 0) continue;
    u128 x = powmod128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod128(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int jacobi128(i128 a, u128 n) {
  // n odd positive
  a %= static_cast<i128>(n);
  if (a < 0) a += static_cast<i128>(n);
  u128 ua = static_cast<u128>(a);
  u128 un = n;
  int result = 1;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      u128 r = un & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(ua, un);
    if ((ua & 3) == 3 && (un & 3) == 3) result = -result;
    ua %= un;
  }
  return un == 1 ? result : 0;
}

// Strong Lucas probable-prime test with Selfridge parameters.
bool strong_lucas128(u128 n) {
  // find D in 5, -7, 9, -11, ... with jacobi(D, n) = -1
  i128 d = 5;
  while (true) {
    int j = jacobi128(d, n);
    if (j == 0) return false;  // gcd(|D|, n) > 1 with n > |D| => composite
    if (j == -1) break;
    d = d > 0 ? -(d + 2) : -(d - 2);
    if (d > 1000 || d < -1000) {
      // n would be a perfect square; squares never reach here after MR
      return false;
    }
  }
  // P = 1, Q = (1 - D)/4
  i128 q_signed = (1 - d) / 4;
  u128 q = q_signed >= 0 ? static_cast<u128>(q_signed) % n
                         : n - (static_cast<u128>(-q_signed) % n);
  u128 delta = n + 1;
  u128 s_part = delta;
  int r = 0;
  while ((s_part & 1) == 0) {
    s_part >>= 1;
    ++r;
  }
  // Lucas sequences via binary chain on index s_part
  u128 u = 1, v = 1, qk = q;  // U_1, V_1, Q^1
  int bits = 0;
  u128 tmp = s_part;
  while (tmp > 1) {
    tmp >>= 1;
    ++bits;
  }
  u128 inv2 = (n + 1) / 2;  // inverse of 2 mod odd n
  for (int i = bits - 1; i >= 0; --i) {
    // double: U_2k = U_k V_k, V_2k = V_k^2 - 2 Q^k
    u = mulmod128(u, v, n);
    v = mulmod128(v, v, n);
    u128 two_qk = mulmod128(2, qk, n);
    v = (v + n - two_qk) % n;
    qk = mulmod128(qk, qk, n);
    if ((s_part >> i) & 1) {
      // increment: U_{k+1} = (U_k + V_k)/2, V_{k+1} = (D U_k + V_k)/2
      u128 du = mulmod128(d >= 0 ? static_cast<u128>(d) % n : n - (static_cast<u128>(-d) % n), u, n);
      u128 nu = mulmod128((u + v) % n, inv2, n);
      u128 nv = mulmod128((du + v) % n, inv2, n);
      u = nu;
      v = nv;
      qk = mulmod128(qk, q, n);
    }
  }
  if (u == 0 || v == 0) return true;
  for (int i = 1; i < r; ++i) {
    v = mulmod128(v, v, n);
    u128 two_qk = mulmod128(2, qk, n);
    v = (v + n - two_qk) % n;
    if (v == 0) return true;
    qk = mulmod128(qk, qk, n);
  }
  return false;
}

bool is_perfect_square128(u128 n) {
  if (n == 0) return true;
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  for (u128 c = (r > 2 ? r - 2 : 0); c <= r + 2; ++c) {
    if (c * c == n) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u128 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41ull * 41ull) return true;
  if (n < (static_cast<u128>(1) << 64)) {
    // deterministic for all 64-bit inputs
    return miller_rabin64(static_cast<u64>(n),
                          {2, 325, 9375, 28178, 450775, 9780504, 1795265022});
  }
  if (!miller_rabin128(n, {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})) return false;
  if (is_perfect_square128(n)) return false;
  return strong_lucas128(n);
}

int FactoredInteger::big_omega() const {
  int s = 0;
  for (const auto& [p, e] : factors) s += e;
  return s;
}

int FactoredInteger::small_omega() const { return static_cast<int>(factors.size()); }

u128 FactoredInteger::recompose() const {
  u128 v = 1;
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) v *= p;
  return v;
}

namespace {

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = primes_up_to(100000);
  return primes;
}

u64 brent_rho64(u64 n) {
  // n odd composite, no factor below the trial bound; deterministic cycle walk
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    int lam = 1;
    while (d == 1) {
      x = y;
      for (int i = 0; i < lam; ++i) y = (mulmod64(y, y, n) + c) % n;
      int k = 0;
      while (k < lam && d == 1) {
        u64 ys = y;
        int lim = std::min(128, lam - k);
        for (int i = 0; i < lim; ++i) {
          y = (mulmod64(y, y, n) + c) % n;
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        if (d == n) {
          // backtrack one step at a time
          d = 1;
          y = ys;
          do {
            y = (mulmod64(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, n);
          } while (d == 1);
          break;
        }
        k += lim;
      }
      lam *= 2;
      if (lam > (1 << 28)) break;
    }
    if (d != n && d != 1) return d;
  }
}

u128 brent_rho128(u128 n) {
  for (u128 c = 1;; ++c) {
    u128 x = 2, y = 2, d = 1;
    int lam = 1;
    while (d == 1) {
      x = y;
      for (int i = 0; i < lam; ++i) y = (mulmod128(y, y, n) + c) % n;
      int k = 0;
      while (k < lam && d == 1) {
        u128 ys = y;
        u128 q = 1;
        int lim = std::min(64, lam - k);
        for (int i = 0; i < lim; ++i) {
          y = (mulmod128(y, y, n) + c) % n;
          q = mulmod128(q, x > y ? x - y : y - x, n);
        }
        d = gcd_u128(q, n);
        if (d == n) {
          d = 1;
          y = ys;
          do {
            y = (mulmod128(y, y, n) + c) % n;
            d = gcd_u128(x > y ? x - y : y - x, n);
          } while (d == 1);
          break;
        }
        k += lim;
      }
      lam *= 2;
    }
    if (d != n && d != 1) return d;
  }
}

void factor_into(u128 n, std::vector<std::pair<u128, int>>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  u128 d;
  if (n < (static_cast<u128>(1) << 64)) {
    d = brent_rho64(static_cast<u64>(n));
  } else {
    d = brent_rho128(n);
  }
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

FactoredInteger factorize(u128 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  FactoredInteger r;
  r.n = n;
  if (n == 1) return r;
  for (u64 p : small_primes()) {
    if (static_cast<u128>(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      r.factors.emplace_back(p, e);
    }
  }
  if (n > 1) {
    std::vector<std::pair<u128, int>> rest;
    factor_into(n, rest);
    std::sort(rest.begin(), rest.end());
    // merge equal primes from recursive splits
    for (const auto& [p, e] : rest) {
      if (!r.factors.empty() && r.factors.back().first == p)
        r.factors.back().second += e;
      else
        r.factors.emplace_back(p, e);
    }
  }
  return r;
}

std::vector<u64> primes_up_to(u64 x) {
  std::vector<u64> primes;
  if (x < 2) return primes;
  std::vector<std::uint8_t> comp(x + 1, 0);
  for (u64 i = 2; i * i <= x; ++i) {
    if (!comp[i]) {
      for (u64 j = i * i; j <= x; j += i) comp[j] = 1;
    }
  }
  primes.reserve(static_cast<size_t>(x > 16 ? x / (std::log(static_cast<double>(x)) - 1.1) : 8));
  for (u64 i = 2; i <= x; ++i)
    if (!comp[i]) primes.push_back(i);
  return primes;
}

u64 prime_count(u64 x) { return primes_up_to(x).size(); }

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double inv_log(double t) { return 1.0 / std::log(t); }

double integrate_inv_log(double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = inv_log(a), fm = inv_log(m), fb = inv_log(b);
  return adaptive_simpson(inv_log, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 60);
}

}  // namespace

double log_integral(double x) {
  if (!(x >= 2.0)) throw std::invalid_argument("log_integral: x must be >= 2");
  if (x == 2.0) return 0.0;
  const double e = std::exp(1.0);
  // split at e where 1/log t still changes slope quickly
  if (x <= e) return integrate_inv_log(2.0, x, 1e-14 * (x - 2.0 + 1.0));
  double head = integrate_inv_log(2.0, e, 1e-15);
  // piecewise doubling keeps the adaptive recursion shallow for large x
  double total = head;
  double lo = e;
  while (lo < x) {
    double hi = std::min(x, lo * 4.0);
    total += integrate_inv_log(lo, hi, 1e-13 * std::max(1.0, (hi - lo) / std::log(hi)));
    lo = hi;
  }
  return total;
}

// ---------------------------------------------------------------------------
// finite fields

namespace {

// no root in F_p; sufficient for irreducibility in degrees 2 and 3
bool has_root_mod_p(const std::array<u64, 4>& poly, int deg, u64 p) {
  for (u64 x = 0; x < p; ++x) {
    u64 acc = poly[deg] % p;
    for (int i = deg - 1; i >= 0; --i) acc = (mulmod64(acc, x, p) + poly[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  u64 r = powmod64(a, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

}  // namespace

FiniteField build_field(u64 p, int k) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("build_field: p must be an odd prime");
  if (k < 1 || k > 3) throw std::invalid_argument("build_field: k must be 1, 2 or 3");
  long double qt = std::pow(static_cast<long double>(p), k);
  if (qt >= static_cast<long double>(static_cast<u64>(1) << 62) * 2.0L)
    throw std::overflow_error("build_field: p^k exceeds 2^63");
  FiniteField F;
  F.p = p;
  F.k = k;
  F.q = 1;
  for (int i = 0; i < k; ++i) F.q *= p;
  F.modulus = {0, 0, 0, 0};
  F.modulus[k] = 1;
  if (k == 1) {
    // modulus x
    return F;
  }
  if (k == 2) {
    // x^2 + c with -c a nonsquare; b = 0 candidates precede all b > 0 in
    // the (coeff of x, constant) lexicographic scan
    for (u64 c = 1; c < p; ++c) {
      if (legendre(p - c, p) == -1) {
        F.modulus[0] = c;
        return F;
      }
    }
    throw std::logic_error("build_field: no irreducible x^2 + c found");
  }
  // k == 3: scan (a2, a1, a0) lexicographically, keep the first with no root
  for (u64 a2 = 0; a2 < p; ++a2) {
    for (u64 a1 = 0; a1 < p; ++a1) {
      for (u64 a0 = 1; a0 < p; ++a0) {  // a0 = 0 has the root 0
        std::array<u64, 4> cand = {a0, a1, a2, 1};
        if (!has_root_mod_p(cand, 3, p)) {
          F.modulus = cand;
          return F;
        }
      }
    }
  }
  throw std::logic_error("build_field: no irreducible cubic found");
}

FieldElement fe_from(const FiniteField& F, std::vector<u64> coeffs) {
  if (static_cast<int>(coeffs.size()) != F.k)
    throw std::invalid_argument("fe_from: coefficient count must equal the degree");
  FieldElement a;
  for (int i = 0; i < F.k; ++i) a.c[i] = coeffs[i] % F.p;
  return a;
}

FieldElement fe_const(const FiniteField& F, u64 v) {
  FieldElement a;
  a.c[0] = v % F.p;
  return a;
}

bool fe_is_zero(const FiniteField& F, const FieldElement& a) {
  for (int i = 0; i < F.k; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

bool fe_equal(const FiniteField& F, const FieldElement& a, const FieldElement& b) {
  for (int i = 0; i < F.k; ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

FieldElement fe_add(const FiniteField& F, const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  for (int i = 0; i < F.k; ++i) {
    u64 s = a.c[i] + b.c[i];
    r.c[i] = s >= F.p ? s - F.p : s;
  }
  return r;
}

FieldElement fe_sub(const FiniteField& F, const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  for (int i = 0; i < F.k; ++i) {
    r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + F.p - b.c[i];
  }
  return r;
}

FieldElement fe_mul(const FiniteField& F, const FieldElement& a, const FieldElement& b) {
  const u64 p = F.p;
  const int k = F.k;
  FieldElement r;
  if (k == 1) {
    r.c[0] = mulmod64(a.c[0], b.c[0], p);
    return r;
  }
  if (k == 2 && F.modulus[1] == 0) {
    // modulus x^2 + c, i.e. t^2 = -c (the canonical construction)
    u64 c = F.modulus[0];
    u64 t0 = mulmod64(a.c[0], b.c[0], p);
    u64 t2 = mulmod64(a.c[1], b.c[1], p);
    u64 cross = (mulmod64(a.c[0], b.c[1], p) + mulmod64(a.c[1], b.c[0], p)) % p;
    u64 sub = mulmod64(c, t2, p);
    r.c[0] = (t0 + p - sub) % p;
    r.c[1] = cross;
    return r;
  }
  // convolution then reduction by the monic modulus; handles any k <= 3
  u64 prod[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < k; ++i) {
    if (a.c[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < k; ++j) {
      prod[i + j] = (prod[i + j] + mulmod64(a.c[static_cast<size_t>(i)],
                                            b.c[static_cast<size_t>(j)], p)) % p;
    }
  }
  for (int d = 2 * (k - 1); d >= k; --d) {
    u64 lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k; ++i) {
      u64 sub = mulmod64(lead, F.modulus[static_cast<size_t>(i)], p);
      int idx = d - k + i;
      prod[idx] = (prod[idx] + p - sub) % p;
    }
  }
  for (int i = 0; i < k; ++i) r.c[static_cast<size_t>(i)] = prod[i];
  return r;
}

FieldElement fe_pow(const FiniteField& F, FieldElement a, u128 e) {
  FieldElement r = fe_const(F, 1);
  while (e > 0) {
    if (e & 1) r = fe_mul(F, r, a);
    a = fe_mul(F, a, a);
    e >>= 1;
  }
  return r;
}

u64 fe_norm(const FiniteField& F, const FieldElement& a) {
  const u64 p = F.p;
  if (F.k == 1) return a.c[0];
  if (F.k == 2) {
    // det of multiplication by a in basis 1, t with t^2 = -b t - c:
    // N(a0 + a1 t) = a0^2 - b a0 a1 + c a1^2
    u64 b = F.modulus[1], c = F.modulus[0];
    u64 n0 = mulmod64(a.c[0], a.c[0], p);
    u64 n1 = mulmod64(b, mulmod64(a.c[0], a.c[1], p), p);
    u64 n2 = mulmod64(c, mulmod64(a.c[1], a.c[1], p), p);
    return (n0 + p - n1 + n2) % p;
  }
  // k == 3: determinant of the multiplication-by-a matrix in basis 1, t, t^2
  FieldElement t = fe_from(F, {0, 1, 0});
  FieldElement col0 = a;
  FieldElement col1 = fe_mul(F, a, t);
  FieldElement col2 = fe_mul(F, col1, t);
  auto det3 = [&](const FieldElement& x, const FieldElement& y, const FieldElement& z) -> u64 {
    i128 d = 0;
    d += static_cast<i128>(x.c[0]) * (static_cast<i128>(y.c[1]) * z.c[2] -
                                      static_cast<i128>(y.c[2]) * z.c[1]);
    d -= static_cast<i128>(y.c[0]) * (static_cast<i128>(x.c[1]) * z.c[2] -
                                      static_cast<i128>(x.c[2]) * z.c[1]);
    d += static_cast<i128>(z.c[0]) * (static_cast<i128>(x.c[1]) * y.c[2] -
                                      static_cast<i128>(x.c[2]) * y.c[1]);
    i128 m = d % static_cast<i128>(p);
    if (m < 0) m += p;
    return static_cast<u64>(m);
  };
  return det3(col0, col1, col2);
}

int quadratic_character(const FieldElement& a, const FiniteField& F) {
  if (fe_is_zero(F, a)) return 0;
  return legendre(fe_norm(F, a), F.p);
}

}  // namespace avo::arith
