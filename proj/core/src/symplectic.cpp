#include "avo/symplectic.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "avo/arith.hpp"

namespace avo::sympl {

using arith::i128;
using arith::u128;

namespace {

void validate_shape(int g, u64 n) {
  if (g < 1 || g > 4) throw std::invalid_argument("matrix genus must be in 1..4");
  if (n < 2) throw std::invalid_argument("modulus must be >= 2");
}

}  // namespace

MatrixModN zero_matrix(int g, u64 n) {
  validate_shape(g, n);
  MatrixModN m;
  m.g = g;
  m.n = n;
  m.e.assign(static_cast<size_t>(4) * g * g, 0);
  return m;
}

MatrixModN identity_matrix(int g, u64 n) {
  MatrixModN m = zero_matrix(g, n);
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = 1 % n;
  return m;
}

MatrixModN standard_j(int g, u64 n) {
  MatrixModN m = zero_matrix(g, n);
  for (int i = 0; i < g; ++i) {
    m.at(i, g + i) = 1 % n;
    m.at(g + i, i) = n - 1;
  }
  return m;
}

MatrixModN sympl_multiply(const MatrixModN& a, const MatrixModN& b) {
  if (a.g != b.g || a.n != b.n)
    throw std::invalid_argument("sympl_multiply: dimension or modulus mismatch");
  MatrixModN r = zero_matrix(a.g, a.n);
  int d = a.dim();
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      u64 aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < d; ++j) {
        r.at(i, j) = (r.at(i, j) + arith::mulmod64(aik, b.at(k, j), a.n)) % a.n;
      }
    }
  }
  return r;
}

namespace {

// <c_i, c_j> under J = [[0, I], [-I, 0]], i.e. (M^t J M)_{ij}
u64 column_pairing(const MatrixModN& m, int i, int j) {
  u128 plus = 0, minus = 0;
  int g = m.g;
  for (int t = 0; t < g; ++t) {
    plus += static_cast<u128>(m.at(t, i)) * m.at(t + g, j);
    minus += static_cast<u128>(m.at(t + g, i)) * m.at(t, j);
  }
  u64 a = static_cast<u64>(plus % m.n);
  u64 b = static_cast<u64>(minus % m.n);
  return a >= b ? a - b : a + m.n - b;
}

}  // namespace

std::optional<u64> is_gsp(const MatrixModN& m) {
  int g = m.g, d = m.dim();
  u64 mu = column_pairing(m, 0, g);
  if (std::gcd(mu, m.n) != 1) return std::nullopt;
  for (int t = 1; t < g; ++t) {
    if (column_pairing(m, t, t + g) != mu) return std::nullopt;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (j == i + g) continue;
      if (column_pairing(m, i, j) != 0) return std::nullopt;
    }
  }
  return mu;
}

// ---------------------------------------------------------------------------
// exact characteristic polynomial on the canonical integer lift

namespace {

// Fraction-free (Bareiss) determinant; exact over the integers.
template <typename Int>
Int bareiss_det(std::vector<Int>& a, int k) {
  if (k == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (int col = 0; col < k - 1; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r) {
      if (a[static_cast<size_t>(r) * k + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Int(0);
    if (pivot != col) {
      for (int j = 0; j < k; ++j)
        std::swap(a[static_cast<size_t>(pivot) * k + j], a[static_cast<size_t>(col) * k + j]);
      sign = -sign;
    }
    for (int i = col + 1; i < k; ++i) {
      for (int j = col + 1; j < k; ++j) {
        Int v = a[static_cast<size_t>(i) * k + j] * a[static_cast<size_t>(col) * k + col] -
                a[static_cast<size_t>(i) * k + col] * a[static_cast<size_t>(col) * k + j];
        a[static_cast<size_t>(i) * k + j] = v / prev;
      }
      a[static_cast<size_t>(i) * k + col] = 0;
    }
    prev = a[static_cast<size_t>(col) * k + col];
  }
  Int det = a[static_cast<size_t>(k - 1) * k + (k - 1)];
  return sign > 0 ? det : Int(-det);
}

}  // namespace

CharPolyInt char_poly(const MatrixModN& m) {
  int d = m.dim();
  CharPolyInt cp;
  cp.g = m.g;
  cp.coeffs.assign(d + 1, bigint(0));
  cp.coeffs[0] = 1;
  // coefficient of x^{d-k} is (-1)^k * (sum of principal k x k minors)
  std::vector<bigint> sums(d + 1, bigint(0));
  std::vector<int> idx;
  std::vector<bigint> sub;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    idx.clear();
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    int k = static_cast<int>(idx.size());
    sub.assign(static_cast<size_t>(k) * k, bigint(0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[static_cast<size_t>(i) * k + j] = m.at(idx[i], idx[j]);
    sums[k] += bareiss_det(sub, k);
  }
  bigint mod(m.n);
  for (int k = 1; k <= d; ++k) {
    bigint c = (k % 2 == 0) ? sums[k] : -sums[k];
    bigint r = c % mod;
    if (r < 0) r += mod;
    cp.coeffs[k] = r;
  }
  return cp;
}

u64 char_poly_at_one(const MatrixModN& m) {
  int d = m.dim();
  if (m.n <= 10000) {
    std::vector<i128> a(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        a[static_cast<size_t>(i) * d + j] =
            (i == j ? static_cast<i128>(1) : static_cast<i128>(0)) - static_cast<i128>(m.at(i, j));
    i128 det = bareiss_det(a, d);
    i128 r = det % static_cast<i128>(m.n);
    if (r < 0) r += m.n;
    return static_cast<u64>(r);
  }
  std::vector<bigint> a(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      a[static_cast<size_t>(i) * d + j] = bigint(i == j ? 1 : 0) - bigint(m.at(i, j));
  bigint det = bareiss_det(a, d);
  bigint r = det % bigint(m.n);
  if (r < 0) r += m.n;
  return r.convert_to<u64>();
}

// ---------------------------------------------------------------------------
// closed-form orders

bigint sp_order_closed(int g, u64 l) {
  validate_shape(g, l);
  if (!arith::is_prime(l)) throw std::invalid_argument("sp_order_closed: l must be prime");
  bigint L(l);
  bigint r = boost::multiprecision::pow(L, g * g);
  for (int i = 1; i <= g; ++i) r *= boost::multiprecision::pow(L, 2 * i) - 1;
  return r;
}

bigint group_order_closed(int g, u64 l, int k) {
  validate_shape(g, l);
  if (!arith::is_prime(l)) throw std::invalid_argument("group_order_closed: l must be prime");
  if (k < 1) throw std::invalid_argument("group_order_closed: k must be >= 1");
  bigint L(l);
  int expo = g * g + (k - 1) * (2 * g * g + g + 1);
  bigint r = (L - 1) * boost::multiprecision::pow(L, expo);
  for (int i = 1; i <= g; ++i) r *= boost::multiprecision::pow(L, 2 * i) - 1;
  return r;
}

BorelOrders borel_orders_closed(int g, u64 l, int k) {
  validate_shape(g, l);
  if (!arith::is_prime(l)) throw std::invalid_argument("borel_orders_closed: l must be prime");
  if (k != 1 && k != 2) throw std::invalid_argument("borel_orders_closed: k must be 1 or 2");
  bigint L(l);
  BorelOrders r;
  r.u = boost::multiprecision::pow(L, k * g * g);
  r.b = boost::multiprecision::pow(L - 1, g + 1) *
        boost::multiprecision::pow(L, (k - 1) * (g + 1)) * r.u;
  return r;
}

// ---------------------------------------------------------------------------
// census

namespace {

struct ScanCtx {
  int g = 1;
  int dim = 2;
  u64 n = 2;
  CensusClass cls = CensusClass::G;
  u64 m_target = 1;
  u64 cprime_mod = 1;
  std::vector<std::uint8_t> is_unit;
  // column pairs: (i, j, required) with required = 1 for the mu positions
  std::vector<std::array<int, 2>> zero_pairs;
  std::vector<std::array<int, 2>> mu_pairs;
};

long long pairing_raw(const std::uint32_t* m, const ScanCtx& c, int i, int j) {
  long long s = 0;
  for (int t = 0; t < c.g; ++t) {
    s += static_cast<long long>(m[static_cast<size_t>(t) * c.dim + i]) *
         m[static_cast<size_t>(t + c.g) * c.dim + j];
    s -= static_cast<long long>(m[static_cast<size_t>(t + c.g) * c.dim + i]) *
         m[static_cast<size_t>(t) * c.dim + j];
  }
  s %= static_cast<long long>(c.n);
  return s < 0 ? s + static_cast<long long>(c.n) : s;
}

bool gsp_multiplicator(const std::uint32_t* m, const ScanCtx& c, u64& mu) {
  for (const auto& pr : c.zero_pairs) {
    if (pairing_raw(m, c, pr[0], pr[1]) != 0) return false;
  }
  mu = static_cast<u64>(pairing_raw(m, c, c.mu_pairs[0][0], c.mu_pairs[0][1]));
  if (!c.is_unit[mu]) return false;
  for (size_t t = 1; t < c.mu_pairs.size(); ++t) {
    if (static_cast<u64>(pairing_raw(m, c, c.mu_pairs[t][0], c.mu_pairs[t][1])) != mu)
      return false;
  }
  return true;
}

u64 char1_of_lift(const std::uint32_t* m, int dim, u64 n, u64 modulus) {
  std::vector<i128> a(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      a[static_cast<size_t>(i) * dim + j] =
          (i == j ? static_cast<i128>(1) : static_cast<i128>(0)) -
          static_cast<i128>(m[static_cast<size_t>(i) * dim + j]);
  (void)n;
  i128 det = bareiss_det(a, dim);
  i128 r = det % static_cast<i128>(modulus);
  if (r < 0) r += static_cast<i128>(modulus);
  return static_cast<u64>(r);
}

bool borel_shape(const std::uint32_t* m, const ScanCtx& c) {
  // lower-left g x g block zero, upper-left block upper-triangular
  for (int i = c.g; i < c.dim; ++i)
    for (int j = 0; j < c.g; ++j)
      if (m[static_cast<size_t>(i) * c.dim + j] != 0) return false;
  for (int i = 1; i < c.g; ++i)
    for (int j = 0; j < i; ++j)
      if (m[static_cast<size_t>(i) * c.dim + j] != 0) return false;
  return true;
}

bool class_accepts(const std::uint32_t* m, const ScanCtx& c) {
  switch (c.cls) {
    case CensusClass::G: {
      u64 mu;
      return gsp_multiplicator(m, c, mu);
    }
    case CensusClass::Sp: {
      u64 mu;
      return gsp_multiplicator(m, c, mu) && mu == 1 % c.n;
    }
    case CensusClass::C: {
      u64 mu;
      return gsp_multiplicator(m, c, mu) && char1_of_lift(m, c.dim, c.n, c.n) == 0;
    }
    case CensusClass::CCoset: {
      u64 mu;
      return gsp_multiplicator(m, c, mu) && mu == c.m_target &&
             char1_of_lift(m, c.dim, c.n, c.n) == 0;
    }
    case CensusClass::CPrime: {
      u64 mu;
      if (!gsp_multiplicator(m, c, mu)) return false;
      u64 v = char1_of_lift(m, c.dim, c.n, c.cprime_mod);
      return std::gcd(v, c.cprime_mod) != 1;
    }
    case CensusClass::B: {
      u64 mu;
      return borel_shape(m, c) && gsp_multiplicator(m, c, mu);
    }
    case CensusClass::U: {
      u64 mu;
      if (!borel_shape(m, c)) return false;
      for (int i = 0; i < c.g; ++i)
        if (m[static_cast<size_t>(i) * c.dim + i] != 1 % c.n) return false;
      return gsp_multiplicator(m, c, mu) && mu == 1 % c.n;
    }
    case CensusClass::CB: {
      u64 mu;
      return borel_shape(m, c) && gsp_multiplicator(m, c, mu) &&
             char1_of_lift(m, c.dim, c.n, c.n) == 0;
    }
  }
  return false;
}

u64 dense_scan_range(const ScanCtx& c, u128 begin, u128 end) {
  int cells = c.dim * c.dim;
  std::vector<std::uint32_t> m(cells, 0);
  // decode `begin` into base-n digits, entry 0 most significant
  u128 v = begin;
  for (int t = cells - 1; t >= 0; --t) {
    m[static_cast<size_t>(t)] = static_cast<std::uint32_t>(v % c.n);
    v /= c.n;
  }
  u64 count = 0;
  for (u128 idx = begin; idx < end; ++idx) {
    if (class_accepts(m.data(), c)) ++count;
    // odometer increment
    int pos = cells - 1;
    while (pos >= 0) {
      if (++m[static_cast<size_t>(pos)] == c.n) {
        m[static_cast<size_t>(pos)] = 0;
        --pos;
      } else {
        break;
      }
    }
  }
  return count;
}

u64 dense_scan(const ScanCtx& c, u128 total, int workers) {
  if (workers <= 1 || total < 1u << 16) return dense_scan_range(c, 0, total);
  std::vector<u64> parts(static_cast<size_t>(workers), 0);
  std::vector<std::thread> threads;
  u128 chunk = total / workers + 1;
  for (int w = 0; w < workers; ++w) {
    u128 b = chunk * w;
    u128 e = std::min<u128>(total, b + chunk);
    if (b >= e) break;
    threads.emplace_back([&, w, b, e] { parts[static_cast<size_t>(w)] = dense_scan_range(c, b, e); });
  }
  for (auto& t : threads) t.join();
  return std::accumulate(parts.begin(), parts.end(), static_cast<u64>(0));
}

// Borel parametrization: (T diag units, strict-upper free, mu unit, symmetric
// free block); char(1) depends only on (diag, mu), each tuple contributing
// n^{g^2} matrices.
u64 inv_mod(u64 a, u64 n) {
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(n), newr = static_cast<long long>(a % n);
  while (newr != 0) {
    long long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  return t < 0 ? static_cast<u64>(t + static_cast<long long>(n)) : static_cast<u64>(t);
}

u64 parametrized_borel(const CensusSpec& spec, const CensusOptions& opt) {
  u64 n = spec.n;
  int g = spec.g;
  std::vector<u64> units;
  for (u64 v = 1; v < n; ++v)
    if (std::gcd(v, n) == 1) units.push_back(v);
  u64 phi = units.size();
  std::vector<u64> inv(n, 0);
  for (u64 v : units) inv[v] = inv_mod(v, n);
  u128 free_block = 1;
  for (int i = 0; i < g * g; ++i) free_block *= n;
  u128 tuples = phi;
  for (int i = 0; i < g; ++i) tuples *= phi;
  if (tuples > opt.guard)
    throw std::invalid_argument("census: parametrized Borel enumeration exceeds the guard rail");
  if (tuples * free_block > ~static_cast<u64>(0))
    throw std::overflow_error("census: Borel class size exceeds 64 bits");

  if (spec.cls == CensusClass::U) return static_cast<u64>(free_block);
  if (spec.cls == CensusClass::B) return static_cast<u64>(tuples * free_block);

  // CB: count (mu, t_1..t_g) with prod(1 - t_i) * prod(1 - mu t_i^{-1}) = 0 mod n
  u64 hits = 0;
  std::vector<size_t> t_idx(static_cast<size_t>(g), 0);
  for (u64 mu : units) {
    std::fill(t_idx.begin(), t_idx.end(), 0);
    while (true) {
      u64 prod = 1;
      for (int i = 0; i < g; ++i) {
        u64 ti = units[t_idx[static_cast<size_t>(i)]];
        prod = arith::mulmod64(prod, (1 + n - ti) % n, n);
        u64 mu_over_t = arith::mulmod64(mu, inv[ti], n);
        prod = arith::mulmod64(prod, (1 + n - mu_over_t) % n, n);
      }
      if (prod == 0) ++hits;
      int pos = g - 1;
      while (pos >= 0 && ++t_idx[static_cast<size_t>(pos)] == units.size()) {
        t_idx[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return static_cast<u64>(hits * free_block);
}

}  // namespace

u64 census(const CensusSpec& spec, const CensusOptions& opt) {
  validate_shape(spec.g, spec.n);
  if (spec.cls == CensusClass::CCoset && std::gcd(spec.m, spec.n) != 1)
    throw std::invalid_argument("census: coset multiplicator must be a unit mod n");
  if (spec.cls == CensusClass::CPrime) {
    if (spec.modulus < 2 || spec.n % spec.modulus != 0)
      throw std::invalid_argument("census: C' modulus must divide n");
  }

  bool borel_class = spec.cls == CensusClass::B || spec.cls == CensusClass::U ||
                     spec.cls == CensusClass::CB;
  if (borel_class && !opt.force_dense) return parametrized_borel(spec, opt);

  int cells = 4 * spec.g * spec.g;
  u128 total = 1;
  for (int i = 0; i < cells; ++i) {
    total *= spec.n;
    if (total > opt.guard)
      throw std::invalid_argument("census: search space n^{(2g)^2} exceeds the guard rail");
  }

  ScanCtx c;
  c.g = spec.g;
  c.dim = 2 * spec.g;
  c.n = spec.n;
  c.cls = spec.cls;
  c.m_target = spec.m % spec.n;
  c.cprime_mod = spec.modulus;
  c.is_unit.assign(spec.n, 0);
  for (u64 v = 0; v < spec.n; ++v) c.is_unit[v] = std::gcd(v, spec.n) == 1 ? 1 : 0;
  for (int i = 0; i < c.dim; ++i)
    for (int j = i + 1; j < c.dim; ++j) {
      if (j == i + c.g)
        c.mu_pairs.push_back({i, j});
      else
        c.zero_pairs.push_back({i, j});
    }

  int workers = opt.workers > 0 ? opt.workers
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return dense_scan(c, total, workers);
}

}  // namespace avo::sympl
