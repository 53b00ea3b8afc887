#include "avo/curves.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace avo::curves {

using arith::FieldElement;
using arith::FiniteField;
using arith::i128;

// ---------------------------------------------------------------------------
// discriminant and curve construction

bigint poly_discriminant(const std::vector<long long>& f) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) throw std::invalid_argument("poly_discriminant: degree must be >= 1");
  std::vector<long long> df(static_cast<size_t>(d));
  for (int i = 1; i <= d; ++i) df[static_cast<size_t>(i - 1)] = f[static_cast<size_t>(i)] * i;
  int dd = d - 1;
  while (dd > 0 && df[static_cast<size_t>(dd)] == 0) --dd;
  if (dd == 0 && df[0] == 0) return bigint(0);  // f' = 0
  // Sylvester matrix of f (degree d) and f' (degree dd), size d + dd
  int n = d + dd;
  std::vector<bigint> s(static_cast<size_t>(n) * n, bigint(0));
  for (int r = 0; r < dd; ++r)
    for (int i = 0; i <= d; ++i)
      s[static_cast<size_t>(r) * n + r + i] = f[static_cast<size_t>(d - i)];
  for (int r = 0; r < d; ++r)
    for (int i = 0; i <= dd; ++i)
      s[static_cast<size_t>(dd + r) * n + r + i] = df[static_cast<size_t>(dd - i)];
  // Bareiss determinant
  bigint prev(1);
  int sign = 1;
  for (int col = 0; col < n - 1; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (s[static_cast<size_t>(r) * n + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return bigint(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j)
        std::swap(s[static_cast<size_t>(pivot) * n + j], s[static_cast<size_t>(col) * n + j]);
      sign = -sign;
    }
    for (int i = col + 1; i < n; ++i) {
      for (int j = col + 1; j < n; ++j) {
        bigint v = s[static_cast<size_t>(i) * n + j] * s[static_cast<size_t>(col) * n + col] -
                   s[static_cast<size_t>(i) * n + col] * s[static_cast<size_t>(col) * n + j];
        s[static_cast<size_t>(i) * n + j] = v / prev;
      }
      s[static_cast<size_t>(i) * n + col] = 0;
    }
    prev = s[static_cast<size_t>(col) * n + col];
  }
  bigint res = s[static_cast<size_t>(n - 1) * n + (n - 1)];
  if (sign < 0) res = -res;
  // disc = (-1)^{d(d-1)/2} Res(f, f') / lc(f)
  bigint disc = res / bigint(f[static_cast<size_t>(d)]);
  if ((static_cast<long long>(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

HyperellipticCurve make_curve(std::string label, int genus, std::vector<long long> f_coeffs) {
  if (genus < 1 || genus > 3) throw std::invalid_argument("curve genus must be 1, 2 or 3");
  int deg = static_cast<int>(f_coeffs.size()) - 1;
  if (deg != 2 * genus + 1 && deg != 2 * genus + 2)
    throw std::invalid_argument("curve " + label + ": deg f must be 2g+1 or 2g+2");
  if (f_coeffs.back() == 0)
    throw std::invalid_argument("curve " + label + ": leading coefficient must be nonzero");
  HyperellipticCurve c;
  c.label = std::move(label);
  c.genus = genus;
  c.f = std::move(f_coeffs);
  c.disc = poly_discriminant(c.f);
  if (c.disc == 0) throw std::invalid_argument("curve " + c.label + ": discriminant vanishes");
  return c;
}

bool good_reduction(const HyperellipticCurve& c, u64 p) {
  if (p == 2) return false;
  bigint pp(p);
  if (bigint(c.f.back()) % pp == 0) return false;
  return c.disc % pp != 0;
}

// ---------------------------------------------------------------------------
// point counting

namespace {

std::vector<u64> reduce_poly(const std::vector<long long>& f, u64 p) {
  std::vector<u64> fp(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    long long r = f[i] % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    fp[i] = static_cast<u64>(r);
  }
  return fp;
}

std::vector<std::int8_t> legendre_table(u64 p) {
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (u64 a = 1; a <= (p - 1) / 2; ++a) chi[arith::mulmod64(a, a, p)] = 1;
  return chi;
}

// affine sum over F_p via forward differences: sum of chi(f(x))
long long affine_chi_sum_k1(const std::vector<u64>& fp, u64 p,
                            const std::vector<std::int8_t>& chi) {
  int deg = static_cast<int>(fp.size()) - 1;
  // initial values f(0..deg) mod p
  std::vector<u64> d(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= deg; ++i) {
    u64 acc = 0;
    for (int j = deg; j >= 0; --j) acc = (arith::mulmod64(acc, static_cast<u64>(i), p) + fp[static_cast<size_t>(j)]) % p;
    d[static_cast<size_t>(i)] = acc;
  }
  // difference table in place
  for (int j = 1; j <= deg; ++j)
    for (int i = deg; i >= j; --i) {
      u64 a = d[static_cast<size_t>(i)], b = d[static_cast<size_t>(i - 1)];
      d[static_cast<size_t>(i)] = a >= b ? a - b : a + p - b;
    }
  long long sum = 0;
  for (u64 x = 0; x < p; ++x) {
    sum += chi[d[0]];
    for (int j = 0; j < deg; ++j) {
      u64 s = d[static_cast<size_t>(j)] + d[static_cast<size_t>(j) + 1];
      d[static_cast<size_t>(j)] = s >= p ? s - p : s;
    }
  }
  return sum;
}

// affine sum over F_{p^k}, k = 2 or 3: rows indexed by the t-part, forward
// differences along the constant coordinate, character via the norm map.
long long affine_chi_sum_ext(const HyperellipticCurve& c, const FiniteField& F,
                             const std::vector<u64>& fp,
                             const std::vector<std::int8_t>& chi) {
  const u64 p = F.p;
  const int k = F.k;
  const int deg = c.degree();
  std::vector<FieldElement> coeff(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= deg; ++i) coeff[static_cast<size_t>(i)] = arith::fe_const(F, fp[static_cast<size_t>(i)]);

  const u64 c2 = F.modulus[0];  // k = 2 modulus is x^2 + c2
  long long sum = 0;
  std::vector<FieldElement> d(static_cast<size_t>(deg) + 1);

  u64 rows = F.q / p;
  std::array<u64, 2> hi{0, 0};  // t and t^2 coordinates
  for (u64 row = 0; row < rows; ++row) {
    FieldElement w;
    w.c = {0, hi[0], hi[1]};
    // initial values f(w + i), i = 0..deg
    for (int i = 0; i <= deg; ++i) {
      FieldElement x = w;
      x.c[0] = static_cast<u64>(i) % p;
      FieldElement acc = coeff[static_cast<size_t>(deg)];
      for (int j = deg - 1; j >= 0; --j)
        acc = arith::fe_add(F, arith::fe_mul(F, acc, x), coeff[static_cast<size_t>(j)]);
      d[static_cast<size_t>(i)] = acc;
    }
    for (int j = 1; j <= deg; ++j)
      for (int i = deg; i >= j; --i)
        d[static_cast<size_t>(i)] = arith::fe_sub(F, d[static_cast<size_t>(i)], d[static_cast<size_t>(i - 1)]);

    if (k == 2 && F.modulus[1] == 0) {
      for (u64 x0 = 0; x0 < p; ++x0) {
        u64 norm = (arith::mulmod64(d[0].c[0], d[0].c[0], p) +
                    arith::mulmod64(c2, arith::mulmod64(d[0].c[1], d[0].c[1], p), p)) % p;
        sum += chi[norm];
        for (int j = 0; j < deg; ++j) {
          for (int t = 0; t < 2; ++t) {
            u64 s = d[static_cast<size_t>(j)].c[t] + d[static_cast<size_t>(j) + 1].c[t];
            d[static_cast<size_t>(j)].c[t] = s >= p ? s - p : s;
          }
        }
      }
    } else {
      for (u64 x0 = 0; x0 < p; ++x0) {
        sum += chi[arith::fe_norm(F, d[0])];
        for (int j = 0; j < deg; ++j) {
          for (int t = 0; t < 3; ++t) {
            u64 s = d[static_cast<size_t>(j)].c[t] + d[static_cast<size_t>(j) + 1].c[t];
            d[static_cast<size_t>(j)].c[t] = s >= p ? s - p : s;
          }
        }
      }
    }
    // next row
    if (++hi[0] == p) {
      hi[0] = 0;
      ++hi[1];
    }
  }
  return sum;
}

}  // namespace

u64 count_points(const HyperellipticCurve& c, const FiniteField& F) {
  if (!good_reduction(c, F.p))
    throw std::invalid_argument("count_points: curve " + c.label + " has bad reduction at p = " +
                                std::to_string(F.p));
  std::vector<u64> fp = reduce_poly(c.f, F.p);
  std::vector<std::int8_t> chi = legendre_table(F.p);
  long long sum = F.k == 1 ? affine_chi_sum_k1(fp, F.p, chi) : affine_chi_sum_ext(c, F, fp, chi);
  long long total = static_cast<long long>(F.q) + sum;
  // points at infinity: one on odd-degree models; for deg = 2g+2 there are
  // two iff the leading coefficient is a square in F_q
  int deg = c.degree();
  if (deg % 2 == 1) {
    total += 1;
  } else {
    int ch = arith::quadratic_character(arith::fe_const(F, fp[static_cast<size_t>(deg)]), F);
    if (ch == 1) total += 2;
  }
  if (total < 0) throw std::logic_error("count_points: negative count");
  return static_cast<u64>(total);
}

u64 count_points(const HyperellipticCurve& c, u64 p, int k, u64 field_limit) {
  if (k < 1 || k > c.genus)
    throw std::invalid_argument("count_points: k must be in 1..g");
  long double qt = std::pow(static_cast<long double>(p), k);
  if (qt > static_cast<long double>(field_limit))
    throw std::invalid_argument("count_points: p^k = " + std::to_string(static_cast<double>(qt)) +
                                " exceeds the field guard " + std::to_string(field_limit));
  return count_points(c, arith::build_field(p, k));
}

// ---------------------------------------------------------------------------
// Frobenius characteristic polynomial

namespace {

// all roots of the normalized polynomial must sit on the unit circle
bool unit_circle_roots(int two_g, const std::vector<long double>& norm_coeffs, double tol) {
  using cplx = std::complex<long double>;
  std::vector<cplx> z(static_cast<size_t>(two_g));
  cplx seed(0.4L, 0.9L);
  cplx acc(1.0L, 0.0L);
  for (int i = 0; i < two_g; ++i) {
    acc *= seed;
    z[static_cast<size_t>(i)] = acc;
  }
  auto eval = [&](cplx x) {
    cplx v(1.0L, 0.0L);
    for (int i = 1; i <= two_g; ++i) v = v * x + norm_coeffs[static_cast<size_t>(i)];
    return v;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0.0L;
    for (int i = 0; i < two_g; ++i) {
      cplx denom(1.0L, 0.0L);
      for (int j = 0; j < two_g; ++j)
        if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      if (std::abs(denom) == 0.0L) {
        z[static_cast<size_t>(i)] += cplx(1e-9L, 1e-9L);
        worst = 1.0L;
        continue;
      }
      cplx delta = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-18L) break;
  }
  for (int i = 0; i < two_g; ++i) {
    long double mag = std::abs(z[static_cast<size_t>(i)]);
    if (std::fabs(static_cast<double>(mag) - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace

std::vector<long long> frobenius_charpoly(int genus, u64 p, const std::vector<u64>& counts) {
  if (static_cast<int>(counts.size()) != genus)
    throw std::invalid_argument("frobenius_charpoly: need N_1..N_g");
  // power sums of the 2g Frobenius eigenvalues
  std::vector<i128> s(static_cast<size_t>(genus) + 1, 0);
  i128 pk = 1;
  for (int k = 1; k <= genus; ++k) {
    pk *= static_cast<i128>(p);
    s[static_cast<size_t>(k)] = pk + 1 - static_cast<i128>(counts[static_cast<size_t>(k - 1)]);
  }
  // Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} s_i
  std::vector<i128> e(static_cast<size_t>(genus) + 1, 0);
  e[0] = 1;
  for (int k = 1; k <= genus; ++k) {
    i128 acc = 0;
    for (int i = 1; i <= k; ++i) {
      i128 term = e[static_cast<size_t>(k - i)] * s[static_cast<size_t>(i)];
      acc += (i % 2 == 1) ? term : -term;
    }
    if (acc % k != 0)
      throw std::invalid_argument("frobenius_charpoly: counts at p = " + std::to_string(p) +
                                  " are inconsistent (Newton identity not integral)");
    e[static_cast<size_t>(k)] = acc / k;
  }
  std::vector<long long> a(static_cast<size_t>(genus));
  for (int i = 1; i <= genus; ++i) {
    i128 ai = (i % 2 == 0) ? e[static_cast<size_t>(i)] : -e[static_cast<size_t>(i)];
    a[static_cast<size_t>(i - 1)] = static_cast<long long>(ai);
  }
  // Weil certificate: eigenvalue magnitudes sqrt(p) to 1e-6 relative
  int two_g = 2 * genus;
  std::vector<long double> norm_coeffs(static_cast<size_t>(two_g) + 1, 0.0L);
  norm_coeffs[0] = 1.0L;
  long double sq = std::sqrt(static_cast<long double>(p));
  std::vector<long long> full(static_cast<size_t>(two_g) + 1, 0);
  full[0] = 1;
  for (int i = 1; i <= genus; ++i) full[static_cast<size_t>(i)] = a[static_cast<size_t>(i - 1)];
  long long ppow = 1;
  for (int i = genus - 1; i >= 0; --i) {
    ppow *= static_cast<long long>(p);
    full[static_cast<size_t>(2 * genus - i)] = ppow * full[static_cast<size_t>(i)];
  }
  for (int i = 1; i <= two_g; ++i)
    norm_coeffs[static_cast<size_t>(i)] =
        static_cast<long double>(full[static_cast<size_t>(i)]) / std::pow(sq, i);
  if (!unit_circle_roots(two_g, norm_coeffs, 1e-6))
    throw std::invalid_argument("frobenius_charpoly: counts at p = " + std::to_string(p) +
                                " fail the Weil eigenvalue-magnitude check");
  return a;
}

sympl::CharPolyInt frobenius_charpoly_full(int genus, u64 p, const std::vector<long long>& a) {
  sympl::CharPolyInt cp;
  cp.g = genus;
  cp.coeffs.assign(static_cast<size_t>(2 * genus) + 1, bigint(0));
  cp.coeffs[0] = 1;
  for (int i = 1; i <= genus; ++i) cp.coeffs[static_cast<size_t>(i)] = a[static_cast<size_t>(i - 1)];
  bigint ppow(1);
  for (int i = genus - 1; i >= 0; --i) {
    ppow *= p;
    cp.coeffs[static_cast<size_t>(2 * genus - i)] = ppow * cp.coeffs[static_cast<size_t>(i)];
  }
  return cp;
}

u128 jacobian_order(int genus, u64 p, const std::vector<long long>& a) {
  sympl::CharPolyInt cp = frobenius_charpoly_full(genus, p, a);
  bigint total(0);
  for (const bigint& c : cp.coeffs) total += c;
  if (total <= 0) throw std::invalid_argument("jacobian_order: nonpositive order");
  bigint hi = total >> 64;
  u128 r = (static_cast<u128>(hi.convert_to<u64>()) << 64) |
           static_cast<u128>((total & bigint(0xffffffffffffffffull)).convert_to<u64>());
  return r;
}

bool weil_interval_ok(int genus, u64 p, u128 order) {
  // (sqrt(p) -+ 1)^{2g} = A -+ B sqrt(p) with A, B >= 0
  bigint A(1), B(0), P(p);
  for (int i = 0; i < genus; ++i) {
    bigint A2 = A * (P + 1) + B * 2 * P;
    bigint B2 = A * 2 + B * (P + 1);
    A = A2;
    B = B2;
  }
  bigint ord(arith::u128_to_string(order));
  bigint b2p = B * B * P;
  // order >= A - B sqrt(p)
  if (ord < A) {
    bigint gap = A - ord;
    if (gap * gap > b2p) return false;
  }
  // order <= A + B sqrt(p)
  if (ord > A) {
    bigint gap = ord - A;
    if (gap * gap > b2p) return false;
  }
  return true;
}

FrobeniusRecord frobenius_record(const HyperellipticCurve& c, u64 p, u64 field_limit) {
  FrobeniusRecord r;
  r.p = p;
  r.counts.resize(static_cast<size_t>(c.genus));
  for (int k = 1; k <= c.genus; ++k)
    r.counts[static_cast<size_t>(k - 1)] = count_points(c, p, k, field_limit);
  r.a = frobenius_charpoly(c.genus, p, r.counts);
  r.order = jacobian_order(c.genus, p, r.a);
  if (!weil_interval_ok(c.genus, p, r.order))
    throw std::logic_error("frobenius_record: order outside the Weil interval at p = " +
                           std::to_string(p));
  return r;
}

// ---------------------------------------------------------------------------
// sweeps

SweepCache SweepCache::truncated(u64 x) const {
  SweepCache out;
  out.label = label;
  out.x_max = std::min(x_max, x);
  for (const auto& r : records)
    if (r.p <= x) out.records.push_back(r);
  return out;
}

SweepCache order_sweep(const HyperellipticCurve& c, u64 x_max, SweepCache cache,
                       const SweepOptions& opt) {
  if (x_max < 3) throw std::invalid_argument("order_sweep: x_max must be >= 3");
  if (!cache.label.empty() && cache.label != c.label)
    throw std::invalid_argument("order_sweep: cache belongs to curve " + cache.label);
  cache.label = c.label;
  u64 resume_after = cache.records.empty() ? 0 : cache.records.back().p;
  cache.x_max = std::max(cache.x_max, x_max);
  if (x_max <= resume_after) return cache;

  std::vector<u64> primes = arith::primes_up_to(x_max);
  std::vector<u64> todo;
  for (u64 p : primes)
    if (p > resume_after && good_reduction(c, p)) todo.push_back(p);
  if (todo.empty()) return cache;

  int workers = opt.workers > 0 ? opt.workers
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  size_t block = opt.block > 0 ? static_cast<size_t>(opt.block) : 64;

  for (size_t base = 0; base < todo.size(); base += block) {
    size_t end = std::min(todo.size(), base + block);
    std::vector<FrobeniusRecord> recs(end - base);
    if (workers <= 1 || end - base < 4) {
      for (size_t i = base; i < end; ++i) recs[i - base] = frobenius_record(c, todo[i], opt.field_limit);
    } else {
      std::vector<std::thread> pool;
      std::atomic<size_t> next{base};
      std::exception_ptr err;
      std::mutex err_mu;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          while (true) {
            size_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
              recs[i - base] = frobenius_record(c, todo[i], opt.field_limit);
            } catch (...) {
              std::lock_guard<std::mutex> lk(err_mu);
              if (!err) err = std::current_exception();
              return;
            }
          }
        });
      }
      for (auto& t : pool) t.join();
      if (err) std::rethrow_exception(err);
    }
    if (!opt.cache_path.empty()) {
      try {
        append_records(opt.cache_path, c.label, recs);
      } catch (const std::exception& e) {
        u64 durable = cache.records.empty() ? 0 : cache.records.back().p;
        throw std::runtime_error(std::string(e.what()) + " (cache durable through p = " +
                                 std::to_string(durable) + ")");
      }
    }
    for (auto& r : recs) cache.records.push_back(std::move(r));
  }
  return cache;
}

// ---------------------------------------------------------------------------
// fixtures

const std::vector<HyperellipticCurve>& builtin_curves() {
  static const std::vector<HyperellipticCurve> fixtures = [] {
    std::vector<HyperellipticCurve> v;
    v.push_back(make_curve("e_x3x1", 1, {1, 1, 0, 1}));
    v.push_back(make_curve("e_x3mx1", 1, {1, -1, 0, 1}));
    v.push_back(make_curve("g2_x5p1", 2, {1, 0, 0, 0, 0, 1}));
    v.push_back(make_curve("g2_x5mx1", 2, {1, -1, 0, 0, 0, 1}));
    v.push_back(make_curve("C3", 3,
                           {25039, -33803, -35995, 27231, -27231, 33804, -14085, 1}));
    return v;
  }();
  return fixtures;
}

const HyperellipticCurve& builtin_curve(const std::string& label) {
  for (const auto& c : builtin_curves())
    if (c.label == label) return c;
  throw std::invalid_argument("unknown builtin curve label: " + label);
}

bool is_builtin_curve(const std::string& label) {
  for (const auto& c : builtin_curves())
    if (c.label == label) return true;
  return false;
}

}  // namespace avo::curves
