#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "avo/symplectic.hpp"
#include "doctest.h"

using namespace avo;
using namespace avo::sympl;
using u64 = std::uint64_t;

namespace {

MatrixModN from_rows(int g, u64 n, std::initializer_list<u64> entries) {
  MatrixModN m = zero_matrix(g, n);
  size_t i = 0;
  for (u64 v : entries) m.e[i++] = v % n;
  REQUIRE(i == m.e.size());
  return m;
}

// brute-force oracle: enumerate all 2x2 matrices over Z/nZ and count
// invertible ones with M^t J M = mu J (for 2x2 this is det(M) a unit)
u64 oracle_gsp2_count(u64 n) {
  u64 count = 0;
  for (u64 a = 0; a < n; ++a)
    for (u64 b = 0; b < n; ++b)
      for (u64 c = 0; c < n; ++c)
        for (u64 d = 0; d < n; ++d) {
          u64 det = (a * d % n + n - b * c % n) % n;
          if (std::gcd(det, n) == 1) ++count;
        }
  return count;
}

MatrixModN random_gsp(int g, u64 n, std::mt19937_64& rng, u64& mu_out) {
  while (true) {
    MatrixModN m = zero_matrix(g, n);
    for (auto& v : m.e) v = rng() % n;
    if (auto mu = is_gsp(m)) {
      mu_out = *mu;
      return m;
    }
  }
}

}  // namespace

TEST_CASE("standard form and multiplicators") {
  auto id = identity_matrix(2, 7);
  CHECK(is_gsp(id) == std::optional<u64>(1));

  auto j = standard_j(2, 7);
  CHECK(is_gsp(j) == std::optional<u64>(1));  // J^t J J = J

  // singular 2x2: no unit multiplicator
  auto sing = from_rows(1, 5, {1, 1, 1, 1});
  CHECK_FALSE(is_gsp(sing).has_value());

  // invertible but not a similitude (g = 2): pairings 1 and 2 disagree
  auto diag = from_rows(2, 5, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2});
  CHECK_FALSE(is_gsp(diag).has_value());

  // scaling one symplectic pair by u gives multiplicator u
  auto scaled = from_rows(1, 7, {3, 0, 0, 1});
  CHECK(is_gsp(scaled) == std::optional<u64>(3));
}

TEST_CASE("sympl_multiply and multiplicator homomorphism") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    u64 mu_a, mu_b;
    auto a = random_gsp(1, 7, rng, mu_a);
    auto b = random_gsp(1, 7, rng, mu_b);
    auto prod = sympl_multiply(a, b);
    auto mu = is_gsp(prod);
    REQUIRE(mu.has_value());
    CHECK(*mu == mu_a * mu_b % 7);
  }
  auto a = zero_matrix(1, 5);
  auto b = zero_matrix(1, 7);
  CHECK_THROWS(sympl_multiply(a, b));
}

TEST_CASE("char_poly worked examples") {
  // identity, g=1, n=7: (x-1)^2 = x^2 - 2x + 1
  auto cp = char_poly(identity_matrix(1, 7));
  REQUIRE(cp.coeffs.size() == 3);
  CHECK(cp.coeffs[0] == 1);
  CHECK(cp.coeffs[1] == 5);  // -2 mod 7
  CHECK(cp.coeffs[2] == 1);
  CHECK(char_poly_at_one(identity_matrix(1, 7)) == 0);

  // zero matrix, g=1, n=5: x^2
  auto z = zero_matrix(1, 5);
  auto cpz = char_poly(z);
  CHECK(cpz.coeffs[1] == 0);
  CHECK(cpz.coeffs[2] == 0);
  CHECK(char_poly_at_one(z) == 1);

  // [[0,1],[4,0]] over Z/5: x^2 + 1, char(1) = 2
  auto m = from_rows(1, 5, {0, 1, 4, 0});
  auto cpm = char_poly(m);
  CHECK(cpm.coeffs[1] == 0);
  CHECK(cpm.coeffs[2] == 1);
  CHECK(char_poly_at_one(m) == 2);
}

TEST_CASE("closed-form orders against brute force") {
  CHECK(sp_order_closed(1, 2) == 6);  // GL2(F2)
  CHECK(group_order_closed(1, 2, 1) == 6);
  CHECK(group_order_closed(1, 3, 1) == 48);
  CHECK(group_order_closed(1, 2, 2) == 96);
  CHECK(group_order_closed(2, 3, 1) == 103680);
  CHECK(sp_order_closed(2, 3) == 51840);
  for (u64 n : {2, 3, 4, 5, 7, 9}) {
    // 2x2 similitudes are exactly the invertible matrices
    u64 oracle = oracle_gsp2_count(n);
    CensusSpec spec;
    spec.g = 1;
    spec.n = n;
    spec.cls = CensusClass::G;
    CHECK(census(spec) == oracle);
  }
  CHECK(group_order_closed(1, 2, 2).convert_to<u64>() == oracle_gsp2_count(4));
  CHECK(group_order_closed(1, 3, 2).convert_to<u64>() == oracle_gsp2_count(9));
  CHECK_THROWS(group_order_closed(1, 4, 1));
  CHECK_THROWS(borel_orders_closed(1, 3, 3));
}

TEST_CASE("census of eigenvalue-1 classes") {
  CensusSpec spec;
  spec.g = 1;
  spec.n = 2;
  spec.cls = CensusClass::C;
  CHECK(census(spec) == 4);  // identity + three transpositions in GL2(F2)

  spec.n = 3;
  spec.cls = CensusClass::G;
  CHECK(census(spec) == 48);

  spec.g = 2;
  spec.n = 2;
  spec.cls = CensusClass::C;
  CHECK(census(spec) == 416);
  spec.cls = CensusClass::G;
  CHECK(census(spec) == 720);
  spec.cls = CensusClass::Sp;
  CHECK(census(spec) == 720);  // units mod 2 are trivial
}

TEST_CASE("census guard rail and validation") {
  CensusSpec spec;
  spec.g = 2;
  spec.n = 7;  // 7^16 > 1e10
  spec.cls = CensusClass::G;
  CHECK_THROWS(census(spec));
  spec.n = 3;
  spec.cls = CensusClass::CCoset;
  spec.m = 3;  // not a unit mod 3
  CHECK_THROWS(census(spec));
  spec.cls = CensusClass::CPrime;
  spec.modulus = 5;  // does not divide n
  CHECK_THROWS(census(spec));
}

TEST_CASE("Borel census: parametrized equals dense") {
  for (auto [g, n] : std::vector<std::pair<int, u64>>{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 2}, {2, 3}}) {
    for (auto cls : {CensusClass::B, CensusClass::U, CensusClass::CB}) {
      CensusSpec spec;
      spec.g = g;
      spec.n = n;
      spec.cls = cls;
      CensusOptions dense;
      dense.force_dense = true;
      CHECK(census(spec) == census(spec, dense));
    }
  }
}

TEST_CASE("Borel closed forms match the census") {
  for (auto [g, l] : std::vector<std::pair<int, u64>>{{1, 2}, {1, 3}, {1, 5}, {2, 2}, {2, 3}}) {
    auto bo = borel_orders_closed(g, l, 1);
    CensusSpec spec;
    spec.g = g;
    spec.n = l;
    spec.cls = CensusClass::B;
    CHECK(bigint(census(spec)) == bo.b);
    spec.cls = CensusClass::U;
    CHECK(bigint(census(spec)) == bo.u);
  }
  // k = 2 rows: B(4) = 16 for g = 1, confirmed by the census oracle
  auto bo4 = borel_orders_closed(1, 2, 2);
  CHECK(bo4.b == 16);
  CensusSpec spec;
  spec.g = 1;
  spec.n = 4;
  spec.cls = CensusClass::B;
  CensusOptions dense;
  dense.force_dense = true;
  CHECK(census(spec, dense) == 16);
  auto bo9 = borel_orders_closed(1, 3, 2);
  spec.n = 9;
  CHECK(bigint(census(spec, dense)) == bo9.b);
  // g = 2 example: parametrization gives 2 * 1 * 8 = 16 over F_2
  auto bo22 = borel_orders_closed(2, 2, 1);
  CHECK(bo22.b == 16);
  CHECK(bo22.u == 16);
}

TEST_CASE("multiplicator cosets partition C") {
  // sum over units m of #C_coset(m) equals #C; within-branch counts agree
  for (u64 l : {3, 5, 7}) {
    CensusSpec spec;
    spec.g = 1;
    spec.n = l;
    spec.cls = CensusClass::C;
    u64 total = census(spec);
    u64 sum = 0;
    std::vector<u64> per_coset;
    for (u64 m = 1; m < l; ++m) {
      spec.cls = CensusClass::CCoset;
      spec.m = m;
      u64 c = census(spec);
      per_coset.push_back(c);
      sum += c;
    }
    CHECK(sum == total);
    // m = 1 is the split branch; every m != 1 shares the other branch count
    for (size_t i = 2; i < per_coset.size(); ++i) CHECK(per_coset[i] == per_coset[1]);
  }
}

TEST_CASE("eigenvalue-1 mod l^2 bound from the reduction argument") {
  // #C(l^2) <= (2g/l) (#G(l^2)/#G(l)) #C(l) for g = 1, l in {2, 3}
  for (u64 l : {2, 3}) {
    CensusSpec spec;
    spec.g = 1;
    spec.cls = CensusClass::C;
    spec.n = l;
    u64 c_l = census(spec);
    spec.n = l * l;
    u64 c_l2 = census(spec);
    bigint k = group_order_closed(1, l, 2) / group_order_closed(1, l, 1);
    // multiply through by l to stay integral: l * #C(l^2) <= 2g * #K * #C(l)
    CHECK(bigint(l) * c_l2 <= bigint(2) * k * c_l);
  }
}

TEST_CASE("Borel eigenvalue ratio bounds") {
  // 1 - (l-2)^g (l-2) / (l-1)^{g+1} <= #C_B/#B <= 1 - (l-2)^g (l-1-g)/(l-1)^{g+1}
  for (auto [g, l] : std::vector<std::pair<int, u64>>{{1, 3}, {1, 5}, {1, 7}, {1, 11}, {1, 13},
                                                      {2, 5}, {2, 7}}) {
    REQUIRE(l > static_cast<u64>(g) + 1);
    CensusSpec spec;
    spec.g = g;
    spec.n = l;
    spec.cls = CensusClass::CB;
    u64 cb = census(spec);
    spec.cls = CensusClass::B;
    u64 b = census(spec);
    bigint lm2g = boost::multiprecision::pow(bigint(l - 2), g);
    bigint den = boost::multiprecision::pow(bigint(l - 1), g + 1);
    // lower: cb/b >= 1 - (l-2)^{g+1}/den  <=>  cb * den >= b * (den - (l-2)^{g+1})
    CHECK(bigint(cb) * den >= bigint(b) * (den - lm2g * (l - 2)));
    // upper: cb/b <= 1 - (l-2)^g (l-1-g)/den
    CHECK(bigint(cb) * den <= bigint(b) * (den - lm2g * (l - 1 - g)));
  }
}

TEST_CASE("characteristic polynomials of similitudes are palindromic") {
  // a_{2g-i} = m^{g-i} a_i mod n, sampled over random census members
  std::mt19937_64 rng(20240811);
  auto check_palindrome = [](const MatrixModN& m, u64 mu) {
    auto cp = char_poly(m);
    int g = m.g;
    bigint mod(m.n);
    for (int i = 0; i < g; ++i) {
      bigint lhs = cp.coeffs[static_cast<size_t>(2 * g - i)];
      bigint rhs = cp.coeffs[static_cast<size_t>(i)] *
                   boost::multiprecision::pow(bigint(mu), g - i) % mod;
      CHECK(lhs == rhs);
    }
  };
  for (int t = 0; t < 5000; ++t) {
    u64 mu;
    auto m = random_gsp(1, 11, rng, mu);
    check_palindrome(m, mu);
  }
  for (int t = 0; t < 5000; ++t) {
    u64 mu;
    auto m = random_gsp(2, 3, rng, mu);
    check_palindrome(m, mu);
  }
}

TEST_CASE("C_prime census factors through the reduction") {
  // gcd(char(1), 6) != 1 over GSp2(Z/6): complement density is
  // (1 - lambda_2)(1 - lambda_3) by CRT, i.e. #C'(6) = #G(6) - (6-4)(48-21)
  CensusSpec spec;
  spec.g = 1;
  spec.n = 6;
  spec.cls = CensusClass::G;
  u64 g6 = census(spec);
  CHECK(g6 == 288);  // 6 * 48
  spec.n = 2;
  spec.cls = CensusClass::C;
  u64 c2 = census(spec);
  spec.n = 3;
  u64 c3 = census(spec);
  spec.n = 6;
  spec.cls = CensusClass::CPrime;
  spec.modulus = 6;
  u64 cp6 = census(spec);
  CHECK(g6 - cp6 == (6 - c2) * (48 - c3));
  // C'(2) over GSp2(Z/4): sixteen-fold cover of the mod-2 count
  spec.n = 4;
  spec.modulus = 2;
  CHECK(census(spec) == 16 * 4);
}
