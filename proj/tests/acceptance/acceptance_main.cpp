// Acceptance suite: each numbered criterion prints one PASS/FAIL line and the
// process exit code reports the outcome. Invoke as
//   acceptance <criterion> --cli <avorders binary> --scratch <dir> [--fixtures <dir>]
// Sweep caches are shared through the scratch directory and resumed, never
// recomputed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "avo/curves.hpp"
#include "avo/densities.hpp"
#include "avo/format.hpp"
#include "avo/sieve.hpp"
#include "avo/stats.hpp"
#include "avo/symplectic.hpp"

using namespace avo;
namespace fs = std::filesystem;
using u64 = std::uint64_t;
using u128 = arith::u128;

namespace {

struct Context {
  std::string cli;
  fs::path scratch;
  std::string fixtures;
};

struct Failure {
  std::string what;
};

std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

curves::SweepCache ensure_cache(const Context& ctx, const std::string& label, u64 x) {
  fs::create_directories(ctx.scratch);
  fs::path file = ctx.scratch / (label + ".jsonl");
  curves::SweepCache cache;
  if (fs::exists(file)) cache = curves::load_cache(file.string());
  const auto& curve = curves::builtin_curve(label);
  curves::SweepOptions opt;
  opt.cache_path = file.string();
  cache = curves::order_sweep(curve, x, std::move(cache), opt);
  return cache.truncated(x);
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const Context& ctx, const std::string& args) {
  std::string cmd = ctx.cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failure{"popen failed for: " + cmd};
  CliResult res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

u64 census_of(int g, u64 n, sympl::CensusClass cls, u64 m = 1, u64 modulus = 0,
              bool dense = false) {
  sympl::CensusSpec spec;
  spec.g = g;
  spec.n = n;
  spec.cls = cls;
  spec.m = m;
  spec.modulus = modulus == 0 ? n : modulus;
  sympl::CensusOptions opt;
  opt.force_dense = dense;
  return sympl::census(spec, opt);
}

// ---------------------------------------------------------------------------

// criterion 1: the printed table of universal constants at 1e-12
void criterion1(const Context&) {
  struct Cell {
    int g;
    int n;
    const char* printed;
  };
  static const Cell cells[] = {
      {1, 2, "0.5625000000000000"}, {1, 4, "0.513926644244210"}, {1, 8, "0.505468861944026"},
      {1, 16, "0.505166809270517"}, {1, 24, "0.505166169952616"},
      {2, 2, "0.760989583333333"},  {2, 4, "0.706235456622878"}, {2, 8, "0.695053638628807"},
      {2, 16, "0.694639169901420"}, {2, 24, "0.694638290801478"},
      {3, 2, "0.754354887320847"},  {3, 4, "0.700012977803311"}, {3, 8, "0.688929626754209"},
      {3, 16, "0.688521872595408"}, {3, 24, "0.688517938493554"},
      {4, 2, "0.754413616554689"},  {4, 4, "0.700067571267533"}, {4, 8, "0.688983355837062"},
      {4, 16, "0.688572506891267"}, {4, 24, "0.688571635469346"},
  };
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  for (const Cell& cell : cells) {
    double got = dens::universal_constant(cell.g, cell.n).value;
    double want = std::stod(cell.printed);
    double diff = std::fabs(got - want);
    if (diff > 1e-12) {
      std::ostringstream os;
      os << "g=" << cell.g << " n=" << cell.n << " computed " << format_real15(got)
         << " vs printed " << cell.printed << " (|diff| = " << diff << ")";
      bad.push_back(os.str());
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  note("computed 20 constants in " + format_real15(secs) + "s (budget 120s)");
  expect(secs < 120.0, "runtime over budget");
  for (const auto& b : bad) note("MISMATCH " + b);
  if (!bad.empty() && bad.size() == 1 && bad[0].find("g=3 n=16") == 0) {
    note("the g=3, n=16 printed value is inconsistent with the table's own g=3 column "
         "(its 16->24 decrement is ~4.5x out of line with g=1,2,4, and the computed value "
         "restores consistency); all other 19 cells match within 1e-12");
  }
  expect(bad.empty(), std::to_string(bad.size()) + " of 20 table cells off by more than 1e-12");
}

// criterion 2: closed forms against the exhaustive census
void criterion2(const Context&) {
  struct Case {
    int g;
    u64 l;
    int k;
  };
  static const Case cases[] = {{1, 2, 1}, {1, 3, 1}, {1, 5, 1}, {1, 7, 1},
                               {1, 2, 2}, {1, 3, 2}, {2, 2, 1}, {2, 3, 1}};
  for (const Case& c : cases) {
    u64 n = 1;
    for (int i = 0; i < c.k; ++i) n *= c.l;
    u64 g_census = census_of(c.g, n, sympl::CensusClass::G);
    expect(bigint(g_census) == sympl::group_order_closed(c.g, c.l, c.k),
           "census(G) != closed form at g=" + std::to_string(c.g) + " n=" + std::to_string(n));
    auto bo = sympl::borel_orders_closed(c.g, c.l, c.k);
    u64 b_census = census_of(c.g, n, sympl::CensusClass::B, 1, 0, /*dense=*/true);
    u64 u_census = census_of(c.g, n, sympl::CensusClass::U, 1, 0, /*dense=*/true);
    expect(bigint(b_census) == bo.b,
           "census(B) != closed form at g=" + std::to_string(c.g) + " n=" + std::to_string(n));
    expect(bigint(u_census) == bo.u,
           "census(U) != closed form at g=" + std::to_string(c.g) + " n=" + std::to_string(n));
    if (c.k == 1) {
      u64 c_census = census_of(c.g, n, sympl::CensusClass::C);
      Rational lam = dens::lambda(c.g, c.l);
      expect(Rational(bigint(c_census), bigint(g_census)) == lam,
             "census(C)/census(G) != lambda at g=" + std::to_string(c.g) +
                 " l=" + std::to_string(c.l));
      if (c.g == 2 && c.l == 2) {
        expect(c_census == 416 && g_census == 720, "g=2, l=2 density is not 416/720");
        expect(lam == Rational(26, 45), "lambda(2,2) != 26/45");
      }
    }
    note("g=" + std::to_string(c.g) + " n=" + std::to_string(n) + ": G=" +
         std::to_string(g_census) + " B=" + std::to_string(b_census) + " U=" +
         std::to_string(u_census));
  }
}

// criterion 3: per-coset densities match the census exactly
void criterion3(const Context&) {
  struct Case {
    int g;
    u64 l;
  };
  static const Case cases[] = {{1, 3}, {1, 5}, {1, 7}, {2, 3}};
  for (const Case& c : cases) {
    u64 coset_size = census_of(c.g, c.l, sympl::CensusClass::Sp);
    for (u64 m = 1; m < c.l; ++m) {
      u64 count = census_of(c.g, c.l, sympl::CensusClass::CCoset, m);
      Rational density = dens::coset_density(c.g, c.l, m);
      expect(Rational(bigint(count), bigint(coset_size)) == density,
             "coset census mismatch at g=" + std::to_string(c.g) + " l=" + std::to_string(c.l) +
                 " m=" + std::to_string(m));
    }
    note("g=" + std::to_string(c.g) + " l=" + std::to_string(c.l) + ": all " +
         std::to_string(c.l - 1) + " cosets exact");
  }
}

// criterion 4: the Borel ratio bounds and the mod-l^2 inequality
void criterion4(const Context&) {
  struct Case {
    int g;
    u64 l;
  };
  static const Case ratio_cases[] = {{1, 3}, {1, 5}, {1, 7}, {1, 11}, {1, 13}, {2, 5}, {2, 7}};
  for (const Case& c : ratio_cases) {
    u64 cb = census_of(c.g, c.l, sympl::CensusClass::CB);
    u64 b = census_of(c.g, c.l, sympl::CensusClass::B);
    bigint lm2g = boost::multiprecision::pow(bigint(c.l - 2), c.g);
    bigint den = boost::multiprecision::pow(bigint(c.l - 1), c.g + 1);
    expect(bigint(cb) * den >= bigint(b) * (den - lm2g * (c.l - 2)),
           "lower Borel ratio bound fails at g=" + std::to_string(c.g) +
               " l=" + std::to_string(c.l));
    expect(bigint(cb) * den <= bigint(b) * (den - lm2g * (c.l - 1 - c.g)),
           "upper Borel ratio bound fails at g=" + std::to_string(c.g) +
               " l=" + std::to_string(c.l));
  }
  note("Borel ratio bounds hold on all 7 censused (g,l)");
  for (u64 l : {2, 3}) {
    u64 c_l = census_of(1, l, sympl::CensusClass::C);
    u64 c_l2 = census_of(1, l * l, sympl::CensusClass::C);
    bigint k = sympl::group_order_closed(1, l, 2) / sympl::group_order_closed(1, l, 1);
    expect(bigint(l) * c_l2 <= bigint(2) * k * c_l,
           "mod-l^2 eigenvalue bound fails at l=" + std::to_string(l));
  }
  note("mod-l^2 inequality holds at l = 2, 3");
}

// criterion 5: sieve constants and the almost-prime inequality on real data
void criterion5(const Context& ctx) {
  for (int g = 1; g <= 3; ++g) {
    long long want = 9LL * g * g * g + g;
    expect(sieve::r_of(g, Rational(1, 2)) == want, "r(g,1/2) != 9g^3+g at g=" + std::to_string(g));
    expect(sieve::r_of(g, sieve::theta_star(g)) == want,
           "r(g, theta*) != 9g^3+g at g=" + std::to_string(g));
  }
  expect(sieve::selberg_upper_coeff(1, 0.5) == 22.0, "selberg coefficient at (1,1/2) != 22");
  expect(std::fabs(sieve::J_value(0.75)) <= 1e-12, "J(3/4) not zero to 1e-12");
  note("r values, theta* boundary, Selberg coefficient and J(3/4) all exact");

  auto cache = ensure_cache(ctx, "e_x3x1", 10000);
  sieve::SieveParams params = sieve::optimal_params(1, Rational(1, 2), 1e-3);
  auto rep = sieve::lemma36_check(cache, params);
  note("lemma36 on e_x3x1@1e4: lhs=" + std::to_string(rep.lhs) + " H=" + format_real15(rep.H) +
       " correction=" + std::to_string(rep.correction));
  expect(rep.holds, "almost-prime lower-bound inequality fails (theorem violation => bug)");
}

// criterion 6: point-counting oracle and per-record invariants
void criterion6(const Context& ctx) {
  // exhaustive oracle for genus-1 fixtures, all good p <= 200
  for (const char* label : {"e_x3x1", "e_x3mx1"}) {
    const auto& c = curves::builtin_curve(label);
    for (u64 p : arith::primes_up_to(200)) {
      if (!curves::good_reduction(c, p)) continue;
      u64 direct = 0;
      for (u64 x = 0; x < p; ++x) {
        u64 fx = 0;
        for (int i = c.degree(); i >= 0; --i) {
          long long co = c.f[static_cast<size_t>(i)] % static_cast<long long>(p);
          if (co < 0) co += static_cast<long long>(p);
          fx = (fx * x + static_cast<u64>(co)) % p;
        }
        for (u64 y = 0; y < p; ++y)
          if (y * y % p == fx) ++direct;
      }
      ++direct;  // odd-degree point at infinity
      expect(curves::count_points(c, p, 1) == direct,
             std::string("count mismatch vs oracle: ") + label + " p=" + std::to_string(p));
    }
  }
  note("genus-1 counts match the exhaustive oracle for all good p <= 200");

  auto rec = curves::frobenius_record(curves::builtin_curve("g2_x5p1"), 3);
  expect(rec.order == 10, "y^2 = x^5 + 1 at p = 3 must have order 10");

  // field-construction independence on 20 (curve, p) pairs
  int pairs = 0;
  for (const char* label : {"g2_x5p1", "g2_x5mx1"}) {
    const auto& c = curves::builtin_curve(label);
    for (u64 p : {3, 7, 11, 13, 17, 19, 23, 29, 37, 41, 43}) {
      if (!curves::good_reduction(c, p)) continue;
      if (pairs >= 20) break;
      auto F = arith::build_field(p, 2);
      arith::FiniteField alt = F;
      bool found = false;
      for (u64 b = F.modulus[1]; b < p && !found; ++b) {
        for (u64 cc = (b == F.modulus[1] ? F.modulus[0] + 1 : 0); cc < p && !found; ++cc) {
          bool has_root = false;
          for (u64 x = 0; x < p && !has_root; ++x)
            if ((x * x + b * x + cc) % p == 0) has_root = true;
          if (!has_root) {
            alt.modulus[0] = cc;
            alt.modulus[1] = b;
            found = true;
          }
        }
      }
      expect(found, "no second irreducible quadratic found");
      expect(curves::count_points(c, F) == curves::count_points(c, alt),
             std::string("field dependence: ") + label + " p=" + std::to_string(p));
      ++pairs;
    }
  }
  expect(pairs >= 20, "fewer than 20 field-independence pairs");
  note("N_2 independent of the F_{p^2} model on 20 pairs");

  // every sweep record passes the Weil-interval and palindromic checks
  auto check_records = [](const curves::SweepCache& cache, int genus) {
    for (const auto& r : cache.records) {
      expect(curves::weil_interval_ok(genus, r.p, r.order),
             "Weil interval fails at p=" + std::to_string(r.p));
      auto full = curves::frobenius_charpoly_full(genus, r.p, r.a);
      bigint ppow(1);
      for (int i = genus - 1; i >= 0; --i) {
        ppow *= r.p;
        expect(full.coeffs[static_cast<size_t>(2 * genus - i)] ==
                   ppow * full.coeffs[static_cast<size_t>(i)],
               "palindromic constraint fails at p=" + std::to_string(r.p));
      }
      bigint total(0);
      for (const auto& co : full.coeffs) total += co;
      expect(total == bigint(arith::u128_to_string(r.order)),
             "order != char(1) at p=" + std::to_string(r.p));
    }
  };
  check_records(ensure_cache(ctx, "e_x3x1", 10000), 1);
  check_records(ensure_cache(ctx, "g2_x5mx1", 1000), 2);
  note("all sweep records pass the Weil and palindromy checks");
}

// criterion 7: empirical divisibility by 2 against lambda_2 = 2/3 (soft)
void criterion7(const Context& ctx) {
  auto cache = ensure_cache(ctx, "e_x3x1", 100000);
  auto rep = stats::chebotarev_density(cache, 2, 1);
  double obs = rep.observed.to_double();
  note("observed " + format_real15(obs) + " over " + std::to_string(rep.total) +
       " records, expected 2/3, z=" + format_real15(rep.z));
  expect(std::fabs(obs - 2.0 / 3.0) <= 0.02, "mod-2 density off by more than 0.02");
  // multiplicativity heuristic across coprime moduli (statistical, not hard)
  double obs2 = obs;
  double obs3 = stats::chebotarev_density(cache, 3, 1).observed.to_double();
  double obs6 = stats::chebotarev_density(cache, 6, 1).observed.to_double();
  note("multiplicativity gap |obs(6) - obs(2) obs(3)| = " +
       format_real15(std::fabs(obs6 - obs2 * obs3)));
  expect(std::fabs(obs6 - obs2 * obs3) <= 0.05, "coprime moduli far from independent");
}

// criterion 8: Erdos-Kac shape at x = 1e6 (soft bounds)
void criterion8(const Context& ctx) {
  auto cache = ensure_cache(ctx, "e_x3x1", 1000000);
  std::vector<double> grid;
  for (double gmm = -4.0; gmm <= 4.0 + 1e-9; gmm += 0.1) grid.push_back(gmm);
  auto cdf = stats::erdos_kac_cdf(cache, grid);
  for (size_t i = 1; i < cdf.empirical.size(); ++i)
    expect(cdf.empirical[i] >= cdf.empirical[i - 1], "empirical CDF not monotone");
  note("sup distance " + format_real15(cdf.sup_distance) + ", mean omega " +
       format_real15(cdf.mean_omega) + " over " + std::to_string(cdf.sample_size) + " records");
  expect(cdf.sup_distance <= 0.5, "sup distance above 0.5");
  expect(cdf.mean_omega >= 1.5 && cdf.mean_omega <= 4.5, "mean omega outside [1.5, 4.5]");
}

// criterion 9: genus-2 sweep substitute for the unreproducible figure
void criterion9(const Context& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  auto cache = ensure_cache(ctx, "g2_x5mx1", 5000);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  note("sweep to 5000: " + std::to_string(cache.records.size()) + " records in " +
       format_real15(secs) + "s (budget 1800s)");
  expect(secs < 1800.0, "sweep over budget");

  u64 prime_orders = 0;
  std::vector<u64> grid;
  for (const auto& r : cache.records) {
    if (arith::is_prime(r.order)) {
      ++prime_orders;
      grid.push_back(r.p);
    }
  }
  expect(prime_orders >= 1, "no prime orders in the genus-2 sweep");
  note(std::to_string(prime_orders) + " prime orders");

  auto series = stats::koblitz_ratio(cache, grid);
  expect(series.points.size() == grid.size(), "ratio series truncated");
  u64 prev_x = 0;
  for (const auto& pt : series.points) {
    expect(pt.x > prev_x, "ratio series x not increasing");
    expect(pt.ratio >= 0.0, "negative ratio");
    prev_x = pt.x;
  }

  for (const auto& r : cache.records) {
    expect(curves::weil_interval_ok(2, r.p, r.order),
           "Weil interval fails at p=" + std::to_string(r.p));
    u128 n1 = r.counts[0], n2 = r.counts[1];
    expect(r.order == (n1 * n1 + n2) / 2 - r.p,
           "genus-2 order identity fails at p=" + std::to_string(r.p));
  }
  note("all records pass the Weil interval and the genus-2 order identity");
}

// criterion 10: byte-identical reruns and idempotent sweep resume
void criterion10(const Context& ctx) {
  expect(!ctx.cli.empty() && fs::exists(ctx.cli), "CLI binary not found: " + ctx.cli);
  fs::create_directories(ctx.scratch);
  fs::path cache_file = ctx.scratch / "determinism_e.jsonl";
  fs::remove(cache_file);

  std::vector<std::string> cmds = {
      "density euler --g 1 --cutoff-exp 4",
      "density lambda --g 2 --l 3",
      "density koblitz --g 2 --m 2 --mass 19/45 --cutoff-exp 2",
      "group order --g 2 --l 3 --k 1",
      "group census --g 1 --n 3 --class C",
      "sieve params --g 2 --theta 0.5",
  };
  for (const auto& cmd : cmds) {
    CliResult a = run_cli(ctx, cmd);
    CliResult b = run_cli(ctx, cmd);
    expect(a.exit_code == 0, "exit != 0 for: " + cmd);
    expect(b.exit_code == 0, "exit != 0 on rerun: " + cmd);
    expect(a.out == b.out, "stdout differs across reruns: " + cmd);
    expect(!a.out.empty(), "empty output: " + cmd);
  }
  // spot value from the table
  CliResult euler = run_cli(ctx, "density euler --g 1 --cutoff-exp 2");
  expect(euler.out == "0.562500000000000\n", "euler g=1 n=2 must print 0.562500000000000");

  std::string sweep_cmd = "curve sweep --curve e_x3x1 --x-max 200 --cache " + cache_file.string();
  CliResult s1 = run_cli(ctx, sweep_cmd);
  expect(s1.exit_code == 0, "sweep failed");
  std::string bytes1 = slurp(cache_file);
  CliResult s2 = run_cli(ctx, sweep_cmd);
  expect(s2.exit_code == 0, "sweep rerun failed");
  std::string bytes2 = slurp(cache_file);
  expect(bytes1 == bytes2, "sweep resume modified the cache");
  expect(s1.out == s2.out, "sweep stdout differs across reruns");

  // stats over the same cache, twice
  std::string cheb_cmd = "stats chebotarev --cache " + cache_file.string() + " --d 2 --g 1";
  CliResult c1 = run_cli(ctx, cheb_cmd);
  CliResult c2 = run_cli(ctx, cheb_cmd);
  expect(c1.exit_code == 0 && c1.out == c2.out, "chebotarev output differs across reruns");

  // usage errors exit 2, computation errors exit 1
  CliResult usage = run_cli(ctx, "group census --g 1");
  expect(usage.exit_code == 2, "missing required flag must exit 2");
  CliResult comp = run_cli(ctx, "group census --g 2 --n 7 --class G");
  expect(comp.exit_code == 1, "guard-rail violation must exit 1");
  note("6 commands byte-identical across reruns; sweep resume idempotent; exit codes 0/1/2");
}

const char* kDescriptions[] = {
    "",
    "universal-constant table reproduced at 1e-12",
    "closed-form orders equal the exhaustive census",
    "per-coset eigenvalue densities exact",
    "Borel ratio bounds and mod-l^2 inequality",
    "sieve constants exact; almost-prime inequality holds on data",
    "point counts match the exhaustive oracle; record invariants hold",
    "mod-2 divisibility within 0.02 of 2/3 at x = 1e5",
    "Erdos-Kac empirical CDF shape bounds at x = 1e6",
    "genus-2 sweep to 5000 with a valid ratio series",
    "deterministic CLI output and idempotent sweep resume",
};

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      ctx.cli = argv[++i];
    } else if (arg == "--scratch" && i + 1 < argc) {
      ctx.scratch = argv[++i];
    } else if (arg == "--fixtures" && i + 1 < argc) {
      ctx.fixtures = argv[++i];
    } else if (!arg.empty() && arg[0] != '-') {
      criterion = std::atoi(arg.c_str());
    }
  }
  if (ctx.scratch.empty()) ctx.scratch = fs::temp_directory_path() / "avorders_acceptance";

  std::vector<int> to_run;
  if (criterion == 0) {
    for (int i = 1; i <= 10; ++i) to_run.push_back(i);
  } else if (criterion >= 1 && criterion <= 10) {
    to_run.push_back(criterion);
  } else {
    std::cerr << "usage: acceptance [1..10] --cli <path> --scratch <dir>\n";
    return 2;
  }

  bool all_ok = true;
  for (int idx : to_run) {
    g_notes.clear();
    bool ok = true;
    std::string why;
    try {
      switch (idx) {
        case 1: criterion1(ctx); break;
        case 2: criterion2(ctx); break;
        case 3: criterion3(ctx); break;
        case 4: criterion4(ctx); break;
        case 5: criterion5(ctx); break;
        case 6: criterion6(ctx); break;
        case 7: criterion7(ctx); break;
        case 8: criterion8(ctx); break;
        case 9: criterion9(ctx); break;
        case 10: criterion10(ctx); break;
      }
    } catch (const Failure& f) {
      ok = false;
      why = f.what;
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("unexpected error: ") + e.what();
    }
    for (const auto& n : g_notes) std::cout << "       - " << n << "\n";
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << kDescriptions[idx];
    if (!ok) std::cout << " -- " << why;
    std::cout << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
