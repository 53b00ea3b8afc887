#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "avo/curves.hpp"
#include "avo/densities.hpp"
#include "avo/format.hpp"
#include "avo/lmfdb.hpp"
#include "avo/sieve.hpp"
#include "avo/stats.hpp"
#include "avo/symplectic.hpp"

namespace avocli {

using namespace avo;

namespace {

sympl::CensusClass parse_class(const std::string& s) {
  if (s == "G") return sympl::CensusClass::G;
  if (s == "Sp") return sympl::CensusClass::Sp;
  if (s == "B") return sympl::CensusClass::B;
  if (s == "U") return sympl::CensusClass::U;
  if (s == "C") return sympl::CensusClass::C;
  if (s == "C_B") return sympl::CensusClass::CB;
  if (s == "C_coset") return sympl::CensusClass::CCoset;
  if (s == "C_prime") return sympl::CensusClass::CPrime;
  throw CLI::ValidationError("--class", "unknown class " + s);
}

std::string resolve_cache_path(const std::string& flag_path, const std::string& label) {
  if (!flag_path.empty()) return flag_path;
  if (const char* dir = std::getenv("AVORDERS_CACHE_DIR")) {
    return std::string(dir) + "/" + label + ".jsonl";
  }
  throw CLI::ValidationError("--cache",
                             "no cache path given and AVORDERS_CACHE_DIR is not set");
}

curves::HyperellipticCurve resolve_curve(const std::string& spec) {
  if (curves::is_builtin_curve(spec)) return curves::builtin_curve(spec);
  return curves::load_curve_file(spec);
}

curves::SweepCache load_cache_if_present(const std::string& path) {
  std::ifstream probe(path);
  if (!probe.good()) return {};
  return curves::load_cache(path);
}

// CSV lands on stdout unless --out was given
struct OutputTarget {
  std::string path;
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
  }
};

struct GroupOrderArgs {
  int g = 1;
  std::uint64_t l = 2;
  int k = 1;
  std::string cls = "G";
};

struct CensusArgs {
  int g = 1;
  std::uint64_t n = 2;
  std::string cls = "G";
  std::uint64_t m = 1;
  std::uint64_t M = 0;
  bool dense = false;
};

struct SweepArgs {
  std::string curve;
  std::uint64_t x_max = 3;
  std::string cache;
  std::uint64_t field_limit = std::uint64_t(1) << 32;
  int block = 64;
  int workers = 0;
};

struct StatsArgs {
  std::string cache;
  std::string out;
  int g = 1;
  std::uint64_t d = 2;
  int r = 1;
  std::uint64_t x = 0;
  std::string grid;
  double c_a = -1.0;
  double gamma_min = -4.0, gamma_max = 4.0, gamma_step = 0.1;
};

struct SieveArgs {
  int g = 1;
  std::string theta = "0.5";
  double epsilon = 1e-3;
  bool double_b = false;
  std::string cache;
  std::uint64_t m = 1;
};

}  // namespace

void register_commands(CLI::App& app) {
  // ---- group ----
  auto* group = app.add_subcommand("group", "symplectic group orders and censuses");
  group->require_subcommand(1);

  auto go = std::make_shared<GroupOrderArgs>();
  auto* order = group->add_subcommand("order", "closed-form subgroup order");
  order->add_option("--g", go->g, "genus")->required()->check(CLI::Range(1, 4));
  order->add_option("--l", go->l, "prime")->required();
  order->add_option("--k", go->k, "prime-power exponent")->default_val(1);
  order->add_option("--class", go->cls, "G, Sp, B or U")->default_val("G");
  order->callback([go] {
    if (go->cls == "G") {
      std::cout << sympl::group_order_closed(go->g, go->l, go->k).str() << "\n";
    } else if (go->cls == "Sp") {
      if (go->k != 1) throw CLI::ValidationError("--k", "Sp closed form is stated at k = 1");
      std::cout << sympl::sp_order_closed(go->g, go->l).str() << "\n";
    } else if (go->cls == "B" || go->cls == "U") {
      auto bo = sympl::borel_orders_closed(go->g, go->l, go->k);
      std::cout << (go->cls == "B" ? bo.b : bo.u).str() << "\n";
    } else {
      throw CLI::ValidationError("--class", "expected G, Sp, B or U");
    }
  });

  auto ca = std::make_shared<CensusArgs>();
  auto* census = group->add_subcommand("census", "exact census of a matrix class");
  census->add_option("--g", ca->g, "genus")->required()->check(CLI::Range(1, 4));
  census->add_option("--n", ca->n, "modulus")->required();
  census->add_option("--class", ca->cls, "G, Sp, B, U, C, C_B, C_coset, C_prime")->required();
  census->add_option("--m", ca->m, "multiplicator value (C_coset)");
  census->add_option("--M", ca->M, "modulus for C_prime");
  census->add_flag("--dense", ca->dense, "scan the full matrix space for B/U/C_B");
  census->callback([ca] {
    sympl::CensusSpec spec;
    spec.g = ca->g;
    spec.n = ca->n;
    spec.cls = parse_class(ca->cls);
    spec.m = ca->m;
    spec.modulus = ca->M == 0 ? ca->n : ca->M;
    sympl::CensusOptions opt;
    opt.force_dense = ca->dense;
    std::cout << sympl::census(spec, opt) << "\n";
  });

  // ---- density ----
  auto* density = app.add_subcommand("density", "exact densities and Euler products");
  density->require_subcommand(1);

  {
    auto g = std::make_shared<int>(1);
    auto l = std::make_shared<std::uint64_t>(2);
    auto* lam = density->add_subcommand("lambda", "lambda_l as an exact fraction");
    lam->add_option("--g", *g, "genus")->required()->check(CLI::Range(1, 4));
    lam->add_option("--l", *l, "prime")->required();
    lam->callback([g, l] { std::cout << dens::lambda(*g, *l).str() << "\n"; });
  }
  {
    auto g = std::make_shared<int>(1);
    auto n = std::make_shared<int>(2);
    auto* euler = density->add_subcommand("euler", "universal constant at cutoff 2^n");
    euler->add_option("--g", *g, "genus")->required()->check(CLI::Range(1, 4));
    euler->add_option("--cutoff-exp", *n, "cutoff exponent n (primes l < 2^n)")
        ->required()
        ->check(CLI::Range(2, 24));
    euler->callback([g, n] {
      std::cout << format_real15(dens::universal_constant(*g, *n).value) << "\n";
    });
  }
  {
    auto g = std::make_shared<int>(1);
    auto n = std::make_shared<int>(2);
    auto m = std::make_shared<std::uint64_t>(1);
    auto mass = std::make_shared<std::string>("1");
    auto* kob = density->add_subcommand("koblitz", "Koblitz constant from exceptional data");
    kob->add_option("--g", *g, "genus")->required()->check(CLI::Range(1, 4));
    kob->add_option("--m", *m, "squarefree exceptional modulus M")->required();
    kob->add_option("--mass", *mass, "corrected mass 1 - #C'(M)/#G(M), fraction or decimal")
        ->required();
    kob->add_option("--cutoff-exp", *n, "cutoff exponent")->required()->check(CLI::Range(2, 24));
    kob->callback([g, n, m, mass] {
      dens::ExceptionalData data;
      data.m = *m;
      data.corrected_mass = Rational::parse(*mass);
      std::cout << format_real15(dens::koblitz_constant(*g, data, *n)) << "\n";
    });
  }

  // ---- curve ----
  auto* curve = app.add_subcommand("curve", "hyperelliptic curve sweeps and ingestion");
  curve->require_subcommand(1);

  auto sw = std::make_shared<SweepArgs>();
  auto* sweep = curve->add_subcommand("sweep", "collect Frobenius records for good p <= x-max");
  sweep->add_option("--curve", sw->curve, "builtin label or curve file path")->required();
  sweep->add_option("--x-max", sw->x_max, "sweep bound")->required();
  sweep->add_option("--cache", sw->cache, "cache file (default $AVORDERS_CACHE_DIR/<label>.jsonl)");
  sweep->add_option("--field-limit", sw->field_limit, "max p^k for the counting kernel");
  sweep->add_option("--block", sw->block, "primes per append block")->default_val(64);
  sweep->add_option("--workers", sw->workers, "worker threads (0 = auto)")->default_val(0);
  sweep->callback([sw] {
    curves::HyperellipticCurve c = resolve_curve(sw->curve);
    std::string path = resolve_cache_path(sw->cache, c.label);
    curves::SweepCache cache = load_cache_if_present(path);
    curves::SweepOptions opt;
    opt.field_limit = sw->field_limit;
    opt.block = sw->block;
    opt.workers = sw->workers;
    opt.cache_path = path;
    cache = curves::order_sweep(c, sw->x_max, std::move(cache), opt);
    std::cout << "label=" << c.label << " x_max=" << std::max(cache.x_max, sw->x_max)
              << " records=" << cache.records.size() << "\n";
  });

  {
    auto label = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto offline = std::make_shared<bool>(false);
    auto fixtures = std::make_shared<std::string>();
    auto* fetch = curve->add_subcommand("fetch", "fetch a curve from the LMFDB (or fixtures)");
    fetch->add_option("--label", *label, "LMFDB label")->required();
    fetch->add_option("--out", *out, "output curve file")->required();
    fetch->add_flag("--offline", *offline, "never open a network connection");
    fetch->add_option("--fixtures", *fixtures, "offline fixture directory");
    fetch->callback([label, out, offline, fixtures] {
      lmfdb::FetchOptions opt = lmfdb::options_from_env();
      if (*offline) opt.offline = true;
      if (!fixtures->empty()) opt.fixture_dir = *fixtures;
      lmfdb::LmfdbCurveRecord rec = lmfdb::fetch_curve(*label, opt);
      std::ofstream f(*out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open output file: " + *out);
      f << "{\"label\":\"" << rec.label << "\",\"genus\":" << rec.genus << ",\"f\":[";
      for (size_t i = 0; i < rec.f.size(); ++i) {
        if (i) f << ',';
        f << rec.f[i];
      }
      f << "]}\n";
      std::cout << "label=" << rec.label << " genus=" << rec.genus
                << " deg=" << rec.f.size() - 1 << "\n";
    });
  }

  // ---- stats ----
  auto* stats_cmd = app.add_subcommand("stats", "order statistics over a sweep cache");
  stats_cmd->require_subcommand(1);

  auto sa = std::make_shared<StatsArgs>();
  auto* kob = stats_cmd->add_subcommand("koblitz", "prime-order ratio series (CSV)");
  kob->add_option("--cache", sa->cache, "cache file")->required();
  kob->add_option("--grid", sa->grid, "comma-separated x grid (default: primes with prime order)");
  kob->add_option("--c-a", sa->c_a, "reference constant C_A for extra columns");
  kob->add_option("--g", sa->g, "genus for the C_A/g reference")->default_val(1);
  kob->add_option("--out", sa->out, "write CSV here instead of stdout");
  kob->callback([sa] {
    curves::SweepCache cache = curves::load_cache(sa->cache);
    std::vector<std::uint64_t> grid;
    if (!sa->grid.empty()) {
      std::stringstream ss(sa->grid);
      std::string tok;
      while (std::getline(ss, tok, ',')) grid.push_back(std::stoull(tok));
    } else {
      for (const auto& rec : cache.records)
        if (arith::is_prime(rec.order)) grid.push_back(rec.p);
      if (grid.empty()) grid.push_back(cache.x_max);
    }
    stats::RatioSeries series = stats::koblitz_ratio(cache, grid);
    OutputTarget target{sa->out, {}};
    std::optional<double> ca;
    if (sa->c_a >= 0.0) ca = sa->c_a;
    stats::write_ratio_csv(target.stream(), series, ca, sa->g);
  });

  auto ek = std::make_shared<StatsArgs>();
  auto* ekcmd = stats_cmd->add_subcommand("erdos-kac", "empirical CDF of the omega statistic (CSV)");
  ekcmd->add_option("--cache", ek->cache, "cache file")->required();
  ekcmd->add_option("--gamma-min", ek->gamma_min)->default_val(-4.0);
  ekcmd->add_option("--gamma-max", ek->gamma_max)->default_val(4.0);
  ekcmd->add_option("--gamma-step", ek->gamma_step)->default_val(0.1);
  ekcmd->add_option("--out", ek->out, "write CSV here instead of stdout");
  ekcmd->callback([ek] {
    curves::SweepCache cache = curves::load_cache(ek->cache);
    std::vector<double> grid;
    for (double gmm = ek->gamma_min; gmm <= ek->gamma_max + 1e-12; gmm += ek->gamma_step)
      grid.push_back(gmm);
    stats::EkCdf cdf = stats::erdos_kac_cdf(cache, grid);
    OutputTarget target{ek->out, {}};
    stats::write_ek_csv(target.stream(), cdf);
    std::cerr << "sup_distance=" << format_real15(cdf.sup_distance)
              << " mean_omega=" << format_real15(cdf.mean_omega)
              << " samples=" << cdf.sample_size << "\n";
  });

  auto ch = std::make_shared<StatsArgs>();
  auto* chcmd = stats_cmd->add_subcommand("chebotarev", "observed vs expected divisibility (CSV)");
  chcmd->add_option("--cache", ch->cache, "cache file")->required();
  chcmd->add_option("--d", ch->d, "squarefree modulus")->required();
  chcmd->add_option("--g", ch->g, "genus")->required()->check(CLI::Range(1, 4));
  chcmd->add_option("--out", ch->out, "write CSV here instead of stdout");
  chcmd->callback([ch] {
    curves::SweepCache cache = curves::load_cache(ch->cache);
    stats::ChebotarevReport rep = stats::chebotarev_density(cache, ch->d, ch->g);
    OutputTarget target{ch->out, {}};
    stats::write_chebotarev_csv(target.stream(), rep);
  });

  auto ap = std::make_shared<StatsArgs>();
  auto* apcmd = stats_cmd->add_subcommand("almost-prime", "count records with Omega(order) <= r");
  apcmd->add_option("--cache", ap->cache, "cache file")->required();
  apcmd->add_option("--r", ap->r, "almost-prime order bound")->required();
  apcmd->add_option("--x", ap->x, "count records with p <= x (default: whole cache)");
  apcmd->callback([ap] {
    curves::SweepCache cache = curves::load_cache(ap->cache);
    std::uint64_t x = ap->x == 0 ? cache.x_max : ap->x;
    std::cout << stats::almost_prime_count(cache, ap->r, x) << "\n";
  });

  // ---- sieve ----
  auto* sieve_cmd = app.add_subcommand("sieve", "weighted-sieve constants and checks");
  sieve_cmd->require_subcommand(1);

  auto sp = std::make_shared<SieveArgs>();
  auto* params = sieve_cmd->add_subcommand("params", "optimal sieve parameters for (g, theta)");
  params->add_option("--g", sp->g, "genus")->required();
  params->add_option("--theta", sp->theta, "theta in [1/2, 1), fraction or decimal")->required();
  params->add_option("--epsilon", sp->epsilon, "epsilon")->default_val(1e-3);
  params->add_flag("--double-b", sp->double_b, "double B for the sieve's 2e^gamma prefactor");
  params->callback([sp] {
    std::vector<sieve::ConstraintReport> reports;
    sieve::SieveParams p =
        sieve::optimal_params(sp->g, Rational::parse(sp->theta), sp->epsilon, sp->double_b,
                              &reports);
    std::cout << "r=" << p.r << "\n";
    std::cout << "xi=" << format_real15(p.xi) << "\n";
    std::cout << "U=" << format_real15(p.U) << "\n";
    std::cout << "V=" << format_real15(p.V) << "\n";
    std::cout << "B=" << format_real15(p.B) << "\n";
    std::cout << "theta=" << p.theta.str() << "\n";
    for (const auto& rep : reports) {
      std::cout << "constraint \"" << rep.name << "\": "
                << (rep.satisfied ? "ok" : (rep.enforced ? "VIOLATED" : "violated (not enforced)"))
                << "\n";
    }
  });

  auto sc = std::make_shared<SieveArgs>();
  auto* check = sieve_cmd->add_subcommand("check", "almost-prime lower-bound inequality on a cache");
  check->add_option("--cache", sc->cache, "cache file")->required();
  check->add_option("--g", sc->g, "genus")->required();
  check->add_option("--theta", sc->theta, "theta in [1/2, 1)")->required();
  check->add_option("--epsilon", sc->epsilon, "epsilon")->default_val(1e-3);
  check->add_option("--m", sc->m, "orders must be coprime to this M")->default_val(1);
  check->callback([sc] {
    curves::SweepCache cache = curves::load_cache(sc->cache);
    sieve::SieveParams p = sieve::optimal_params(sc->g, Rational::parse(sc->theta), sc->epsilon);
    sieve::Lemma36Report rep = sieve::lemma36_check(cache, p, sc->m);
    std::cout << "lhs=" << rep.lhs << "\n";
    std::cout << "H=" << format_real15(rep.H) << "\n";
    std::cout << "correction=" << rep.correction << "\n";
    std::cout << "holds=" << (rep.holds ? "true" : "false") << "\n";
  });
}

}  // namespace avocli
