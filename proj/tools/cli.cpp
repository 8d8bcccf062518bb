// Command-line front end: symbol tables, theta elements, truncations,
// sieves, character censuses, weighted derivative data, and verification
// suites over the curve catalog. Exit codes: 0 success, 1 verification
// failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hz/arithstat.hpp"
#include "hz/curve.hpp"
#include "hz/dirichlet.hpp"
#include "hz/horizontal.hpp"
#include "hz/intutil.hpp"
#include "hz/io.hpp"
#include "hz/kurihara.hpp"
#include "hz/measure.hpp"
#include "hz/modsym.hpp"
#include "hz/padic.hpp"

using namespace hz;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "hz 1.0.0";

struct RunConfig {
  std::string catalog;
  std::string cache;
  long precision = 192;
  long qmax = 1000000;
  long bound = 10000;
  unsigned long long seed = 12345;
  int threads = 1;
  std::string format = "text";
};

json config_json(const RunConfig& cfg) {
  return json{{"version", kVersion},   {"catalog", cfg.catalog}, {"cache", cfg.cache},
              {"precision", cfg.precision}, {"qmax", cfg.qmax},  {"bound", cfg.bound},
              {"seed", cfg.seed},      {"threads", cfg.threads}, {"format", cfg.format}};
}

std::vector<Curve> open_catalog(const RunConfig& cfg) {
  std::string path = cfg.catalog;
  if (path.empty()) {
    const char* env = std::getenv("HZ_CATALOG");
    path = env ? env : "data/curves.csv";
  }
  return load_catalog(path);
}

Curve find_curve(const std::vector<Curve>& cat, const std::string& label) {
  for (const auto& E : cat)
    if (E.label == label) return E;
  throw CLI::ValidationError("--label", "unknown curve label '" + label + "'");
}

// warm the engine from the cache directory if present; return the store path
std::string warm_cache(SymbolEngine& S, const RunConfig& cfg) {
  if (cfg.cache.empty()) return "";
  std::string path = symbol_cache_file(cfg.cache, S.curve().label, S.precision());
  std::ifstream probe(path);
  if (probe.good()) load_symbols(path, S);
  return path;
}

void print_sieve(const SieveReport& r, const RunConfig& cfg, const char* name) {
  if (cfg.format == "json") {
    json j{{"command", name},
           {"labels", r.labels},
           {"p", r.p},
           {"m", r.m},
           {"X", r.X},
           {"matches", r.matches},
           {"candidates", r.candidates},
           {"empirical_density", r.empirical_density.get_str()},
           {"config", config_json(cfg)}};
    if (r.predicted_density) j["predicted_density"] = r.predicted_density->get_str();
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::printf("# %s  p=%lu m=%d X=%ld  matches=%zu candidates=%ld density=%s\n", name, r.p, r.m,
              r.X, r.matches.size(), r.candidates, r.empirical_density.get_str().c_str());
  if (cfg.format == "csv") {
    std::printf("prime\n");
    for (long q : r.matches) std::printf("%ld\n", q);
  } else {
    for (size_t i = 0; i < r.matches.size(); i++)
      std::printf("%ld%c", r.matches[i], i + 1 == r.matches.size() ? '\n' : ' ');
    if (r.matches.empty()) std::printf("(none)\n");
  }
}

// --- verify suites --------------------------------------------------------

struct SuiteResult {
  long checked = 0;
  long failed = 0;
};

// property suite on seeded random measures over p-power shapes
SuiteResult suite_measures(const RunConfig& cfg, bool corrupt) {
  SuiteResult res;
  std::mt19937_64 rng(cfg.seed);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    std::vector<std::vector<long>> shapes = {{(long)p}, {(long)p, (long)p}, {(long)(p * p)}};
    if (p == 2) shapes.push_back({2, 2, 2});
    for (const auto& orders : shapes) {
      GroupShape s(orders);
      for (int rep = 0; rep < 40; rep++) {
        Measure nu = Measure::random(s, rng(), 9);

        // transform round trip (the corruption self-test tampers with the
        // transformed coefficients, which the inverse transform must expose)
        std::vector<mpq_class> b = nu.amice_coeffs(p);
        if (corrupt && res.checked == 0) b[0] += 1;
        Measure back = Measure::from_amice(s, b);
        res.checked++;
        if (!(back == nu)) res.failed++;

        // Fourier evaluation is a ring map for convolution
        Measure mu = Measure::random(s, rng(), 9);
        Character chi = Character::from_index(s, (long)(rng() % (unsigned long long)s.size()));
        res.checked++;
        if (nu.convolve(mu).evaluate(chi) != nu.evaluate(chi) * mu.evaluate(chi)) res.failed++;

        // maximum modulus: no evaluation dips below the minimum valuation
        Val mv = nu.min_valuation(p);
        res.checked++;
        if (nu.evaluate(chi).vp(p) < mv) res.failed++;

        // invertibility criterion and exact inverse
        res.checked++;
        bool inv = nu.invertible(p);
        Val v0 = nu.evaluate(Character::trivial(s)).vp(p);
        if (inv != (!v0.inf && v0.v == 0)) res.failed++;
        if (inv && s.size() <= 9) {
          res.checked++;
          if (!(nu.convolve(nu.invert()) == Measure::delta(s, 0))) res.failed++;
        }
      }
    }
  }
  return res;
}

SuiteResult suite_normrel(const RunConfig& cfg, const std::vector<Curve>& cat) {
  SuiteResult res;
  long bound = std::min(cfg.bound, 60L);
  size_t ncurves = std::min<size_t>(cat.size(), 3);
  for (size_t i = 0; i < ncurves; i++) {
    SymbolEngine S(cat[i], cfg.precision, cfg.qmax);
    warm_cache(S, cfg);
    for (long q1 = 1; q1 <= bound; q1++)
      for (long ell = 2; q1 * ell <= bound; ell++) {
        if (!is_prime(ell) || q1 % ell == 0) continue;
        if (gcd_long(q1 * ell, S.curve().conductor) != 1) continue;
        NormRelationReport rep = S.verify_norm_relation(q1, ell);
        res.checked++;
        if (!rep.exact) res.failed++;
      }
  }
  return res;
}

SuiteResult suite_interp(const RunConfig& cfg, const std::vector<Curve>& cat) {
  SuiteResult res;
  struct Setup {
    const char* label;
    unsigned long p;
    std::vector<long> tail;
  };
  for (const Setup& su : {Setup{"11a1", 2, {3, 5}}, Setup{"11a1", 3, {7, 13}}}) {
    SymbolEngine S(find_curve(cat, su.label), cfg.precision, cfg.qmax);
    warm_cache(S, cfg);
    NuTruncation nu = nu_truncation(S, su.p, {}, su.tail, +1);
    for (long ci = 0; ci < nu.shape.size(); ci++) {
      InterpolationReport rep = interpolation_check(S, nu, Character::from_index(nu.shape, ci));
      if (!rep.applicable) continue;
      res.checked++;
      if (!rep.exact) res.failed++;
    }
  }
  return res;
}

SuiteResult suite_kurihara(const RunConfig& cfg, const std::vector<Curve>& cat) {
  SuiteResult res;
  SymbolEngine S(find_curve(cat, "37a1"), cfg.precision, cfg.qmax);
  warm_cache(S, cfg);
  for (const std::vector<long>& Q : {std::vector<long>{}, {7}, {31}, {7, 31}}) {
    DerivativeCongruenceReport rep = derivative_congruence(S, 3, Q, {});
    res.checked++;
    if (!rep.congruent) res.failed++;
  }
  return res;
}

SuiteResult suite_census(const RunConfig&) {
  SuiteResult res;
  for (long d = 2; d <= 8; d++) {
    long X = 120;
    CensusReport rep = char_census(d, X);
    // independent brute force over Dirichlet groups
    long long brute = 0;
    for (long q = 1; q <= X; q++) {
      DirichletGroup G(q);
      for (const Character& chi : G.primitive_characters())
        if (chi.order() == d) brute++;
    }
    res.checked++;
    if (rep.count != brute) res.failed++;
  }
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) + " — exact twisted L-value toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--catalog", cfg.catalog, "curve catalog CSV (default: $HZ_CATALOG)");
  app.add_option("--cache", cfg.cache, "directory for symbol stores");
  app.add_option("--precision", cfg.precision, "working precision in bits (>= 64)")
      ->check(CLI::Range(64L, 16384L));
  app.add_option("--qmax", cfg.qmax, "denominator bound for rational reconstruction")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound", cfg.bound, "generic size bound (modulus, sieve limit, ...)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for all randomized checks");
  app.add_option("--threads", cfg.threads, "worker parallelism bound")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // symbols
  std::string label;
  auto* c_sym = app.add_subcommand("symbols", "table of exact symbols <a/q>+- for q <= bound");
  c_sym->add_option("--label", label, "curve label")->required();

  // theta
  int sign = +1;
  std::vector<long> primes;
  auto* c_theta = app.add_subcommand("theta", "theta element over prod (Z/ell)x");
  c_theta->add_option("--label", label, "curve label")->required();
  c_theta->add_option("--primes", primes, "distinct primes coprime to the conductor")->required();
  c_theta->add_option("--sign", sign, "+1 or -1")->check(CLI::IsMember({1, -1}));

  // nu
  unsigned long popt = 2;
  std::vector<long> exceptional, tail;
  bool evaluate_all = false;
  std::string out_path;
  auto* c_nu = app.add_subcommand("nu", "truncation of the horizontal p-adic L-function");
  c_nu->add_option("--label", label, "curve label")->required();
  c_nu->add_option("--p", popt, "prime p")->required();
  c_nu->add_option("--exceptional", exceptional, "exceptional primes (first block)");
  c_nu->add_option("--tail", tail, "tail primes with invertible Euler factor");
  c_nu->add_flag("--evaluate-all", evaluate_all, "emit the full character-value table");
  c_nu->add_option("--out", out_path, "also write the serialized truncation here");

  // tw-sieve
  std::vector<std::string> labels;
  int mlevel = 1;
  auto* c_tw = app.add_subcommand("tw-sieve", "primes with unit trace deviation");
  c_tw->add_option("--label", labels, "curve label(s)")->required();
  c_tw->add_option("--p", popt, "prime p")->required();
  c_tw->add_option("--m", mlevel, "congruence level: ell = 1 mod p^m")->check(CLI::PositiveNumber);

  // kato-sieve
  auto* c_kato = app.add_subcommand("kato-sieve", "primes with trace congruent to 2 mod p");
  c_kato->add_option("--label", label, "curve label")->required();
  c_kato->add_option("--p", popt, "prime p")->required();

  // census
  long dorder = 0;
  std::vector<long> restrict_primes;
  auto* c_census = app.add_subcommand("census", "primitive characters of exact order d");
  c_census->add_option("--d", dorder, "character order")->required()->check(CLI::PositiveNumber);
  c_census->add_option("--primes", restrict_primes, "restrict conductor support to these primes");

  // kurihara
  std::vector<long> Qopt, genopt;
  bool congruence = false;
  auto* c_kur = app.add_subcommand("kurihara", "weighted symbol sum over split primes");
  c_kur->add_option("--label", label, "curve label")->required();
  c_kur->add_option("--p", popt, "prime p")->required();
  c_kur->add_option("--Q", Qopt, "split trace-congruent primes");
  c_kur->add_option("--generators", genopt, "primitive roots, one per prime");
  c_kur->add_flag("--congruence", congruence, "also check the derivative congruence");

  // verify
  std::string suite;
  bool corrupt = false;
  auto* c_verify = app.add_subcommand("verify", "run a property suite; exit 1 on any failure");
  c_verify->add_option("--suite", suite, "one of measures, normrel, interp, kurihara, census")
      ->required()
      ->check(CLI::IsMember({"measures", "normrel", "interp", "kurihara", "census"}));
  c_verify->add_flag("--corrupt", corrupt, "inject a coefficient corruption (self-test)");

  // allow global flags to appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_sym) {
      auto cat = open_catalog(cfg);
      SymbolEngine S(find_curve(cat, label), cfg.precision, cfg.qmax);
      std::string store = warm_cache(S, cfg);
      long bound = std::min(cfg.bound, 1000L);
      for (long q = 1; q <= bound; q++) {
        if (gcd_long(q, S.curve().conductor) != 1) {
          std::fprintf(stderr, "# skipped q=%ld (shares a factor with the conductor)\n", q);
          continue;
        }
        S.compute_modulus(q);
      }
      if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& [key, v] : S.cached())
          rows.push_back({{"a", key.first},
                          {"q", key.second},
                          {"plus", v.plus.get_str()},
                          {"minus", v.minus.get_str()}});
        json j{{"command", "symbols"}, {"label", label}, {"rows", rows},
               {"config", config_json(cfg)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("a,q,plus,minus\n");
        for (const auto& [key, v] : S.cached())
          std::printf("%ld,%ld,%s,%s\n", key.first, key.second, v.plus.get_str().c_str(),
                      v.minus.get_str().c_str());
      }
      if (!store.empty()) save_symbols(store, S);
      return 0;
    }

    if (*c_theta) {
      auto cat = open_catalog(cfg);
      SymbolEngine S(find_curve(cat, label), cfg.precision, cfg.qmax);
      std::string store = warm_cache(S, cfg);
      ThetaTruncation th = theta_element(S, primes, sign);
      if (cfg.format == "json") {
        json coeffs = json::array();
        for (long i = 0; i < th.measure.size(); i++)
          coeffs.push_back(th.measure.coeff(i).is_zero()
                               ? "0"
                               : th.measure.coeff(i).rational_value().get_str());
        json j{{"command", "theta"},   {"label", th.label},        {"sign", th.sign},
               {"primes", th.primes},  {"generators", th.generators},
               {"shape", th.shape.orders}, {"coeffs", coeffs},
               {"config", config_json(cfg)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("# theta %s sign=%d modulus=%ld\n", th.label.c_str(), th.sign, th.modulus());
        std::printf("index,coeff\n");
        for (long i = 0; i < th.measure.size(); i++)
          std::printf("%ld,%s\n", i,
                      th.measure.coeff(i).is_zero()
                          ? "0"
                          : th.measure.coeff(i).rational_value().get_str().c_str());
      }
      if (!store.empty()) save_symbols(store, S);
      return 0;
    }

    if (*c_nu) {
      auto cat = open_catalog(cfg);
      SymbolEngine S(find_curve(cat, label), cfg.precision, cfg.qmax);
      std::string store = warm_cache(S, cfg);
      NuTruncation nu = nu_truncation(S, popt, exceptional, tail, sign);
      json j = nu_to_json(nu);
      j["config"] = config_json(cfg);
      if (evaluate_all) {
        if (nu.shape.size() > 10000) {
          std::fprintf(stderr,
                       "refusing --evaluate-all on %ld characters (limit 10000); "
                       "drop tail primes to shrink the shape\n",
                       nu.shape.size());
          return 2;
        }
        json table = json::array();
        for (long ci = 0; ci < nu.shape.size(); ci++) {
          Character chi = Character::from_index(nu.shape, ci);
          Cyc v = nu.measure.evaluate(chi);
          Val w = v.vp(popt);
          table.push_back({{"character", chi.k},
                           {"value", v.str()},
                           {"valuation", w.inf ? "inf" : w.v.get_str()}});
        }
        j["characters"] = table;
      }
      std::cout << j.dump(2) << "\n";
      if (!out_path.empty()) save_nu(out_path, nu);
      if (!store.empty()) save_symbols(store, S);
      return 0;
    }

    if (*c_tw) {
      auto cat = open_catalog(cfg);
      std::vector<Curve> curves;
      for (const auto& l : labels) curves.push_back(find_curve(cat, l));
      print_sieve(tw_sieve(curves, popt, mlevel, cfg.bound), cfg, "tw-sieve");
      return 0;
    }

    if (*c_kato) {
      auto cat = open_catalog(cfg);
      print_sieve(kato_sieve(find_curve(cat, label), popt, cfg.bound), cfg, "kato-sieve");
      return 0;
    }

    if (*c_census) {
      CensusReport rep =
          char_census(dorder, cfg.bound, restrict_primes.empty() ? nullptr : &restrict_primes);
      if (cfg.format == "json") {
        json j{{"command", "census"},
               {"d", rep.d},
               {"X", rep.X},
               {"count", rep.count},
               {"fitted_exponent", rep.fitted_exponent},
               {"config", config_json(cfg)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("# census d=%ld X=%ld count=%lld fitted_exponent=%.4f\n", rep.d, rep.X,
                    rep.count, rep.fitted_exponent);
      }
      return 0;
    }

    if (*c_kur) {
      auto cat = open_catalog(cfg);
      SymbolEngine S(find_curve(cat, label), cfg.precision, cfg.qmax);
      std::string store = warm_cache(S, cfg);
      KuriharaDatum d = kurihara_number(S, popt, Qopt, genopt.empty() ? nullptr : &genopt);
      json j{{"command", "kurihara"},
             {"label", d.label},
             {"p", d.p},
             {"Q", d.Q},
             {"generators", d.generators},
             {"delta", d.delta.get_str()},
             {"delta_mod_p", d.delta_mod_p},
             {"config", config_json(cfg)}};
      if (congruence) {
        DerivativeCongruenceReport rep = derivative_congruence(S, popt, Qopt, tail);
        j["congruence"] = {{"nu_derivative", rep.nu_derivative.get_str()},
                           {"lhs_mod_p", rep.lhs_mod_p},
                           {"rhs_mod_p", rep.rhs_mod_p},
                           {"congruent", rep.congruent}};
      }
      if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("# kurihara %s p=%lu delta=%s mod_p=%ld\n", d.label.c_str(), d.p,
                    d.delta.get_str().c_str(), d.delta_mod_p);
        if (congruence)
          std::printf("congruence: lhs=%lld rhs=%lld %s\n", (long long)j["congruence"]["lhs_mod_p"].get<long>(),
                      (long long)j["congruence"]["rhs_mod_p"].get<long>(),
                      j["congruence"]["congruent"].get<bool>() ? "OK" : "FAIL");
      }
      if (!store.empty()) save_symbols(store, S);
      return congruence && !j["congruence"]["congruent"].get<bool>() ? 1 : 0;
    }

    if (*c_verify) {
      SuiteResult res;
      if (suite == "measures") {
        res = suite_measures(cfg, corrupt);
      } else {
        std::vector<Curve> cat;
        try {
          cat = open_catalog(cfg);
        } catch (const std::exception&) {
          cat.clear();
        }
        if (cat.empty() && suite != "census") {
          std::printf("suite %s skipped: empty catalog\n", suite.c_str());
          return 0;
        }
        if (suite == "normrel") res = suite_normrel(cfg, cat);
        if (suite == "interp") res = suite_interp(cfg, cat);
        if (suite == "kurihara") res = suite_kurihara(cfg, cat);
        if (suite == "census") res = suite_census(cfg);
      }
      std::printf("suite %s: %ld checked, %ld failed\n", suite.c_str(), res.checked, res.failed);
      return res.failed == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
