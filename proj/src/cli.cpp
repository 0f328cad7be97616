#include "ntlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "ntlab/dirichlet_lab.hpp"
#include "ntlab/error_lab.hpp"
#include "ntlab/errors.hpp"
#include "ntlab/parallel.hpp"
#include "ntlab/report.hpp"
#include "ntlab/suites.hpp"

namespace ntlab {

namespace fs = std::filesystem;

fs::path resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("NTLAB_CACHE_DIR"); env && *env) return env;
  return ".ntlab_cache";
}

FunctionTable load_or_build(Classical f, std::uint64_t limit, const fs::path& cache_dir, std::ostream& warn,
                            CacheStatus* status) {
  const fs::path path = cache_dir / (std::string(to_string(f)) + "_" + std::to_string(limit) + ".ntft");
  CacheStatus st = CacheStatus::built;
  if (fs::exists(path)) {
    try {
      FunctionTable t = load_table(path);
      if (t.limit() == limit && t.label() == to_string(f)) {
        if (status) *status = CacheStatus::cached;
        return t;
      }
      warn << "warning: cache file " << path.string() << " does not match its name; rebuilding\n";
    } catch (const CacheError& e) {
      warn << "warning: cache file " << path.string() << " is corrupt (" << e.what() << "); rebuilding\n";
    }
    st = CacheStatus::rebuilt;
  }
  FunctionTable t = sieve_classical(f, limit);
  fs::create_directories(cache_dir);
  save_table(t, path);
  if (status) *status = st;
  return t;
}

namespace {

std::string_view to_string(CacheStatus s) {
  switch (s) {
    case CacheStatus::built: return "built";
    case CacheStatus::cached: return "cached";
    case CacheStatus::rebuilt: return "rebuilt";
  }
  return "?";
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

// Families with each --alpha substituted, when alphas are given.
std::vector<FamilySpec> expand_families(const RunConfig& cfg, FamilyId fallback) {
  std::vector<FamilySpec> base = cfg.families;
  if (base.empty()) base.push_back({fallback, Alpha(1.0)});
  if (cfg.alphas.empty()) return base;
  std::vector<FamilySpec> out;
  for (const auto& f : base) {
    for (const auto& a : cfg.alphas) out.push_back({f.id, a});
  }
  return out;
}

// Sum_{n <= x} tau_alpha(n) has the fitted shape x + A_0 log x + c only at alpha = 1.
void require_main_term_shape(const FamilySpec& spec) {
  if (spec.id == FamilyId::tau_alpha && spec.alpha.value() != cplx(1.0)) {
    throw UsageError("main terms for tau_alpha are only available at alpha = 1");
  }
}

int cmd_sieve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CsvTable t({"table", "limit", "status"});
  for (Classical f : {Classical::mu, Classical::lambda, Classical::phi, Classical::tau, Classical::sigma}) {
    CacheStatus st{};
    load_or_build(f, cfg.limit, cfg.cache_dir, err, &st);
    out << to_string(f) << ' ' << cfg.limit << ' ' << to_string(st) << '\n';
    t.add_row({std::string(to_string(f)), std::to_string(cfg.limit), std::string(to_string(st))});
  }
  t.write(cfg.out / "sieve.csv");
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  SuiteOptions opt;
  opt.limit = cfg.limit;
  opt.seed = cfg.seed;
  opt.alphas = cfg.alphas;
  const SuiteResult r = run_suite(suite, opt);
  r.csv().write(cfg.out / ("verify_" + suite + ".csv"));
  for (const auto& c : r.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ' ' << format_double(c.statistic) << " (threshold "
        << format_double(c.threshold) << ")\n";
  }
  if (!r.pass()) {
    r.failures_csv().write(cfg.out / ("verify_" + suite + "_failures.csv"));
    return kExitAssertFail;
  }
  return kExitOk;
}

struct ExpsumArgs {
  double P = 0.0, P_prime = 0.0, Q = 0.0;
  std::string weight = "none";
};

int cmd_expsum(const RunConfig& cfg, const ExpsumArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<SumWindow> windows;
  if (a.P > 0.0) {
    windows.push_back({a.P, a.P_prime > 0.0 ? a.P_prime : 2.0 * a.P, a.Q > 0.0 ? a.Q : 1e9});
  } else {
    for (double P : {1e3, 1e4, 1e5}) {
      for (double Q : {1e6, 1e8, 1e10}) windows.push_back({P, 2.0 * P, Q});
    }
  }
  std::uint64_t need = 0;
  for (const auto& w : windows) {
    w.validate();
    need = std::max(need, w.last());
  }
  FunctionTable coeff;
  const FunctionTable* coeff_ptr = nullptr;
  if (a.weight == "mu" || a.weight == "lambda") {
    const Classical f = parse_classical(a.weight);
    coeff = load_or_build(f, std::max(cfg.limit, need), cfg.cache_dir, err);
    coeff_ptr = &coeff;
  } else if (a.weight == "family") {
    if (cfg.families.empty()) throw UsageError("--weight family requires --family");
    const SpfTable spf = build_spf(std::max(need, std::uint64_t{2}));
    coeff = family_table(cfg.families.front(), need, spf);
    coeff_ptr = &coeff;
  } else if (a.weight != "none") {
    throw UsageError("unknown weight '" + a.weight + "'");
  }
  std::vector<ExpSumRecord> recs;
  for (const auto& w : windows) recs.push_back(exp_sum_direct(w, coeff_ptr));
  const CsvTable t = expsum_csv(recs);
  t.write(cfg.out / "expsum.csv");
  out << t.str();
  return kExitOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  if (cfg.limit < 2000) throw UsageError("profile requires --limit >= 2000");
  const auto families = expand_families(cfg, FamilyId::phi_raw);
  const SpfTable spf = build_spf(cfg.limit);
  const auto grid = profile_grid(static_cast<double>(cfg.limit));
  std::vector<ErrorProfile> profiles;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const FamilySpec& spec = families[i];
    require_main_term_shape(spec);
    const auto exact = summatory_exact(spec, grid, spf);
    ErrorProfile p;
    if (spec.id == FamilyId::phi_raw) {
      p = error_profile_from_samples(spec, exact, nullptr);
    } else {
      const MainTermCoeffs c = fit_main_term(exact, natural_alpha(spec));
      p = error_profile_from_samples(spec, exact, &c);
    }
    write_text(cfg.out / ("profile_" + std::to_string(i) + "_" + std::string(to_string(spec.id)) + ".svg"),
               profile_svg(p));
    out << to_string(spec) << " max|E|/(x log x) " << format_double(p.max_mertens_ratio) << " liu slope "
        << format_double(p.liu_slope) << '\n';
    profiles.push_back(std::move(p));
  }
  profile_csv(profiles).write(cfg.out / "profile.csv");
  return kExitOk;
}

int cmd_coeffs(const RunConfig& cfg, const std::string& method, std::uint64_t p_max, std::ostream& out) {
  const auto families = expand_families(cfg, FamilyId::phi_ratio);
  std::vector<std::pair<FamilySpec, MainTermCoeffs>> rows;
  const bool want_fit = method == "fit" || method == "both";
  const bool want_sd = method == "selberg_delange" || method == "both";
  if (!want_fit && !want_sd) throw UsageError("unknown method '" + method + "'");
  SpfTable spf;
  if (want_fit) spf = build_spf(std::max<std::uint64_t>(cfg.limit, 2000));
  for (const auto& spec : families) {
    require_main_term_shape(spec);
    const Alpha a = natural_alpha(spec);
    if (want_sd && spec.id != FamilyId::tau_alpha && spec.id != FamilyId::phi_raw) {
      if (a.re() >= 0.0) {
        rows.emplace_back(spec, selberg_delange_coeffs(spec, a, p_max));
      } else {
        out << to_string(spec) << ": selberg_delange needs Re alpha >= 0; skipped\n";
      }
    }
    if (want_fit) {
      const auto exact = summatory_model(spec, profile_grid(static_cast<double>(spf.limit())), spf);
      MainTermCoeffs c = fit_main_term(exact, a);
      double tail = 0.0;
      if (spec.id != FamilyId::tau_alpha) (void)linear_coefficient_oracle(spec, p_max, &tail);
      c.tail = tail;
      rows.emplace_back(spec, c);
    }
  }
  const CsvTable t = coeffs_csv(rows);
  t.write(cfg.out / "coeffs.csv");
  out << t.str();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numeric laboratory for multiplicative functions and exponential sums", "ntlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value configuration file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  std::vector<std::string> family_text, alpha_text;
  std::string cache_flag, out_dir = cfg.out.string();
  double limit = static_cast<double>(cfg.limit);
  app.add_option("--limit", limit, "Sieve limit N (>= 1000)");
  app.add_option("--family", family_text, "Family spec <id>[:alpha=<re>[+<im>i]], repeatable");
  app.add_option("--alpha", alpha_text, "Exponent(s) alpha, e.g. 1, -1, 0.5, 0+1i");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", cfg.seed, "Seed for randomized windows");
  app.add_option("--cache", cache_flag, "Cache directory (default $NTLAB_CACHE_DIR or .ntlab_cache)");

  auto* sieve = app.add_subcommand("sieve", "Build or reload cached sieve tables");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "vaughan | vaaler | kusmin | conditions | tau | partition")->required();
  auto* expsum = app.add_subcommand("expsum", "Evaluate sum e(Q/n) over dyadic windows");
  ExpsumArgs ea;
  expsum->add_option("--P", ea.P, "Window start P (default: a 3x3 grid)");
  expsum->add_option("--P-prime", ea.P_prime, "Window end P' (default 2P)");
  expsum->add_option("--Q", ea.Q, "Frequency Q (default 1e9)");
  expsum->add_option("--weight", ea.weight, "none | mu | lambda | family");
  auto* profile = app.add_subcommand("profile", "Error profiles of summatory functions");
  auto* coeffs = app.add_subcommand("coeffs", "Main-term coefficients");
  std::string method = "both";
  double p_max = static_cast<double>(kDefaultEulerCutoff);
  coeffs->add_option("--method", method, "fit | selberg_delange | both");
  coeffs->add_option("--p-max", p_max, "Euler product prime cutoff");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!(limit >= 1000.0 && limit <= 4e9)) throw UsageError("--limit must lie in [1000, 4e9]");
    cfg.limit = static_cast<std::uint64_t>(limit);
    for (const auto& f : family_text) cfg.families.push_back(parse_family_spec(f));
    for (const auto& a : alpha_text) cfg.alphas.push_back(parse_alpha(a));
    cfg.out = out_dir;
    cfg.cache_dir = resolve_cache_dir(cache_flag);
    set_thread_count(cfg.threads);

    if (*sieve) return cmd_sieve(cfg, out, err);
    if (*verify) return cmd_verify(cfg, suite, out);
    if (*expsum) return cmd_expsum(cfg, ea, out, err);
    if (*profile) return cmd_profile(cfg, out);
    if (*coeffs) return cmd_coeffs(cfg, method, static_cast<std::uint64_t>(p_max), out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RegimeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertFail;
  }
  return kExitUsage;
}

}  // namespace ntlab
