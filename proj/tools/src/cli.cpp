#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "classsieve/arithmetic.hpp"
#include "classsieve/classnumbers.hpp"
#include "classsieve/elliptic.hpp"
#include "classsieve/levels.hpp"
#include "classsieve/parallel.hpp"
#include "classsieve/qseries.hpp"
#include "classsieve/sigma.hpp"
#include "json_util.hpp"

namespace classsieve::cli {

namespace {

constexpr std::int64_t kDefaultCliCeiling = 1'000'000;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

unsigned env_threads() {
  const char* value = std::getenv("CLASSSIEVE_THREADS");
  if (value == nullptr || *value == '\0') return 1;
  try {
    return static_cast<unsigned>(std::stoul(value));
  } catch (const std::exception&) {
    throw UsageError("CLASSSIEVE_THREADS must be a non-negative integer");
  }
}

struct Config {
  std::int64_t max = 0;
  std::int64_t ell = 5;
  std::string split;
  std::string inert;
  std::string ramified;
  std::string out;
  std::int64_t truncation = 0;
  unsigned threads = 1;
  std::int64_t ceiling = kDefaultCliCeiling;
  std::int64_t prime = 0;
  std::int64_t level = 0;
  int weight_times_two = 3;
  bool include_divisible = false;
  std::string a_invariants;
  std::int64_t conductor = 0;
  bool assert_torsion = false;
  bool ignore_hypotheses = false;
};

struct Options {
  CLI::Option* split = nullptr;
  CLI::Option* inert = nullptr;
  CLI::Option* ramified = nullptr;
};

void add_sigma(CLI::App* sub, Config& cfg, Options& opts) {
  sub->add_option("--ell", cfg.ell, "Prime ell")->capture_default_str();
  opts.split = sub->add_option("--split", cfg.split, "S+ primes, comma separated");
  opts.inert = sub->add_option("--inert", cfg.inert, "S- primes, comma separated");
  opts.ramified = sub->add_option("--ramified", cfg.ramified, "S0 primes, comma separated");
}

/// The format default depends on the subcommand, so it is applied after parsing.
void add_out(CLI::App* sub, Config& cfg, const std::string& fallback, std::vector<std::string> formats) {
  sub->add_option("--out", cfg.out, "Output format (default " + fallback + ")")
      ->check(CLI::IsMember(std::move(formats)));
  sub->callback([sub, &cfg, fallback] {
    if (sub->get_option("--out")->count() == 0) cfg.out = fallback;
  });
}

void add_threads(CLI::App* sub, Config& cfg) {
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
}

void add_ceiling(CLI::App* sub, Config& cfg) {
  sub->add_option("--ceiling", cfg.ceiling, "Largest table size allowed")->capture_default_str();
}

LocalConditions sigma_from(const Config& cfg) {
  LocalConditions sigma;
  sigma.ell = cfg.ell;
  sigma.split = parse_prime_list(cfg.split);
  sigma.inert = parse_prime_list(cfg.inert);
  sigma.ramified = parse_prime_list(cfg.ramified);
  return sigma.normalized();
}

void require_max(std::int64_t x, std::int64_t ceiling) {
  if (x < 1) throw UsageError("--max must be >= 1");
  if (x > ceiling) {
    throw UsageError("--max " + std::to_string(x) + " exceeds --ceiling " + std::to_string(ceiling));
  }
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

int cmd_hurwitz(const Config& cfg, std::ostream& out) {
  if (cfg.max < 0) throw UsageError("--max must be >= 0");
  if (cfg.max > cfg.ceiling) throw UsageError("--max exceeds --ceiling");
  const HurwitzTable table = hurwitz_table(cfg.max, {cfg.ceiling, cfg.threads});
  if (cfg.out == "csv") {
    table.write_csv(out);
    return kExitOk;
  }
  Json rows = Json::array();
  for (std::int64_t n = 0; n <= cfg.max; ++n) rows.push_back(Json{{"n", n}, {"twelve_H", table[n]}});
  emit(out, Json{{"max", cfg.max}, {"rows", rows}});
  return kExitOk;
}

int cmd_classnum(const Config& cfg, std::ostream& out) {
  require_max(cfg.max, cfg.ceiling);
  const ClassNumberTable table = ClassNumberTable::build(cfg.max - 1, {cfg.ceiling, cfg.threads});
  Json rows = Json::array();
  if (cfg.out == "csv") out << "D,h\n";
  for (std::int64_t abs_d = 3; abs_d < cfg.max; ++abs_d) {
    if (!table.is_fundamental(abs_d)) continue;
    if (cfg.out == "csv") {
      out << -abs_d << ',' << table.at(abs_d) << '\n';
    } else {
      rows.push_back(Json{{"D", -abs_d}, {"h", table.at(abs_d)}});
    }
  }
  if (cfg.out == "json") emit(out, Json{{"max", cfg.max}, {"rows", rows}});
  return kExitOk;
}

int cmd_sieve(const Config& cfg, std::ostream& out) {
  if (cfg.truncation < 1) throw UsageError("--truncation must be >= 1");
  const LocalConditions sigma = sigma_from(cfg);
  require_valid(sigma);
  const std::int64_t reach = cfg.prime > 0 ? checked_mul(cfg.prime, cfg.truncation) : cfg.truncation;
  if (reach > cfg.ceiling) throw UsageError("--truncation (times --prime) exceeds --ceiling");
  const QSeries series =
      cfg.prime > 0 ? build_F(sigma, cfg.prime, cfg.truncation) : build_h_sigma(sigma, cfg.truncation);
  if (cfg.out == "csv") {
    series.write_csv(out);
    return kExitOk;
  }
  Json coefficients = Json::array();
  for (const auto& [n, c] : series.holomorphic()) {
    coefficients.push_back(Json{{"n", n}, {"numerator", c.num()}, {"denominator", c.den()}});
  }
  const auto order = ord_ell(series, sigma.ell);
  emit(out, Json{{"sigma", sigma_json(sigma)},
                 {"q_sigma", q_sigma(sigma)},
                 {"prime", cfg.prime > 0 ? Json(cfg.prime) : Json(nullptr)},
                 {"truncation", series.truncation()},
                 {"level", series.level()},
                 {"ord_ell", optional_json(order)},
                 {"coefficients", coefficients}});
  return kExitOk;
}

int cmd_levels(const Config& cfg, std::ostream& out) {
  const LocalConditions sigma = sigma_from(cfg);
  require_valid(sigma);
  emit(out, bounds_json(bound_report(sigma)));
  return kExitOk;
}

int cmd_search(const Config& cfg, std::ostream& out) {
  const LocalConditions sigma = sigma_from(cfg);
  require_valid(sigma);
  require_max(cfg.max, cfg.ceiling);
  const auto hits = search_discriminants(sigma, cfg.max, {cfg.ceiling, cfg.threads, cfg.include_divisible});
  if (cfg.out == "csv") {
    out << "D,h,ell_divides\n";
    for (const auto& hit : hits) out << hit.d << ',' << hit.h << ',' << (hit.ell_divides ? "true" : "false") << '\n';
    return kExitOk;
  }
  Json rows = Json::array();
  for (const auto& hit : hits) rows.push_back(Json{{"D", hit.d}, {"h", hit.h}, {"ell_divides", hit.ell_divides}});
  emit(out, Json{{"sigma", sigma_json(sigma)}, {"max", cfg.max}, {"rows", rows}});
  return kExitOk;
}

int cmd_density(const Config& cfg, const Options& opts, std::ostream& out) {
  require_max(cfg.max, cfg.ceiling);
  std::optional<LocalConditions> sigma;
  if (opts.split->count() + opts.inert->count() + opts.ramified->count() > 0) sigma = sigma_from(cfg);
  const DensityReport r = density_report(sigma, cfg.ell, cfg.max, {cfg.ceiling, cfg.threads, false});
  const CorollaryConstant& c = r.corollary_constant;
  emit(out, Json{{"x", r.x},
                 {"ell", r.ell},
                 {"sigma", sigma ? sigma_json(*sigma) : Json(nullptr)},
                 {"total_fundamental", r.total_fundamental},
                 {"indivisible_count", r.indivisible_count},
                 {"in_T_sigma_count", optional_json(r.in_T_sigma_count)},
                 {"proportion", r.proportion},
                 {"cl_prediction", r.cl_prediction},
                 {"corollary_constant", Json{{"numerator", c.numerator},
                                             {"denominator", c.denominator},
                                             {"two_exponent", optional_json(c.two_exponent)},
                                             {"m_sigma", optional_json(c.m_sigma)},
                                             {"log10_value", optional_json(c.log10_value)}}}});
  return kExitOk;
}

WeierstrassCoefficients parse_a_invariants(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--a-invariants: '" + item + "' is not an integer");
    }
  }
  if (values.size() != 5) throw UsageError("--a-invariants needs exactly five integers a1,a2,a3,a4,a6");
  return {values[0], values[1], values[2], values[3], values[4]};
}

Json certificate_json(const TwistCertificate& t, const CurveData& e, bool overridden) {
  return Json{{"D", t.d},
              {"h", t.h},
              {"ell", e.ell},
              {"frey", frey_check_json(t.frey)},
              {"torsion_hypothesis_asserted", e.torsion_hypothesis_asserted},
              {"hypotheses_overridden", overridden}};
}

int cmd_frey(const Config& cfg, std::ostream& out, std::ostream& err) {
  require_max(cfg.max, cfg.ceiling);
  const CurveData e = make_curve(parse_a_invariants(cfg.a_invariants), cfg.conductor, cfg.ell, cfg.assert_torsion);
  const RankZeroResult result =
      rank_zero_twists(e, cfg.max, RankZeroOptions{cfg.ceiling, cfg.threads, cfg.ignore_hypotheses});
  if (result.refused) {
    for (const auto& reason : result.refusal_reasons) err << "refused: " << reason << '\n';
  }
  if (cfg.out == "csv") {
    if (result.refused) return kExitValidation;
    out << "D,h,certificate_json\n";
    for (const auto& t : result.twists) {
      out << t.d << ',' << t.h << ',' << csv_field(certificate_json(t, e, result.hypotheses_overridden).dump())
          << '\n';
    }
    return kExitOk;
  }
  Json twists = Json::array();
  for (const auto& t : result.twists) twists.push_back(certificate_json(t, e, result.hypotheses_overridden));
  emit(out, Json{{"a_invariants", {e.a.a1, e.a.a2, e.a.a3, e.a.a4, e.a.a6}},
                 {"conductor", e.conductor},
                 {"ell", e.ell},
                 {"max", cfg.max},
                 {"torsion_hypothesis_asserted", e.torsion_hypothesis_asserted},
                 {"hypotheses", hypotheses_json(result.hypotheses)},
                 {"refused", result.refused},
                 {"hypotheses_overridden", result.hypotheses_overridden},
                 {"count", result.twists.size()},
                 {"even_count", result.even_count},
                 {"twists", twists}});
  return result.refused ? kExitValidation : kExitOk;
}

int cmd_sturm(const Config& cfg, const Options& opts, CLI::Option* level_opt, CLI::Option* prime_opt,
              std::ostream& out) {
  if (cfg.weight_times_two < 1) throw UsageError("--weight-times-two must be >= 1");
  const bool by_level = level_opt->count() > 0;
  const bool by_prime = prime_opt->count() > 0;
  if (by_level == by_prime) throw UsageError("sturm needs exactly one of --level and --prime");
  const bool has_sigma = opts.split->count() + opts.inert->count() + opts.ramified->count() > 0;
  if (by_level) {
    if (has_sigma) throw UsageError("--split/--inert/--ramified only apply with --prime");
    if (cfg.level < 1) throw UsageError("--level must be >= 1");
    emit(out, Json{{"weight_times_two", cfg.weight_times_two},
                   {"level", cfg.level},
                   {"index", gamma0_index(cfg.level)},
                   {"sturm_bound", to_json(sturm_bound(cfg.weight_times_two, cfg.level))}});
    return kExitOk;
  }
  if (cfg.prime < 2 || !is_prime(static_cast<std::uint64_t>(cfg.prime))) throw UsageError("--prime must be prime");
  const LocalConditions sigma = sigma_from(cfg);
  require_valid(sigma);
  const BoundReport bounds = bound_report(sigma);
  if (!bounds.n_sigma || !bounds.m_sigma) throw UsageError("N_Sigma does not fit in 64 bits for this Sigma");
  const std::int64_t level = checked_mul(cfg.prime, *bounds.n_sigma);
  const Rational bound = sturm_bound(cfg.weight_times_two, level);
  const Rational m_times = *bounds.m_sigma * Rational(cfg.prime + 1);
  emit(out, Json{{"weight_times_two", cfg.weight_times_two},
                 {"sigma", sigma_json(sigma)},
                 {"prime", cfg.prime},
                 {"level", level},
                 {"index", gamma0_index(level)},
                 {"sturm_bound", to_json(bound)},
                 {"m_sigma", to_json(*bounds.m_sigma)},
                 {"m_sigma_times_p_plus_1", to_json(m_times)},
                 {"equal", bound == m_times}});
  return kExitOk;
}

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  Options opts;
  CLI::App app{"Class numbers, Hurwitz class numbers and the local-condition sieve", "classsieve"};
  app.require_subcommand(1, 1);

  auto* hurwitz = app.add_subcommand("hurwitz", "Table of 12 H(n) for 0 <= n <= --max");
  hurwitz->add_option("--max", cfg.max, "Largest n")->required();
  add_out(hurwitz, cfg, "csv", {"csv", "json"});
  add_threads(hurwitz, cfg);
  add_ceiling(hurwitz, cfg);

  auto* classnum = app.add_subcommand("classnum", "h(D) for fundamental -max < D < 0");
  classnum->add_option("--max", cfg.max, "Bound X")->required();
  add_out(classnum, cfg, "csv", {"csv", "json"});
  add_threads(classnum, cfg);
  add_ceiling(classnum, cfg);

  auto* sieve = app.add_subcommand("sieve", "Coefficients of H^Sigma, or of F with --prime");
  Options sieve_opts;
  add_sigma(sieve, cfg, sieve_opts);
  sieve->add_option("--truncation", cfg.truncation, "Largest exponent")->required();
  sieve->add_option("--prime", cfg.prime, "Build (H^Sigma | U(p)) - p (H^Sigma | V(p))");
  add_out(sieve, cfg, "csv", {"csv", "json"});
  add_threads(sieve, cfg);
  add_ceiling(sieve, cfg);

  auto* levels = app.add_subcommand("levels", "Q_Sigma, N_Sigma, index, M_Sigma and r_Sigma");
  Options levels_opts;
  add_sigma(levels, cfg, levels_opts);
  add_out(levels, cfg, "json", {"json"});
  add_threads(levels, cfg);

  auto* search = app.add_subcommand("search", "Fundamental discriminants in T_{Sigma,ell}");
  Options search_opts;
  add_sigma(search, cfg, search_opts);
  search->add_option("--max", cfg.max, "Bound X (-X < D < 0)")->required();
  search->add_flag("--include-divisible", cfg.include_divisible, "Also list D with ell | h(D)");
  add_out(search, cfg, "csv", {"csv", "json"});
  add_threads(search, cfg);
  add_ceiling(search, cfg);

  auto* density = app.add_subcommand("density", "Proportion of ell-indivisible class numbers");
  Options density_opts;
  add_sigma(density, cfg, density_opts);
  density->add_option("--max", cfg.max, "Bound X (-X < D < 0)")->required();
  add_out(density, cfg, "json", {"json"});
  add_threads(density, cfg);
  add_ceiling(density, cfg);

  auto* frey = app.add_subcommand("frey", "Quadratic twists with trivial ell-Selmer group");
  frey->add_option("--a-invariants", cfg.a_invariants, "a1,a2,a3,a4,a6")->required()->allow_extra_args(false);
  frey->add_option("--conductor", cfg.conductor, "Conductor N of the curve")->required();
  frey->add_option("--ell", cfg.ell, "Order of the rational torsion point")->required();
  frey->add_option("--max", cfg.max, "Bound X (-X < D < 0)")->required();
  frey->add_flag("--assert-torsion-hypothesis", cfg.assert_torsion,
                 "Assert the torsion point is not in the kernel of reduction mod ell");
  frey->add_flag("--ignore-hypotheses", cfg.ignore_hypotheses,
                 "Enumerate even when computed hypotheses fail (output is marked)");
  add_out(frey, cfg, "csv", {"csv", "json"});
  add_threads(frey, cfg);
  add_ceiling(frey, cfg);

  auto* sturm = app.add_subcommand("sturm", "Sturm bound (k/12)[Gamma_0(1) : Gamma_0(N)]");
  Options sturm_opts;
  add_sigma(sturm, cfg, sturm_opts);
  sturm->add_option("--weight-times-two", cfg.weight_times_two, "2k")->capture_default_str();
  auto* level_opt = sturm->add_option("--level", cfg.level, "Level N");
  auto* prime_opt = sturm->add_option("--prime", cfg.prime, "Use level p N_Sigma");
  add_out(sturm, cfg, "json", {"json"});

  auto* examples = app.add_subcommand("paper-examples", "Worked examples with expected and computed values");
  add_out(examples, cfg, "json", {"json"});
  add_threads(examples, cfg);

  try {
    cfg.threads = env_threads();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (cfg.threads == 0) cfg.threads = default_thread_count();

  try {
    if (hurwitz->parsed()) return cmd_hurwitz(cfg, out);
    if (classnum->parsed()) return cmd_classnum(cfg, out);
    if (sieve->parsed()) return cmd_sieve(cfg, out);
    if (levels->parsed()) return cmd_levels(cfg, out);
    if (search->parsed()) return cmd_search(cfg, out);
    if (density->parsed()) return cmd_density(cfg, density_opts, out);
    if (frey->parsed()) return cmd_frey(cfg, out, err);
    if (sturm->parsed()) return cmd_sturm(cfg, sturm_opts, level_opt, prime_opt, out);
    if (examples->parsed()) {
      emit(out, paper_examples(cfg.threads));
      return kExitOk;
    }
  } catch (const ShadowResidueError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::overflow_error& e) {
    err << "error: arithmetic overflow: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "internal error: no subcommand dispatched\n";
  return kExitInternal;
}

}  // namespace classsieve::cli
