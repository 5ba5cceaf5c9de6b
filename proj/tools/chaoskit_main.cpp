// chaoskit: command-line front end for the chaotic-map / correlation
// toolkit. Every subcommand writes its data files plus a run manifest
// into the output directory; outputs are byte-reproducible for a fixed
// parameter set.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chaoskit/bifurcation.hpp"
#include "chaoskit/decay.hpp"
#include "chaoskit/entropy.hpp"
#include "chaoskit/maps.hpp"
#include "chaoskit/pendulum.hpp"
#include "chaoskit/quantum.hpp"
#include "chaoskit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 1;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

chaoskit::MapKind parse_map_kind(const std::string& name) {
  if (name == "logistic") return chaoskit::MapKind::Logistic;
  if (name == "sine") return chaoskit::MapKind::Sine;
  if (name == "quadratic") return chaoskit::MapKind::Quadratic;
  throw CLI::ValidationError("--map", "unknown map '" + name + "'");
}

fs::path resolve_outdir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CHAOSKIT_OUTDIR"); env && *env) return env;
  return fs::current_path();
}

class Run {
 public:
  Run(std::string subcommand, fs::path outdir)
      : subcommand_(std::move(subcommand)),
        outdir_(std::move(outdir)),
        start_(std::chrono::steady_clock::now()) {
    fs::create_directories(outdir_);
  }

  const fs::path& outdir() const { return outdir_; }

  std::ofstream open_output(const std::string& name) {
    outputs_.push_back(name);
    std::ofstream out(outdir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + name);
    return out;
  }

  void set_param(const std::string& key, const json& value) {
    params_[key] = value;
  }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  void write_manifest() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    json manifest;
    manifest["schema_version"] = 1;
    manifest["subcommand"] = subcommand_;
    manifest["toolkit_version"] = CHAOSKIT_VERSION;
    manifest["seed"] = seed_;
    manifest["parameters"] = params_;
    manifest["outputs"] = outputs_;
    manifest["duration_seconds"] = elapsed;
    std::ofstream out(outdir_ / (subcommand_ + "_manifest.json"),
                      std::ios::binary);
    out << manifest.dump(2) << "\n";
  }

 private:
  std::string subcommand_;
  fs::path outdir_;
  json params_ = json::object();
  std::vector<std::string> outputs_;
  std::uint64_t seed_ = 0;
  std::chrono::steady_clock::time_point start_;
};

[[noreturn]] void fail_json(const std::string& code, const std::string& message,
                            const json& extra = json::object()) {
  json err = extra;
  err["schema_version"] = 1;
  err["error"] = code;
  err["message"] = message;
  std::cout << err.dump(2) << "\n";
  std::exit(kExitRuntime);
}

// ---------------------------------------------------------------- bifurcate

struct BifurcateOpts {
  std::string map = "logistic";
  double a_min = 2.9;
  double a_max = 4.0;
  std::size_t n_param = 2000;
  std::size_t transient = 1000;
  std::size_t keep = 500;
  double x0 = std::numeric_limits<double>::quiet_NaN();  // default: per map
  std::string outdir;
};

int run_bifurcate(const BifurcateOpts& opt) {
  const chaoskit::MapKind kind = parse_map_kind(opt.map);
  if (!(opt.a_min < opt.a_max)) {
    std::cerr << "error: --a-min must be below --a-max\n";
    return kExitUsage;
  }
  if (kind == chaoskit::MapKind::Logistic &&
      (opt.a_max > 4.0 || opt.a_min < 0.0)) {
    std::cerr << "error: the logistic map requires 0 <= A <= 4; [0,1] is not "
                 "invariant past A = 4\n";
    return kExitUsage;
  }
  const double x0 = std::isnan(opt.x0) ? chaoskit::default_seed(kind) : opt.x0;

  Run run("bifurcate", resolve_outdir(opt.outdir));
  run.set_param("map", opt.map);
  run.set_param("a_min", opt.a_min);
  run.set_param("a_max", opt.a_max);
  run.set_param("n_param", opt.n_param);
  run.set_param("transient", opt.transient);
  run.set_param("keep", opt.keep);
  run.set_param("x0", x0);

  try {
    const chaoskit::BifurcationDiagram diagram = chaoskit::bifurcation_diagram(
        kind, opt.a_min, opt.a_max, opt.n_param, x0, opt.transient, opt.keep);
    auto csv = run.open_output("bifurcation.csv");
    csv << "param,x\n";
    for (const auto& [param, x] : diagram.points) {
      csv << fmt17(param) << ',' << fmt17(x) << '\n';
    }
  } catch (const chaoskit::DivergenceError& e) {
    fail_json("Divergence", e.what(),
              {{"param", e.param()}, {"iteration", e.iteration()}});
  }
  run.write_manifest();
  return 0;
}

// -------------------------------------------------------------------- decay

struct DecayOpts {
  std::string map = "logistic";
  double param = 4.0;
  double i_lo = 0.2;
  double i_hi = 0.2 + 1e-11;
  double j_lo = 0.53;
  double j_hi = 0.54;
  std::size_t points = 10000;
  std::string seeding = "evenly";
  std::uint64_t seed = 0;
  std::size_t max_iter = 100000;
  std::size_t skip_transient = 20;
  std::size_t min_survivors = 100;
  std::size_t delay_lag = 0;  // 0 = no delay plot
  std::string outdir;
};

int run_decay(const DecayOpts& opt) {
  chaoskit::DecayConfig config;
  config.spec = {parse_map_kind(opt.map), opt.param};
  config.initial_lo = opt.i_lo;
  config.initial_hi = opt.i_hi;
  config.escape_lo = opt.j_lo;
  config.escape_hi = opt.j_hi;
  config.n_points = opt.points;
  config.seeding = (opt.seeding == "random") ? chaoskit::Seeding::UniformRandom
                                             : chaoskit::Seeding::EvenlySpaced;
  config.seed = opt.seed;
  config.max_iterations = opt.max_iter;
  if (opt.seeding != "evenly" && opt.seeding != "random") {
    std::cerr << "error: --seeding must be 'evenly' or 'random'\n";
    return kExitUsage;
  }
  try {
    chaoskit::validate_config(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Run run("decay", resolve_outdir(opt.outdir));
  run.set_seed(opt.seed);
  run.set_param("map", opt.map);
  run.set_param("param", opt.param);
  run.set_param("i_lo", opt.i_lo);
  run.set_param("i_hi", opt.i_hi);
  run.set_param("j_lo", opt.j_lo);
  run.set_param("j_hi", opt.j_hi);
  run.set_param("points", opt.points);
  run.set_param("seeding", opt.seeding);
  run.set_param("max_iter", opt.max_iter);
  run.set_param("skip_transient", opt.skip_transient);
  run.set_param("min_survivors", opt.min_survivors);
  run.set_param("delay_lag", opt.delay_lag);

  const chaoskit::SurvivalCurve curve = chaoskit::run_escape(config);
  {
    auto csv = run.open_output("survival.csv");
    csv << "iteration,survivors\n";
    for (std::size_t t = 0; t < curve.survivors.size(); ++t) {
      csv << t << ',' << curve.survivors[t] << '\n';
    }
  }

  if (opt.delay_lag > 0) {
    // Events are the distinct escape iterations, in increasing order
    // (duplicate escape times collapse to one event).
    std::set<std::size_t> distinct;
    for (std::size_t t : curve.escape_times) {
      if (t != chaoskit::kNeverEscaped) distinct.insert(t);
    }
    std::vector<double> events(distinct.begin(), distinct.end());
    try {
      const chaoskit::DelaySeries series =
          chaoskit::delay_series(events, opt.delay_lag);
      auto csv = run.open_output("delay.csv");
      csv << "dt_m,dt_m_plus_n\n";
      for (const auto& [a, b] : series.pairs) {
        csv << fmt17(a) << ',' << fmt17(b) << '\n';
      }
    } catch (const std::exception& e) {
      run.write_manifest();
      fail_json("DelaySeries", e.what());
    }
  }

  try {
    const chaoskit::DecayFit fit =
        chaoskit::fit_exponential(curve, opt.skip_transient, opt.min_survivors);
    json summary;
    summary["schema_version"] = 1;
    summary["lambda"] = fit.lambda;
    summary["half_life"] = fit.half_life;
    summary["n0"] = fit.n0;
    summary["r_squared"] = fit.r_squared;
    summary["fit_window_lo"] = fit.fit_lo;
    summary["fit_window_hi"] = fit.fit_hi;
    auto out = run.open_output("decay_fit.json");
    out << summary.dump(2) << "\n";
  } catch (const chaoskit::NoEscapesError& e) {
    run.write_manifest();
    fail_json("NoEscapes", e.what());
  } catch (const chaoskit::NoDecayError& e) {
    run.write_manifest();
    fail_json("NoDecay", e.what(), {{"lambda", e.lambda()}});
  } catch (const chaoskit::InsufficientDataError& e) {
    run.write_manifest();
    fail_json("InsufficientData", e.what(), {{"usable_points", e.usable()}});
  }

  run.write_manifest();
  return 0;
}

// ------------------------------------------------------------------- basins

struct BasinsOpts {
  int width = 600;
  int height = 600;
  std::vector<double> window = {-2.0, 2.0, -2.0, 2.0};
  unsigned threads = 1;
  chaoskit::PendulumParams params;
  std::string outdir;
};

int run_basins(const BasinsOpts& opt) {
  if (opt.window.size() != 4) {
    std::cerr << "error: --window needs x_lo x_hi y_lo y_hi\n";
    return kExitUsage;
  }
  try {
    chaoskit::validate_params(opt.params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Run run("basins", resolve_outdir(opt.outdir));
  run.set_param("width", opt.width);
  run.set_param("height", opt.height);
  run.set_param("window", opt.window);
  run.set_param("threads", opt.threads);
  run.set_param("damping", opt.params.damping);
  run.set_param("restoring", opt.params.restoring);
  run.set_param("magnet_strength", opt.params.magnet_strength);
  run.set_param("plane_offset", opt.params.plane_offset);
  run.set_param("step", opt.params.step);
  run.set_param("max_steps", opt.params.max_steps);
  run.set_param("capture_radius", opt.params.capture_radius);
  run.set_param("capture_speed", opt.params.capture_speed);

  const chaoskit::BasinImage image = chaoskit::compute_basins(
      opt.params, opt.width, opt.height, opt.window[0], opt.window[1],
      opt.window[2], opt.window[3], opt.threads);
  if (image.integration_failures > 0) {
    std::cerr << "warning: " << image.integration_failures
              << " cells failed to integrate (rendered unresolved)\n";
  }

  static const char* palette[4] = {"0 0 0", "255 0 0", "0 255 0", "0 0 255"};
  auto ppm = run.open_output("basins.ppm");
  ppm << "P3\n" << image.width << ' ' << image.height << "\n255\n";
  for (int iy = 0; iy < image.height; ++iy) {
    for (int ix = 0; ix < image.width; ++ix) {
      ppm << palette[image.at(ix, iy)] << '\n';
    }
  }
  run.write_manifest();
  return 0;
}

// --------------------------------------------------------------------- bell

struct BellOpts {
  std::string mode = "quantum";
  std::vector<double> phi = {0.0, 0.0, 0.0};
  std::size_t trials = 1000000;
  std::uint64_t seed = 12345;
  std::string strategy = "thresholds";
  std::string outdir;
};

int run_bell(const BellOpts& opt) {
  json report;
  report["schema_version"] = 1;
  report["mode"] = opt.mode;

  Run run("bell", resolve_outdir(opt.outdir));
  run.set_param("mode", opt.mode);

  if (opt.mode == "classical") {
    const auto result = chaoskit::chsh_classical_max();
    report["max"] = result.max;
    report["argmax_count"] = result.argmax.size();
  } else if (opt.mode == "quantum") {
    const auto result = chaoskit::chsh_quantum();
    report["e_qs"] = result.e_qs;
    report["e_rs"] = result.e_rs;
    report["e_rt"] = result.e_rt;
    report["e_qt"] = result.e_qt;
    report["s_value"] = result.s_value;
  } else if (opt.mode == "lhv") {
    chaoskit::LhvStrategy strategy;
    if (opt.strategy == "always-plus") {
      strategy = chaoskit::LhvStrategy::AlwaysPlus;
    } else if (opt.strategy == "shared-coin") {
      strategy = chaoskit::LhvStrategy::SharedCoin;
    } else if (opt.strategy == "thresholds") {
      strategy = chaoskit::LhvStrategy::Thresholds;
    } else {
      std::cerr << "error: unknown --strategy '" << opt.strategy << "'\n";
      return kExitUsage;
    }
    run.set_seed(opt.seed);
    run.set_param("trials", opt.trials);
    run.set_param("strategy", opt.strategy);
    const auto est = chaoskit::lhv_simulate(opt.trials, opt.seed, strategy);
    report["e_qs"] = est.e_qs;
    report["e_rs"] = est.e_rs;
    report["e_rt"] = est.e_rt;
    report["e_qt"] = est.e_qt;
    report["s_value"] = est.s_value;
    report["std_error"] = est.std_error;
  } else if (opt.mode == "ghz") {
    if (opt.phi.size() != 3) {
      std::cerr << "error: --phi needs three angles\n";
      return kExitUsage;
    }
    run.set_param("phi", opt.phi);
    const auto result =
        chaoskit::ghz_correlations({opt.phi[0], opt.phi[1], opt.phi[2]});
    report["expectation"] = result.expectation;
    static const char* names[8] = {"p_ppp", "p_ppm", "p_pmp", "p_pmm",
                                   "p_mpp", "p_mpm", "p_mmp", "p_mmm"};
    for (int i = 0; i < 8; ++i) report[names[i]] = result.p_outcome[i];
  } else if (opt.mode == "ghz-contradiction") {
    const auto result = chaoskit::ghz_contradiction();
    report["satisfying_all_four"] = result.satisfying_all_four();
    report["satisfying_first_three"] = result.satisfying_first_three();
    report["subset_counts"] = result.subset_counts;
  } else {
    std::cerr << "error: unknown --mode '" << opt.mode << "'\n";
    return kExitUsage;
  }

  auto out = run.open_output("bell_" + opt.mode + ".json");
  out << report.dump(2) << "\n";
  run.write_manifest();
  return 0;
}

// --------------------------------------------------------------- feigenbaum

struct FeigenbaumOpts {
  std::string map = "logistic";
  int levels = 7;
  std::string outdir;
};

int run_feigenbaum(const FeigenbaumOpts& opt) {
  const chaoskit::MapKind kind = parse_map_kind(opt.map);
  if (kind == chaoskit::MapKind::Quadratic) {
    std::cerr << "error: feigenbaum supports --map logistic or sine\n";
    return kExitUsage;
  }
  Run run("feigenbaum", resolve_outdir(opt.outdir));
  run.set_param("map", opt.map);
  run.set_param("levels", opt.levels);
  try {
    const auto points = chaoskit::find_bifurcation_points(kind, opt.levels);
    const auto est = chaoskit::estimate_feigenbaum(points);
    json report;
    report["schema_version"] = 1;
    report["map"] = opt.map;
    report["levels"] = opt.levels;
    report["points"] = points.values;
    report["ratios"] = est.ratios;
    report["final"] = est.final;
    auto out = run.open_output("feigenbaum.json");
    out << report.dump(2) << "\n";
  } catch (const chaoskit::BracketFailure& e) {
    run.write_manifest();
    fail_json("BracketFailure", e.what(), {{"level_reached", e.level_reached()}});
  }
  run.write_manifest();
  return 0;
}

// ------------------------------------------------------------------ tsallis

struct TsallisOpts {
  std::vector<double> p;
  std::vector<double> p2;
  double q = 1.0;
  double k = 1.0;
  std::string outdir;
};

int run_tsallis(const TsallisOpts& opt) {
  Run run("tsallis", resolve_outdir(opt.outdir));
  run.set_param("p", opt.p);
  run.set_param("p2", opt.p2);
  run.set_param("q", opt.q);
  run.set_param("k", opt.k);

  json report;
  report["schema_version"] = 1;
  report["q"] = opt.q;
  report["k"] = opt.k;
  try {
    const chaoskit::Distribution a{opt.p};
    const auto res = chaoskit::tsallis_entropy(a, opt.q, opt.k);
    report["value"] = res.value;
    report["outside_tested_regime"] = res.outside_tested_regime;
    if (!opt.p2.empty()) {
      const chaoskit::Distribution b{opt.p2};
      report["value_b"] = chaoskit::tsallis_entropy(b, opt.q, opt.k).value;
      const auto check = chaoskit::additivity_check(a, b, opt.q, opt.k);
      report["additivity_lhs"] = check.lhs;
      report["additivity_rhs"] = check.rhs;
      report["additivity_residual"] = check.residual;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  auto out = run.open_output("tsallis.json");
  out << report.dump(2) << "\n";
  run.write_manifest();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaotic-map dynamics, escape-time decay, basin rasters, "
               "CHSH/GHZ correlations and generalized entropy"};
  app.require_subcommand(1);

  BifurcateOpts bif;
  auto* cmd_bif = app.add_subcommand("bifurcate", "bifurcation diagram CSV");
  cmd_bif->add_option("--map", bif.map, "logistic|sine|quadratic");
  cmd_bif->add_option("--a-min", bif.a_min, "low end of the parameter sweep");
  cmd_bif->add_option("--a-max", bif.a_max, "high end of the parameter sweep");
  cmd_bif->add_option("--n-param", bif.n_param, "number of parameter columns");
  cmd_bif->add_option("--transient", bif.transient, "discarded iterates");
  cmd_bif->add_option("--keep", bif.keep, "recorded iterates per column");
  cmd_bif->add_option("--x0", bif.x0, "seed (default: the map's critical point)");
  cmd_bif->add_option("--outdir", bif.outdir, "output directory");

  DecayOpts dec;
  auto* cmd_dec = app.add_subcommand("decay", "prisoner-escapee decay experiment");
  cmd_dec->add_option("--map", dec.map, "logistic|sine|quadratic");
  cmd_dec->add_option("--param", dec.param, "map parameter");
  cmd_dec->add_option("--i-lo", dec.i_lo, "initial interval low end");
  cmd_dec->add_option("--i-hi", dec.i_hi, "initial interval high end");
  cmd_dec->add_option("--j-lo", dec.j_lo, "escape interval low end");
  cmd_dec->add_option("--j-hi", dec.j_hi, "escape interval high end");
  cmd_dec->add_option("--points", dec.points, "ensemble size");
  cmd_dec->add_option("--seeding", dec.seeding, "evenly|random");
  cmd_dec->add_option("--seed", dec.seed, "PRNG seed for random seeding");
  cmd_dec->add_option("--max-iter", dec.max_iter, "iteration cap per seed");
  cmd_dec->add_option("--skip-transient", dec.skip_transient,
                      "iterations excluded from the fit");
  cmd_dec->add_option("--min-survivors", dec.min_survivors,
                      "fit floor on survivor count");
  cmd_dec->add_option("--delay-lag", dec.delay_lag,
                      "emit a delay plot with this interval lag");
  cmd_dec->add_option("--outdir", dec.outdir, "output directory");

  BasinsOpts bas;
  auto* cmd_bas = app.add_subcommand("basins", "magnetic-pendulum basin raster");
  cmd_bas->add_option("--width", bas.width, "raster width in cells");
  cmd_bas->add_option("--height", bas.height, "raster height in cells");
  cmd_bas->add_option("--window", bas.window, "x_lo x_hi y_lo y_hi")
      ->expected(4);
  cmd_bas->add_option("--threads", bas.threads, "worker count (output-invariant)");
  cmd_bas->add_option("--damping", bas.params.damping, "velocity damping");
  cmd_bas->add_option("--restoring", bas.params.restoring, "spring constant");
  cmd_bas->add_option("--strength", bas.params.magnet_strength, "magnet strength");
  cmd_bas->add_option("--offset", bas.params.plane_offset,
                      "vertical plane separation");
  cmd_bas->add_option("--step", bas.params.step, "integrator step");
  cmd_bas->add_option("--max-steps", bas.params.max_steps, "step cap per cell");
  cmd_bas->add_option("--capture-radius", bas.params.capture_radius,
                      "capture distance");
  cmd_bas->add_option("--capture-speed", bas.params.capture_speed,
                      "capture speed bound");
  cmd_bas->add_option("--outdir", bas.outdir, "output directory");

  BellOpts bell;
  auto* cmd_bell = app.add_subcommand("bell", "CHSH and GHZ correlation reports");
  cmd_bell->add_option("--mode", bell.mode,
                       "classical|quantum|lhv|ghz|ghz-contradiction");
  cmd_bell->add_option("--phi", bell.phi, "GHZ phases (three angles)")
      ->expected(3);
  cmd_bell->add_option("--trials", bell.trials, "LHV Monte Carlo trials");
  cmd_bell->add_option("--seed", bell.seed, "LHV PRNG seed");
  cmd_bell->add_option("--strategy", bell.strategy,
                       "always-plus|shared-coin|thresholds");
  cmd_bell->add_option("--outdir", bell.outdir, "output directory");

  FeigenbaumOpts feig;
  auto* cmd_feig = app.add_subcommand("feigenbaum", "period-doubling ratios");
  cmd_feig->add_option("--map", feig.map, "logistic|sine");
  cmd_feig->add_option("--levels", feig.levels, "doubling levels (3..8)");
  cmd_feig->add_option("--outdir", feig.outdir, "output directory");

  TsallisOpts tsa;
  auto* cmd_tsa = app.add_subcommand("tsallis", "generalized entropy report");
  cmd_tsa->add_option("--p", tsa.p, "probabilities of system A")
      ->expected(-1)
      ->required();
  cmd_tsa->add_option("--p2", tsa.p2, "probabilities of system B")->expected(-1);
  cmd_tsa->add_option("--q", tsa.q, "entropic index");
  cmd_tsa->add_option("--k", tsa.k, "entropy unit");
  cmd_tsa->add_option("--outdir", tsa.outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_bif->parsed()) return run_bifurcate(bif);
    if (cmd_dec->parsed()) return run_decay(dec);
    if (cmd_bas->parsed()) return run_basins(bas);
    if (cmd_bell->parsed()) return run_bell(bell);
    if (cmd_feig->parsed()) return run_feigenbaum(feig);
    if (cmd_tsa->parsed()) return run_tsallis(tsa);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    fail_json("Unhandled", e.what());
  }
  return kExitUsage;
}
