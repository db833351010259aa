#include "danet/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "danet/csvio.hpp"
#include "danet/errors.hpp"
#include "danet/estimator.hpp"
#include "danet/exact.hpp"
#include "danet/graph.hpp"
#include "danet/model.hpp"
#include "danet/numeric.hpp"
#include "danet/parallel.hpp"
#include "danet/pmcmc.hpp"
#include "danet/posterior.hpp"
#include "danet/prior.hpp"
#include "danet/smc.hpp"
#include "danet/stats.hpp"
#include "danet/version.hpp"

namespace danet {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct RunContext {
  Json& config;
  fs::path out;
  std::uint64_t seed;
  unsigned workers;
};

/// Reads a key, materializing the default into the config so the manifest
/// echo is complete and reruns reproduce defaulted values explicitly.
template <class T>
T take(Json& j, const char* key, const T& def) {
  if (!j.contains(key) || j.at(key).is_null()) j[key] = def;
  return j.at(key).template get<T>();
}

Json& child(Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) j[key] = Json::object();
  return j.at(key);
}

Theta theta_from(Json& j) {
  Theta t;
  t.pi = take(j, "pi", 1.0);
  t.p = take(j, "p", 0.5);
  t.q = take(j, "q", 0.5);
  t.r = take(j, "r", 0.0);
  t.validate();
  return t;
}

int component_index(const std::string& name) {
  for (int i = 0; i < 4; ++i)
    if (name == Theta::kNames[i]) return i;
  throw std::invalid_argument("unknown theta component '" + name + "'");
}

Proposal::Kind proposal_from(const std::string& s) {
  if (s == "optimal") return Proposal::Kind::optimal_conditional;
  if (s == "uniform") return Proposal::Kind::uniform_removable;
  throw std::invalid_argument("unknown proposal '" + s + "' (want optimal or uniform)");
}

ResampleScheme scheme_from(const std::string& s) {
  if (s == "stratified") return ResampleScheme::stratified;
  if (s == "multinomial") return ResampleScheme::multinomial;
  throw std::invalid_argument("unknown scheme '" + s + "' (want stratified or multinomial)");
}

EstimatorSpec estimator_from(Json& j) {
  EstimatorSpec spec;
  spec.method = parse_method(take<std::string>(j, "method", "smc"));
  spec.particles = take<std::uint64_t>(j, "particles", 1000);
  spec.proposal = proposal_from(take<std::string>(j, "proposal", "optimal"));
  spec.scheme = scheme_from(take<std::string>(j, "scheme", "stratified"));
  spec.ess_threshold = take(j, "ess_threshold", 0.5);
  if (!j.contains("driving")) j["driving"] = nullptr;
  if (!j.at("driving").is_null()) spec.driving = theta_from(j.at("driving"));
  spec.switch_size = take<std::uint32_t>(j, "switch_size", 6u);
  spec.dpf_particles = take<std::uint64_t>(j, "dpf_particles", 1000);
  spec.state_cap = take<std::uint64_t>(j, "state_cap", 32);
  return spec;
}

PriorSpec prior_from(Json& j) {
  PriorSpec prior;
  for (int i = 0; i < 4; ++i) {
    const char* name = Theta::kNames[i];
    if (!j.contains(name))
      throw std::invalid_argument(std::string("prior is missing component '") + name + "'");
    prior.comp[i] = ComponentPrior::parse(j.at(name).get<std::string>());
  }
  prior.validate();
  return prior;
}

/// The graph under study: either a file or an inline simulation. A simulated
/// graph is saved next to the results for the record.
Graph resolve_graph(RunContext& ctx) {
  Json& j = ctx.config;
  bool has_file = j.contains("graph") && !j.at("graph").is_null();
  bool has_sim = j.contains("simulate") && !j.at("simulate").is_null();
  if (has_file == has_sim)
    throw std::invalid_argument("provide exactly one of \"graph\" and \"simulate\"");
  if (has_file) return load_graph(j.at("graph").get<std::string>());
  Json& sim = child(j, "simulate");
  auto size = take<std::uint32_t>(sim, "size", 8u);
  Theta t = theta_from(child(sim, "theta"));
  SimulationResult res = simulate_da(Graph::single(), t, size, ctx.seed);
  save_graph((ctx.out / "graph.graph").string(), res.graph);
  return res.graph;
}

std::string indexed_name(const char* fmt, unsigned long long a, unsigned long long b = 0) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

void run_simulate(RunContext& ctx) {
  Json& j = ctx.config;
  auto size = take<std::uint32_t>(j, "size", 10u);
  auto count = take<std::uint64_t>(j, "count", std::uint64_t{1});
  Theta theta = theta_from(child(j, "theta"));
  Graph seed_graph = Graph::single();
  if (!j.contains("seed_graph")) j["seed_graph"] = nullptr;
  if (!j.at("seed_graph").is_null())
    seed_graph = load_graph(j.at("seed_graph").get<std::string>());

  fs::create_directories(ctx.out / "graphs");
  CsvWriter summary((ctx.out / "summary.csv").string(),
                    {"index", "file", "vertices", "edges"});
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t s = RngStream::derive(ctx.seed, StreamTag::repetition, i).next_u64();
    SimulationResult res = simulate_da(seed_graph, theta, size, s);
    std::string name = indexed_name("graphs/graph_%03llu.graph", i);
    save_graph((ctx.out / name).string(), res.graph);
    summary.row(i, name, res.graph.active_count(), res.graph.edge_count());
  }
}

void run_likelihood(RunContext& ctx) {
  Json& j = ctx.config;
  Graph g = resolve_graph(ctx);
  Theta base = theta_from(child(j, "theta"));
  EstimatorSpec spec = estimator_from(child(j, "estimator"));
  auto reps = take<std::uint64_t>(j, "repetitions", std::uint64_t{1});
  bool reweight = take(j, "reweight", false);
  bool traces = take(j, "traces", false);
  bool exact_col = take(j, "exact", false);
  if (reps == 0) throw std::invalid_argument("repetitions must be positive");

  std::vector<Theta> grid;
  if (!j.contains("grid")) j["grid"] = nullptr;
  if (!j.at("grid").is_null()) {
    Json& gj = j.at("grid");
    int comp = component_index(take<std::string>(gj, "component", "p"));
    double from = take(gj, "from", 0.1);
    double to = take(gj, "to", 0.9);
    auto points = take<std::uint64_t>(gj, "points", std::uint64_t{9});
    if (points == 0) throw std::invalid_argument("grid needs at least one point");
    for (std::uint64_t i = 0; i < points; ++i) {
      double x = points == 1
                     ? from
                     : from + (to - from) * double(i) / double(points - 1);
      Theta t = base;
      t.set_component(comp, x);
      t.validate();
      grid.push_back(t);
    }
  } else {
    grid.push_back(base);
  }

  std::vector<double> exact_logs;
  if (exact_col) {
    exact_logs.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      exact_logs[i] = exact_likelihood(g, grid[i]).log_likelihood;
  }

  std::vector<LikelihoodEstimate> results(grid.size() * reps);
  if (reweight) {
    if (spec.method != EstimatorSpec::Method::importance)
      throw std::invalid_argument("reweight needs the importance method");
    if (!spec.driving)
      throw std::invalid_argument("reweight needs explicit driving parameters");
    parallel_for(reps, ctx.workers, [&](std::size_t r) {
      std::uint64_t s = RngStream::derive(ctx.seed, StreamTag::repetition, r).next_u64();
      std::vector<double> lv = importance_reweight_curve(g, grid, spec.smc_options(), s);
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        LikelihoodEstimate& e = results[gi * reps + r];
        e.log_value = lv[gi];
        e.method = "importance-reweight";
        e.collapsed = lv[gi] == kNegInf;
      }
    });
  } else {
    parallel_for(grid.size() * reps, ctx.workers, [&](std::size_t u) {
      std::size_t gi = u / reps, r = u % reps;
      std::uint64_t s = RngStream::derive(ctx.seed, StreamTag::repetition, r, gi).next_u64();
      results[gi * reps + r] = estimate_likelihood(g, grid[gi], spec, s);
    });
  }

  CsvWriter est((ctx.out / "estimates.csv").string(),
                {"grid_index", "theta_pi", "theta_p", "theta_q", "theta_r", "rep",
                 "log_estimate", "estimate", "collapsed", "resamples"});
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const Theta& t = grid[gi];
    for (std::uint64_t r = 0; r < reps; ++r) {
      const LikelihoodEstimate& e = results[gi * reps + r];
      est.row(gi, t.pi, t.p, t.q, t.r, r, e.log_value, e.value(), e.collapsed,
              e.resample_times.size());
    }
  }

  std::optional<CsvWriter> sum;
  if (exact_col) {
    sum.emplace((ctx.out / "summary.csv").string(),
                std::initializer_list<std::string_view>{
                    "grid_index", "theta_pi", "theta_p", "theta_q", "theta_r",
                    "mean_estimate", "variance", "se", "exact_log_like"});
  } else {
    sum.emplace((ctx.out / "summary.csv").string(),
                std::initializer_list<std::string_view>{
                    "grid_index", "theta_pi", "theta_p", "theta_q", "theta_r",
                    "mean_estimate", "variance", "se"});
  }
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const Theta& t = grid[gi];
    std::vector<double> vals(reps);
    for (std::uint64_t r = 0; r < reps; ++r) vals[r] = results[gi * reps + r].value();
    double mean = sample_mean(vals);
    double var = reps >= 2 ? sample_variance(vals) : std::nan("");
    double se = reps >= 2 ? standard_error(vals) : std::nan("");
    if (exact_col)
      sum->row(gi, t.pi, t.p, t.q, t.r, mean, var, se, exact_logs[gi]);
    else
      sum->row(gi, t.pi, t.p, t.q, t.r, mean, var, se);
  }

  if (traces && !reweight) {
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      for (std::uint64_t r = 0; r < reps; ++r) {
        std::string name = indexed_name("trace_g%03llu_r%03llu.csv", gi, r);
        CsvWriter tr((ctx.out / name).string(),
                     {"step", "ess", "unique", "resampled", "log_increment"});
        for (const StepDiag& d : results[gi * reps + r].trace)
          tr.row(d.step, d.ess, d.unique, d.resampled, d.log_increment);
      }
    }
  }
}

void run_relvar(RunContext& ctx) {
  Json& j = ctx.config;
  auto sizes = take<std::vector<std::uint32_t>>(j, "sizes",
                                                {5, 6, 7, 8, 9, 10, 11, 12, 13});
  Theta theta = theta_from(child(j, "theta"));
  Theta driving = theta;
  if (j.contains("driving") && !j.at("driving").is_null()) {
    driving = theta_from(j.at("driving"));
  } else {
    j["driving"] = j.at("theta");
  }
  auto particles = take<std::uint64_t>(j, "particles", std::uint64_t{1000});
  auto reps = take<std::uint64_t>(j, "repetitions", std::uint64_t{30});
  double tau = take(j, "ess_threshold", 0.5);
  if (reps < 2) throw std::invalid_argument("relative variance needs at least 2 repetitions");

  EstimatorSpec is_spec;
  is_spec.method = EstimatorSpec::Method::importance;
  is_spec.particles = particles;
  is_spec.driving = driving;
  EstimatorSpec stra_spec = is_spec;
  stra_spec.method = EstimatorSpec::Method::smc;
  stra_spec.ess_threshold = tau;
  stra_spec.scheme = ResampleScheme::stratified;
  EstimatorSpec dpf_spec;
  dpf_spec.method = EstimatorSpec::Method::dpf;
  dpf_spec.particles = particles;
  const EstimatorSpec* specs[3] = {&is_spec, &stra_spec, &dpf_spec};
  const char* method_names[3] = {"is", "stra", "dpf"};

  fs::create_directories(ctx.out / "graphs");
  std::vector<Graph> graphs;
  std::vector<double> exact_logs;
  for (std::uint32_t size : sizes) {
    std::uint64_t s = RngStream::derive(ctx.seed, StreamTag::simulate, size).next_u64();
    SimulationResult sim = simulate_da(Graph::single(), theta, size, s);
    save_graph((ctx.out / indexed_name("graphs/size_%02llu.graph", size)).string(),
               sim.graph);
    graphs.push_back(sim.graph);
    exact_logs.push_back(exact_likelihood(sim.graph, theta).log_likelihood);
  }

  std::vector<double> logs(sizes.size() * reps * 3);
  parallel_for(logs.size(), ctx.workers, [&](std::size_t u) {
    std::size_t si = u / (reps * 3);
    std::size_t r = (u % (reps * 3)) / 3;
    std::size_t m = u % 3;
    std::uint64_t s =
        RngStream::derive(ctx.seed, StreamTag::repetition, r, sizes[si]).next_u64();
    logs[u] = estimate_likelihood(graphs[si], theta, *specs[m], s).log_value;
  });

  CsvWriter est((ctx.out / "estimates.csv").string(),
                {"size", "method", "rep", "log_estimate", "estimate"});
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (std::uint64_t r = 0; r < reps; ++r) {
      for (std::size_t m = 0; m < 3; ++m) {
        double lv = logs[(si * reps + r) * 3 + m];
        est.row(sizes[si], method_names[m], r, lv, std::exp(lv));
      }
    }
  }

  CsvWriter rv((ctx.out / "relvar.csv").string(),
               {"size", "exact_log_like", "is", "stra", "dpf"});
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    double relvar[3];
    for (std::size_t m = 0; m < 3; ++m) {
      // Variance of estimates normalized by the exact value; ratios keep the
      // arithmetic well scaled however small the likelihood gets.
      std::vector<double> ratio(reps);
      for (std::uint64_t r = 0; r < reps; ++r)
        ratio[r] = std::exp(logs[(si * reps + r) * 3 + m] - exact_logs[si]);
      relvar[m] = sample_variance(ratio);
    }
    rv.row(sizes[si], exact_logs[si], relvar[0], relvar[1], relvar[2]);
  }
}

void run_pmcmc(RunContext& ctx) {
  Json& j = ctx.config;
  Graph g = resolve_graph(ctx);
  PriorSpec prior = prior_from(child(j, "prior"));
  ChainConfig cc;
  cc.estimator = estimator_from(child(j, "estimator"));
  cc.iterations = take<std::uint64_t>(j, "iterations", std::uint64_t{5000});
  cc.burn_in = take<std::uint64_t>(j, "burn_in", std::uint64_t{500});
  cc.thinning = take<std::uint64_t>(j, "thinning", std::uint64_t{5});
  cc.step_sigma = take(j, "step_sigma", 0.5);
  cc.seed = ctx.seed;
  auto acf_lags = take<std::uint64_t>(j, "acf_lags", std::uint64_t{50});
  auto hist_bins = take<std::uint64_t>(j, "hist_bins", std::uint64_t{40});

  ChainTrace trace = run_chain(g, prior, cc);
  std::vector<std::size_t> kept = kept_indices(trace.samples.size(), cc.burn_in, cc.thinning);

  CsvWriter chain((ctx.out / "chain.csv").string(),
                  {"iter", "theta_pi", "theta_p", "theta_q", "theta_r", "log_like",
                   "accepted"});
  for (std::size_t i : kept) {
    const ChainSample& s = trace.samples[i];
    chain.row(i, s.theta.pi, s.theta.p, s.theta.q, s.theta.r, s.log_like, s.accepted);
  }

  // Diagnostics track the first free component.
  int comp = -1;
  for (int i = 0; i < 4; ++i)
    if (prior.comp[i].free()) { comp = i; break; }
  std::vector<double> series(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    series[i] = trace.samples[kept[i]].theta.component(comp);

  {
    CsvWriter acf((ctx.out / "acf.csv").string(), {"component", "lag", "acf"});
    std::size_t lags = std::min<std::size_t>(acf_lags, series.size() > 1 ? series.size() - 1 : 0);
    try {
      std::vector<double> a = autocorrelation(series, lags);
      for (std::size_t k = 0; k < a.size(); ++k) acf.row(Theta::kNames[comp], k, a[k]);
    } catch (const std::invalid_argument&) {
      acf.row(Theta::kNames[comp], 0, 1.0);  // constant or too-short series
    }
  }

  {
    CsvWriter hist((ctx.out / "histogram.csv").string(),
                   {"component", "bin_lo", "bin_hi", "count"});
    std::vector<std::uint64_t> counts = histogram(series, 0.0, 1.0, hist_bins);
    for (std::size_t b = 0; b < counts.size(); ++b) {
      hist.row(Theta::kNames[comp], double(b) / double(hist_bins),
               double(b + 1) / double(hist_bins), counts[b]);
    }
  }

  CsvWriter summary((ctx.out / "summary.csv").string(),
                    {"component", "kept", "acceptance_rate", "proposals",
                     "estimator_calls", "init_attempts", "mean", "sd"});
  double mean = sample_mean(series);
  double sd = series.size() >= 2 ? std::sqrt(sample_variance(series)) : std::nan("");
  summary.row(Theta::kNames[comp], kept.size(), trace.acceptance_rate, trace.proposals,
              trace.estimator_calls, trace.init_attempts, mean, sd);
}

void run_posterior_exact(RunContext& ctx) {
  Json& j = ctx.config;
  Graph g = resolve_graph(ctx);
  PriorSpec prior = prior_from(child(j, "prior"));
  auto points = take<std::uint64_t>(j, "grid_points", std::uint64_t{201});
  auto draws = take<std::uint64_t>(j, "rejection_draws", std::uint64_t{0});
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");

  std::vector<double> grid(points);
  for (std::uint64_t i = 0; i < points; ++i)
    grid[i] = (double(i) + 0.5) / double(points);
  PosteriorTable tab = exact_posterior_grid(g, prior, grid);

  CsvWriter post((ctx.out / "posterior.csv").string(), {"theta", "log_post", "mass"});
  for (std::size_t i = 0; i < tab.grid.size(); ++i)
    post.row(tab.grid[i], tab.log_post[i], tab.mass[i]);

  double acceptance = std::nan(""), envelope = std::nan("");
  if (draws > 0) {
    RejectionResult rr = rejection_sample_posterior(g, prior, draws, ctx.seed, ctx.workers);
    acceptance = rr.acceptance_rate;
    envelope = rr.log_envelope;
    CsvWriter dr((ctx.out / "draws.csv").string(), {"index", "value"});
    for (std::size_t i = 0; i < rr.draws.size(); ++i) dr.row(i, rr.draws[i]);
  }

  CsvWriter summary((ctx.out / "summary.csv").string(),
                    {"component", "grid_points", "mode", "log_normalizer", "draws",
                     "acceptance_rate", "log_envelope"});
  summary.row(Theta::kNames[tab.component], points, tab.mode(), tab.log_normalizer, draws,
              acceptance, envelope);
}

}  // namespace

int run_experiment(const std::string& command, const CommonOverrides& cli) {
  auto t0 = std::chrono::steady_clock::now();
  Json config = Json::object();
  std::string error;
  int code = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  // Output directory fallback known before config parsing so a manifest can
  // be written even when the config itself is broken.
  const char* env_out = std::getenv("DANET_OUTPUT_DIR");
  fs::path out = cli.out ? fs::path(*cli.out) : fs::path(env_out ? env_out : "out");

  try {
    if (cli.config_path) {
      std::ifstream in(*cli.config_path);
      if (!in) throw IoError("cannot open config '" + *cli.config_path + "'");
      config = Json::parse(in);
      if (config.is_object() && config.contains("config")) {
        // A manifest; unwrap its echoed config.
        if (config.contains("command") &&
            config.at("command").get<std::string>() != command) {
          throw std::invalid_argument("config is a manifest of command '" +
                                      config.at("command").get<std::string>() +
                                      "', not '" + command + "'");
        }
        Json inner = config.at("config");
        config = std::move(inner);
      }
    }
    if (!config.is_object())
      throw std::invalid_argument("config root must be a JSON object");

    if (cli.seed) config["seed"] = *cli.seed;
    seed = take<std::uint64_t>(config, "seed", std::uint64_t{1});
    if (cli.workers) config["workers"] = *cli.workers;
    workers = take<unsigned>(config, "workers", 1u);
    if (cli.out) config["out"] = *cli.out;
    std::string out_str;
    if (config.contains("out") && !config.at("out").is_null()) {
      out_str = config.at("out").get<std::string>();
    } else {
      out_str = env_out ? env_out : "out";
      config["out"] = out_str;
    }
    out = out_str;
    fs::create_directories(out);

    RunContext ctx{config, out, seed, workers};
    if (command == "simulate") {
      run_simulate(ctx);
    } else if (command == "likelihood") {
      run_likelihood(ctx);
    } else if (command == "relvar") {
      run_relvar(ctx);
    } else if (command == "pmcmc") {
      run_pmcmc(ctx);
    } else if (command == "posterior-exact") {
      run_posterior_exact(ctx);
    } else {
      throw std::invalid_argument("unknown command '" + command + "'");
    }
  } catch (const CapacityError& e) {
    error = e.what();
    code = 3;
  } catch (const EstimatorCollapse& e) {
    error = e.what();
    code = 4;
  } catch (const InitializationError& e) {
    error = e.what();
    code = 4;
  } catch (const DegeneratePosterior& e) {
    error = e.what();
    code = 4;
  } catch (const ParseError& e) {
    error = e.what();
    code = 2;
  } catch (const IoError& e) {
    error = e.what();
    code = 2;
  } catch (const Json::exception& e) {
    error = e.what();
    code = 2;
  } catch (const std::invalid_argument& e) {
    error = e.what();
    code = 2;
  } catch (const std::exception& e) {
    error = e.what();
    code = 4;
  }

  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  try {
    fs::create_directories(out);
    Json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["seed"] = seed;
    manifest["workers"] = workers;
    manifest["wall_seconds"] = wall;
    if (!error.empty()) manifest["error"] = error;
    manifest["config"] = config;
    std::ofstream mout(out / "manifest.json", std::ios::binary);
    mout << manifest.dump(2) << "\n";
    CsvWriter timing((out / "timing.csv").string(), {"phase", "seconds"});
    timing.row("total", wall);
  } catch (...) {
    // The manifest is best effort; the run's own outcome wins.
  }

  if (!error.empty()) std::cerr << "error: " << error << "\n";
  return code;
}

}  // namespace danet
