#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "rlm/bounds.hpp"
#include "rlm/error.hpp"
#include "rlm/generators.hpp"
#include "rlm/io.hpp"
#include "rlm/measure.hpp"
#include "rlm/observables.hpp"
#include "rlm/oracle.hpp"
#include "rlm/serialize.hpp"
#include "rlm/sparsity.hpp"
#include "rlm/surgery.hpp"

namespace rlm::cli {

namespace {

/// Writes `text` to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text, RunManifest& manifest) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
  manifest.add_output(path);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void add_threads(CLI::App* app, unsigned& threads, std::size_t& replicas) {
  app->add_option("--threads", threads, "Worker threads; results do not depend on it")
      ->check(CLI::Range(1u, 1024u));
  app->add_option("--replicas", replicas, "Independent sample streams merged in order")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string ensemble;
  std::size_t n = 0;
  std::size_t d = 0;
  double lambda = 0.0;
  std::string degrees;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 1'000'000'000;
  std::string out;
};

int run_gen(const GenArgs& a, RunManifest& m) {
  m.set_seed(a.seed);
  Graph g;
  if (a.ensemble == "er") {
    g = gen_erdos_renyi(a.n, a.lambda, a.seed);
  } else if (a.ensemble == "rrg") {
    g = gen_random_regular(a.n, a.d, a.seed, a.max_attempts);
  } else {
    if (a.degrees.empty()) throw InvalidArgument("cm needs --degrees FILE");
    const auto degrees = read_degrees(a.degrees);
    const auto r = condition_simple(degrees, a.seed, a.max_attempts);
    m.extra()["attempts"] = r.attempts;
    g = r.graph;
  }
  std::ostringstream text;
  write_graph(text, g);
  emit(a.out, text.str(), m);
  m.extra()["n"] = g.num_vertices();
  m.extra()["edges"] = g.num_edges();
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string graph;
  std::string marks;
  double t = 1.0;
  double u = 0.5;
  std::size_t configs = 1000;
  std::size_t times = 16;
  std::size_t triples = 3;
  std::uint64_t seed = 0;
  std::string out;
};

struct VerifyTally {
  std::size_t configs = 0;
  std::size_t triples = 0;
  std::size_t surgery_failures = 0;
  std::size_t pointwise_checks = 0;
  std::size_t pointwise_failures = 0;
  std::size_t integrated_checks = 0;
  std::size_t integrated_failures = 0;
  double integrated_max_error = 0.0;

  void check(const Graph& g, const MarkConfig& marks, Rng& rng, const VerifyArgs& a) {
    const LoopSet loops = trace_loops(g, marks);
    ++configs;
    if (g.num_edges() > 0) {
      for (std::size_t k = 0; k < a.triples; ++k) {
        const auto e = static_cast<EdgeId>(rng() % g.num_edges());
        const double s = sample_regular_time(marks, rng);
        ++triples;
        if (!verify(g, marks, loops, e, s)) ++surgery_failures;
      }
    }
    for (std::size_t k = 0; k < a.times; ++k) {
      ++pointwise_checks;
      if (!pointwise_slice_check(g, marks, loops, sample_regular_time(marks, rng))) {
        ++pointwise_failures;
      }
    }
    const double err = std::abs(insertion_volumes(g, marks, loops).total() -
                                integrated_slice_value(g, marks, loops));
    ++integrated_checks;
    integrated_max_error = std::max(integrated_max_error, err);
    if (!(err <= 1e-10)) ++integrated_failures;
  }

  bool passed() const {
    return surgery_failures == 0 && pointwise_failures == 0 && integrated_failures == 0;
  }
};

int run_verify(const VerifyArgs& a, RunManifest& m) {
  m.set_seed(a.seed);
  const Graph g = read_graph(a.graph);
  VerifyTally tally;
  if (!a.marks.empty()) {
    const MarkFile f = read_marks(a.marks, g.num_edges());
    Rng rng = make_rng(a.seed);
    tally.check(g, f.marks, rng, a);
  } else {
    for (std::size_t i = 0; i < a.configs; ++i) {
      Rng rng = make_rng(a.seed, i);
      tally.check(g, sample_marks(g, a.t, a.u, rng), rng, a);
    }
  }
  const nlohmann::json report = {
      {"configs", tally.configs},
      {"surgery", {{"triples", tally.triples}, {"failures", tally.surgery_failures}}},
      {"pointwise_slice", {{"checks", tally.pointwise_checks}, {"failures", tally.pointwise_failures}}},
      {"integrated_slice",
       {{"checks", tally.integrated_checks},
        {"failures", tally.integrated_failures},
        {"max_abs_error", tally.integrated_max_error},
        {"tolerance", 1e-10}}},
      {"passed", tally.passed()},
  };
  emit(a.out, json_text(report), m);
  m.extra()["passed"] = tally.passed();
  return tally.passed() ? kOk : kVerificationFailure;
}

// ---------------------------------------------------------------- estimate / sweep

struct EstimateArgs {
  std::string graph;
  double theta = 1.0;
  std::vector<double> t;
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t points = 11;
  double u = 0.5;
  double eta = 0.5;
  std::string estimator = "importance";
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t replicas = 8;
  std::size_t burn_in = 0;
  std::size_t thinning = 0;
  std::string out;
  std::string json;
};

int run_estimate(const EstimateArgs& a, const std::vector<double>& grid, RunManifest& m) {
  m.set_seed(a.seed);
  const Graph g = read_graph(a.graph);
  const EstimatorKind kind = parse_estimator(a.estimator);
  if (kind == EstimatorKind::Direct && a.theta != 1.0) {
    throw InvalidArgument("--estimator direct samples the unweighted law; it needs --theta 1");
  }
  McmcOptions mcmc;
  mcmc.burn_in_steps = a.burn_in;
  mcmc.thinning = a.thinning;
  const std::vector<Functional> fs{macroscopic_indicator(a.eta), drift_functional(a.theta, a.u),
                                   max_support_fraction()};

  std::ostringstream csv;
  csv << "t,Zhat,se_Z,prob_A,se_prob,drift,se_drift,max_support_frac_mean\n";
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    SamplingOptions o;
    o.samples = a.samples;
    o.threads = a.threads;
    o.replicas = a.replicas;
    o.seed = derive_seed(a.seed, 2 * k);
    const Estimate z = estimate_Z(g, a.theta, t, a.u, o);
    o.seed = derive_seed(a.seed, 2 * k + 1);
    const auto est = kind == EstimatorKind::Mcmc ? estimate_mcmc(g, a.theta, t, a.u, fs, o, mcmc)
                                                 : estimate_weighted(g, a.theta, t, a.u, fs, o);
    csv << format_number(t) << ',' << format_number(z.mean) << ',' << format_number(z.std_error)
        << ',' << format_number(est[0].mean) << ',' << format_number(est[0].std_error) << ','
        << format_number(est[1].mean) << ',' << format_number(est[1].std_error) << ','
        << format_number(est[2].mean) << '\n';
    const char* names[] = {"prob_A", "drift", "max_support_frac"};
    const nlohmann::json base = {{"t", t}, {"theta", a.theta}, {"u", a.u}, {"eta", a.eta},
                                 {"graph", a.graph}};
    auto params = base;
    params["quantity"] = "Z";
    records.push_back(estimate_json(z, params, derive_seed(a.seed, 2 * k)));
    for (std::size_t j = 0; j < 3; ++j) {
      params["quantity"] = names[j];
      records.push_back(estimate_json(est[j], params, derive_seed(a.seed, 2 * k + 1)));
    }
    for (const auto& e : est)
      if (e.low_ess) m.extra()["low_ess_at_t"].push_back(t);
  }
  emit(a.out, csv.str(), m);
  if (!a.json.empty()) emit(a.json, json_text(records), m);
  return kOk;
}

void add_estimate_options(CLI::App* app, EstimateArgs& a) {
  app->add_option("--graph", a.graph, "Graph file")->required()->check(CLI::ExistingFile);
  app->add_option("--theta", a.theta, "Loop weight theta > 0");
  app->add_option("--u", a.u, "Cross probability in [0,1]");
  app->add_option("--eta", a.eta, "Macroscopic threshold in (0,1]");
  app->add_option("--estimator", a.estimator, "direct | importance | mcmc")
      ->check(CLI::IsMember({"direct", "importance", "mcmc"}));
  app->add_option("--samples", a.samples, "Samples per grid point")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  app->add_option("--seed", a.seed, "Seed")->required();
  app->add_option("--burn-in", a.burn_in, "MCMC burn-in steps (0 = default)");
  app->add_option("--thinning", a.thinning, "MCMC steps per recorded sample (0 = |E|)");
  app->add_option("--out", a.out, "CSV output (stdout if omitted)");
  app->add_option("--json", a.json, "Also write the estimates as JSON records");
  add_threads(app, a.threads, a.replicas);
}

// ---------------------------------------------------------------- sparsity

struct SparsityArgs {
  std::string graph;
  double eta = 0.1;
  double eps = 1.0;
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> budget;
  std::size_t size_cap = 0;
  std::optional<std::uint64_t> seed;
  bool find_scale = false;
  std::string out;
};

int run_sparsity(const SparsityArgs& a, RunManifest& m) {
  const Graph g = read_graph(a.graph);
  if (a.find_scale) {
    const auto cap = sparsity_scale(a.eta, g.num_vertices());
    const auto r = largest_certified_size(g, a.eps, cap, a.budget.value_or(SparsityOptions{}.budget));
    nlohmann::json j = {{"eps", a.eps},
                        {"cap_limit", cap},
                        {"certified_size", r.size_cap},
                        {"certified_eta", g.num_vertices() ? static_cast<double>(r.size_cap) /
                                                                 static_cast<double>(g.num_vertices())
                                                           : 0.0},
                        {"work", r.work},
                        {"violator", nullptr}};
    if (r.violator) {
      j["violator"] = {{"vertices", r.violator->vertices}, {"induced_edges", r.violator->induced_edges}};
    }
    emit(a.out, json_text(j), m);
    return kOk;
  }
  SparsityOptions o;
  o.eta = a.eta;
  o.eps = a.eps;
  o.mode = a.mode == "heuristic" ? SparsityMode::Heuristic : SparsityMode::Exhaustive;
  // Heuristic restarts are cheap but never finish early; keep its default small.
  o.budget = a.budget.value_or(o.mode == SparsityMode::Heuristic ? 1'000'000 : o.budget);
  o.size_cap = a.size_cap;
  if (o.mode == SparsityMode::Heuristic) {
    if (!a.seed) throw InvalidArgument("heuristic mode needs --seed");
    o.seed = *a.seed;
    m.set_seed(*a.seed);
  }
  const auto v = sparsity_check(g, o);
  emit(a.out, json_text(to_json(v)), m);
  m.extra()["holds"] = v.holds;
  return v.holds ? kOk : kVerificationFailure;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string graph;
  std::optional<std::size_t> n;
  std::optional<std::size_t> edges;
  double theta = 1.0;
  double u = 0.5;
  double eps = 0.1;
  double eta = 0.1;
  std::optional<double> s;
  std::optional<double> t;
  std::optional<double> m_minus;
  std::optional<double> m_plus;
  std::optional<double> prob_a;
  std::uint64_t budget = 200'000'000;
  std::string out;
};

template <class F>
nlohmann::json guarded(F f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    return {{"value", nullptr}, {"undefined", e.what()}};
  }
}

int run_bounds(const BoundsArgs& a, RunManifest& m) {
  std::optional<Graph> g;
  std::size_t n = 0;
  std::size_t edges = 0;
  if (!a.graph.empty()) {
    g = read_graph(a.graph);
    n = g->num_vertices();
    edges = g->num_edges();
  } else {
    if (!a.n || !a.edges) throw InvalidArgument("give --graph or both --n and --edges");
    n = *a.n;
    edges = *a.edges;
  }
  BoundInputs in = BoundInputs::for_graph(n, edges, a.theta, a.u, a.eps, a.eta);
  if (a.m_minus) in.m_minus = *a.m_minus;
  if (a.m_plus) in.m_plus = *a.m_plus;
  in.s = a.s;
  in.t = a.t;
  in.validate();

  nlohmann::json report = {{"inputs", to_json(in)},
                           {"c", c_const(a.theta, a.u)},
                           {"C", C_const(a.theta)}};
  report["threshold_time"] = guarded([&] {
    return nlohmann::json{{"m", 2.0 * in.m_minus}, {"value", threshold_time(a.theta, a.u, 2.0 * in.m_minus)}};
  });
  if (a.s) report["averaged_lower_bound"] = guarded([&] { return nlohmann::json{{"value", averaged_lower_bound(in)}}; });
  if (a.t) {
    report["pointwise_lower_bound"] = guarded([&] {
      return nlohmann::json{{"value", pointwise_lower_bound(in)}, {"threshold", pointwise_threshold(in)}};
    });
  }
  if (a.prob_a) {
    report["drift_upper_bound"] = guarded([&] {
      return nlohmann::json{{"prob_A", *a.prob_a}, {"value", drift_upper_bound(in, *a.prob_a)}};
    });
  }
  if (g) {
    SparsityOptions o;
    o.eta = a.eta;
    o.eps = a.eps;
    o.budget = a.budget;
    // The sparsity checker rejects eps = 0; the formulas above do not.
    report["sparsity"] = guarded([&] {
      const auto verdict = sparsity_check(*g, o);
      report["criterion"] = to_json(criterion_report(*g, a.theta, a.u, a.eps, a.eta, verdict));
      return to_json(verdict);
    });
  }
  emit(a.out, json_text(report), m);
  return kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string graph;
  std::size_t theta = 2;
  double u = 0.5;
  std::vector<double> t;
  std::size_t max_dim = kOracleDimensionCap;
  std::string out;
};

int run_oracle(const OracleArgs& a, RunManifest& m) {
  const Graph g = read_graph(a.graph);
  std::ostringstream csv;
  csv << "t,Z,dlogZ,curvature\n";
  for (const auto& row : oracle_table(g, a.theta, a.u, a.t, a.max_dim)) {
    csv << format_number(row.t) << ',' << format_number(row.Z) << ',' << format_number(row.dlogZ)
        << ',' << format_number(row.curvature) << '\n';
  }
  emit(a.out, csv.str(), m);
  return kOk;
}

}  // namespace

nlohmann::json collect_params(const CLI::App& app) {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 ? nlohmann::json(r.front()) : nlohmann::json(r);
    } else if (!opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    } else {
      j[name] = nullptr;
    }
  }
  return j;
}

std::vector<Command> register_commands(CLI::App& root) {
  std::vector<Command> cmds;
  // Inherited by every subcommand created below, so manifests record defaults.
  root.option_defaults()->always_capture_default();

  {
    auto a = std::make_shared<GenArgs>();
    auto* app = root.add_subcommand("gen", "Sample a random graph");
    app->add_option("--ensemble", a->ensemble, "rrg | er | cm")->required()
        ->check(CLI::IsMember({"rrg", "er", "cm"}));
    app->add_option("--n", a->n, "Vertex count (rrg, er)");
    app->add_option("--d", a->d, "Degree (rrg)");
    app->add_option("--lambda", a->lambda, "Mean degree parameter (er)");
    app->add_option("--degrees", a->degrees, "Degree sequence file (cm)");
    app->add_option("--seed", a->seed, "Seed")->required();
    app->add_option("--max-attempts", a->max_attempts, "Pairing attempts before giving up");
    app->add_option("--out", a->out, "Graph file (stdout if omitted)");
    cmds.push_back({app, [a](RunManifest& m) { return run_gen(*a, m); }, [a] { return a->out; }});
  }
  {
    auto a = std::make_shared<VerifyArgs>();
    auto* app = root.add_subcommand("verify", "Run the exact surgery and slice identity suites");
    app->add_option("--graph", a->graph, "Graph file")->required()->check(CLI::ExistingFile);
    app->add_option("--marks", a->marks, "Check this mark file instead of sampling")
        ->check(CLI::ExistingFile);
    app->add_option("--t", a->t, "Mark intensity");
    app->add_option("--u", a->u, "Cross probability");
    app->add_option("--samples", a->configs, "Sampled configurations");
    app->add_option("--times", a->times, "Regular times per configuration (slice check)");
    app->add_option("--triples", a->triples, "Insertions per configuration (surgery check)");
    app->add_option("--seed", a->seed, "Seed")->required();
    app->add_option("--out", a->out, "JSON report (stdout if omitted)");
    cmds.push_back({app, [a](RunManifest& m) { return run_verify(*a, m); }, [a] { return a->out; }});
  }
  {
    auto a = std::make_shared<EstimateArgs>();
    auto* app = root.add_subcommand("estimate", "Estimate Z, P(A_eta) and the drift on a t-grid");
    add_estimate_options(app, *a);
    app->add_option("--t", a->t, "Time or comma-separated grid")->required()->delimiter(',');
    cmds.push_back({app, [a](RunManifest& m) { return run_estimate(*a, a->t, m); },
                    [a] { return a->out; }});
  }
  {
    auto a = std::make_shared<EstimateArgs>();
    auto* app = root.add_subcommand("sweep", "estimate over an evenly spaced t-grid");
    add_estimate_options(app, *a);
    app->add_option("--t-min", a->t_min, "First grid time");
    app->add_option("--t-max", a->t_max, "Last grid time");
    app->add_option("--points", a->points, "Grid points")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    cmds.push_back({app,
                    [a](RunManifest& m) {
                      if (!(a->t_max >= a->t_min)) throw InvalidArgument("--t-max below --t-min");
                      std::vector<double> grid;
                      for (std::size_t k = 0; k < a->points; ++k) {
                        grid.push_back(a->t_min + (a->t_max - a->t_min) * static_cast<double>(k) /
                                                      static_cast<double>(a->points - 1));
                      }
                      return run_estimate(*a, grid, m);
                    },
                    [a] { return a->out; }});
  }
  {
    auto a = std::make_shared<SparsityArgs>();
    auto* app = root.add_subcommand("sparsity", "Check small-set sparsity");
    app->add_option("--graph", a->graph, "Graph file")->required()->check(CLI::ExistingFile);
    app->add_option("--eta", a->eta, "Scale: sets of size <= floor(eta n)");
    app->add_option("--eps", a->eps, "Allowed excess: e(S) <= (1+eps)|S|");
    app->add_option("--mode", a->mode, "exhaustive | heuristic")
        ->check(CLI::IsMember({"exhaustive", "heuristic"}));
    app->add_option("--budget", a->budget, "Search nodes (exhaustive, default 2e8) or growth steps (heuristic, default 1e6)");
    app->add_option("--size-cap", a->size_cap, "Largest set size examined (0 = floor(eta n))");
    app->add_option("--seed", a->seed, "Seed (heuristic mode)");
    app->add_flag("--find-scale", a->find_scale, "Report the largest certified size up to floor(eta n)");
    app->add_option("--out", a->out, "JSON verdict (stdout if omitted)");
    cmds.push_back({app, [a](RunManifest& m) { return run_sparsity(*a, m); }, [a] { return a->out; }});
  }
  {
    auto a = std::make_shared<BoundsArgs>();
    auto* app = root.add_subcommand("bounds", "Evaluate the constants and lower-bound formulas");
    app->add_option("--graph", a->graph, "Graph file")->check(CLI::ExistingFile);
    app->add_option("--n", a->n, "Vertex count (without --graph)");
    app->add_option("--edges", a->edges, "Edge count (without --graph)");
    app->add_option("--theta", a->theta, "Loop weight");
    app->add_option("--u", a->u, "Cross probability");
    app->add_option("--eps", a->eps, "Sparsity excess");
    app->add_option("--eta", a->eta, "Sparsity scale");
    app->add_option("--s", a->s, "Window length for the averaged bound");
    app->add_option("--t", a->t, "Time for the pointwise bound");
    app->add_option("--m-minus", a->m_minus, "Lower edge density (default |E|/n)");
    app->add_option("--m-plus", a->m_plus, "Upper edge density (default |E|/n)");
    app->add_option("--prob-a", a->prob_a, "P(A_eta) for the drift upper bound");
    app->add_option("--budget", a->budget, "Sparsity search budget");
    app->add_option("--out", a->out, "JSON report (stdout if omitted)");
    cmds.push_back({app, [a](RunManifest& m) { return run_bounds(*a, m); }, [a] { return a->out; }});
  }
  {
    auto a = std::make_shared<OracleArgs>();
    auto* app = root.add_subcommand("oracle", "Exact Z, dlogZ and curvature from the trace formula");
    app->add_option("--graph", a->graph, "Graph file")->required()->check(CLI::ExistingFile);
    app->add_option("--theta", a->theta, "Integer loop weight >= 2");
    app->add_option("--u", a->u, "Cross probability");
    app->add_option("--t", a->t, "Comma-separated t-grid")->required()->delimiter(',');
    app->add_option("--max-dim", a->max_dim, "Cap on theta^n");
    app->add_option("--out", a->out, "CSV output (stdout if omitted)");
    cmds.push_back({app, [a](RunManifest& m) { return run_oracle(*a, m); }, [a] { return a->out; }});
  }
  return cmds;
}

}  // namespace rlm::cli
