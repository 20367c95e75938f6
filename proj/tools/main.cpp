// deptol: fit depth-based tolerance regions from CSV samples, classify new
// observations, export spacings and hulls, and run the coverage harness.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deptol/model_io.hpp"
#include "deptol/sim.hpp"

namespace {

using namespace deptol;

// Exit codes: 0 ok, 2 input/validation error, 3 infeasible or unsupported
// configuration, 4 dimension-specific feature unavailable.
class FeatureUnavailable : public Error {
 public:
  explicit FeatureUnavailable(const std::string& what) : Error(what) {}
};

DepthKind resolve_depth(const std::string& name, std::size_t p) {
  if (name == "auto") return default_depth_kind(p);
  return depth_kind_from_string(name);
}

Distribution resolve_dist(const std::string& name) {
  if (name == "normal") return Distribution::std_bivariate_normal();
  if (name == "cauchy") return Distribution::std_bivariate_cauchy();
  if (name == "exponential") return Distribution::bivariate_exponential();
  throw DomainError("unknown distribution: " + name);
}

struct FitArgs {
  std::string input;
  std::string output;
  std::string depth = "auto";
  std::string kind = "content";
  double beta = 0.9;
  double gamma = 0.95;
  std::uint64_t seed = 0;
};

void cmd_fit(const FitArgs& args) {
  const Dataset data = read_csv_file(args.input);
  const std::size_t p = dimension(data);

  ToleranceSpec spec;
  spec.beta = args.beta;
  spec.gamma = args.gamma;
  spec.kind = tolerance_kind_from_string(args.kind);
  spec.validate();

  const DepthKind kind = resolve_depth(args.depth, p);
  ModelFile model;
  model.region = fit_region(data, spec, kind);
  model.seed = args.seed;
  save_model(model, args.output);

  const auto retained = retained_indices(model.region);
  std::cout << "n=" << data.size() << " p=" << p
            << " depth=" << to_string(kind)
            << " kind=" << to_string(spec.kind)
            << " r_n=" << model.region.plan.threshold_rank
            << " threshold=" << format_double_sig(model.region.threshold, 12)
            << " retained=" << retained.size() << "\n";
}

void cmd_check(const std::string& model_path, const std::string& query_path) {
  const ModelFile model = load_model(model_path);
  const Dataset queries = read_csv_file(query_path);
  if (dimension(queries) != model.region.dim())
    throw DimensionMismatch("query dimension " + std::to_string(dimension(queries)) +
                            " does not match model dimension " +
                            std::to_string(model.region.dim()));

  const DepthEvaluator eval(model.region.reference, model.region.depth_kind);
  const auto& region = model.region;
  std::cout << "row,depth,in_region\n";
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const double depth = eval(queries[i]);
    const bool member =
        std::find(region.reference.begin(), region.reference.end(), queries[i]) !=
        region.reference.end();
    const double bar = member ? region.threshold : region.query_threshold();
    std::cout << (i + 1) << ',' << format_double_sig(depth, 12) << ','
              << (depth > bar ? 1 : 0) << "\n";
  }
}

void cmd_spacings(const std::string& input, const std::string& depth_name) {
  const Dataset data = read_csv_file(input);
  const DepthKind kind = resolve_depth(depth_name, dimension(data));
  const DepthOrder order = depth_order(data, kind);
  const auto spacings = multivariate_spacings(order);

  std::vector<std::size_t> rank_of(data.size(), 0);
  std::vector<double> depth_of(data.size(), 0.0);
  for (std::size_t pos = 0; pos < order.ranked.size(); ++pos) {
    rank_of[order.ranked[pos].index] = pos + 1;
    depth_of[order.ranked[pos].index] = order.ranked[pos].depth;
  }

  std::cout << "row,depth,rank,spacing\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::cout << (i + 1) << ',' << format_double_shortest(depth_of[i]) << ','
              << rank_of[i] << ',' << spacing_index_of(spacings, depth_of[i])
              << "\n";
  }
}

void cmd_hull(const std::string& model_path) {
  const ModelFile model = load_model(model_path);
  if (model.region.dim() != 2)
    throw FeatureUnavailable("hull export requires a 2-D model");
  if (!model.region.hull)
    throw FeatureUnavailable("model stores no hull (no retained points)");

  const Polygon2D& hull = *model.region.hull;
  if (hull.degenerate)
    std::cerr << "warning: hull is degenerate (" << hull.vertices.size()
              << " vertices)\n";
  std::cout << "x,y\n";
  for (const auto& v : hull.vertices)
    std::cout << format_double_shortest(v[0]) << ','
              << format_double_shortest(v[1]) << "\n";
}

struct SimulateArgs {
  std::string dist = "normal";
  std::string depth = "simplicial";
  std::size_t n = 100;
  std::size_t m = 20;
  std::size_t M = 200;
  double beta = 0.9;
  double gamma = 0.95;
  std::string kind = "content";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string json_path;
};

void cmd_simulate(const SimulateArgs& args) {
  SimConfig config;
  config.dist = resolve_dist(args.dist);
  config.depth_kind = depth_kind_from_string(args.depth);
  config.n = args.n;
  config.inner_reps = args.m;
  config.outer_reps = args.M;
  config.spec.beta = args.beta;
  config.spec.gamma = args.gamma;
  config.spec.kind = tolerance_kind_from_string(args.kind);
  config.seed = args.seed;
  config.threads = args.threads;
  config.validate();

  const SimulationReport report = run_simulation(config);
  const bool content = config.spec.kind == ToleranceKind::kContent;

  std::string lines;
  lines += std::string("dist=") + config.dist.name() + "\n";
  lines += std::string("depth=") + to_string(config.depth_kind) + "\n";
  lines += std::string("kind=") + to_string(config.spec.kind) + "\n";
  lines += "n=" + std::to_string(config.n) + "\n";
  lines += "m=" + std::to_string(config.inner_reps) + "\n";
  lines += "M=" + std::to_string(config.outer_reps) + "\n";
  lines += "beta=" + format_double_shortest(config.spec.beta) + "\n";
  if (content) lines += "gamma=" + format_double_shortest(config.spec.gamma) + "\n";
  lines += "seed=" + std::to_string(config.seed) + "\n";
  lines += std::string(content ? "gamma_hat=" : "beta_hat=") +
           format_double_shortest(report.estimate) + "\n";
  lines += "std_error=" + format_double_shortest(report.std_error) + "\n";
  std::cout << lines;
  std::cerr << "elapsed_seconds=" << report.elapsed_seconds << "\n";

  if (!args.json_path.empty()) {
    std::ofstream out(args.json_path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + args.json_path);
    out << "{\n";
    out << "  \"dist\": \"" << config.dist.name() << "\",\n";
    out << "  \"depth\": \"" << to_string(config.depth_kind) << "\",\n";
    out << "  \"kind\": \"" << to_string(config.spec.kind) << "\",\n";
    out << "  \"n\": " << config.n << ",\n";
    out << "  \"m\": " << config.inner_reps << ",\n";
    out << "  \"M\": " << config.outer_reps << ",\n";
    out << "  \"beta\": " << format_double_17(config.spec.beta) << ",\n";
    if (content) out << "  \"gamma\": " << format_double_17(config.spec.gamma) << ",\n";
    out << "  \"seed\": " << config.seed << ",\n";
    out << "  \"" << (content ? "gamma_hat" : "beta_hat")
        << "\": " << format_double_17(report.estimate) << ",\n";
    out << "  \"std_error\": " << format_double_17(report.std_error) << "\n";
    out << "}\n";
  }
}

struct MinimalityArgs {
  std::string dist = "normal";
  std::size_t n = 1000;
  double beta = 0.9;
  std::size_t reps = 20;
  std::size_t probes = 100000;
  std::uint64_t seed = 0;
};

void cmd_minimality(const MinimalityArgs& args) {
  if (args.dist != "normal")
    throw Unsupported("minimality probing is implemented for the planar normal");
  if (args.reps < 1) throw DomainError("--reps must be >= 1");
  const Distribution dist = Distribution::std_bivariate_normal();

  ToleranceSpec spec;
  spec.beta = args.beta;
  spec.kind = ToleranceKind::kExpectation;
  spec.validate();

  std::vector<double> ratios;
  for (std::size_t rep = 0; rep < args.reps; ++rep) {
    const RngState rep_rng = RngState{args.seed, 0}.child(rep);
    const Dataset data = sample_dist(dist, args.n, rep_rng.child(0));
    const ToleranceRegion region = fit_region(data, spec, DepthKind::kMahalanobis);
    const MinimalityGap gap = minimality_gap(region, dist, args.probes, rep_rng.child(1));
    ratios.push_back(gap.ratio);
    std::cout << "rep=" << rep << " sym_diff_area="
              << format_double_shortest(gap.sym_diff_area)
              << " ratio=" << format_double_shortest(gap.ratio) << "\n";
  }
  std::sort(ratios.begin(), ratios.end());
  const std::size_t mid = ratios.size() / 2;
  const double median = ratios.size() % 2 ? ratios[mid]
                                          : 0.5 * (ratios[mid - 1] + ratios[mid]);
  std::cout << "median_ratio=" << format_double_shortest(median) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "deptol: depth-based multivariate spacings and nonparametric tolerance "
      "regions"};
  app.require_subcommand(1);

  const std::string depth_help =
      "Depth notion: simplicial (fast planar path), simplicial-naive "
      "(exhaustive), mahalanobis, or auto (simplicial when p=2, mahalanobis "
      "otherwise). Regions use a strict threshold: a point belongs to the "
      "region only when its depth exceeds the r_n-th largest reference depth, "
      "so the region keeps r_n-1 reference points generically; ties in depth "
      "are ranked by ascending row order.";

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit a tolerance region from a CSV sample and write a model file");
  fit_cmd->add_option("input", fit.input, "input CSV (optional header row)")
      ->required();
  fit_cmd->add_option("output", fit.output, "output model JSON path")->required();
  fit_cmd->add_option("--depth", fit.depth, depth_help)
      ->check(CLI::IsMember({"auto", "mahalanobis", "simplicial", "simplicial-naive"}));
  fit_cmd->add_option("--beta", fit.beta, "content target in (0,1)");
  fit_cmd->add_option("--gamma", fit.gamma, "confidence level in (0,1), content kind");
  fit_cmd->add_option("--kind", fit.kind, "content or expectation")
      ->check(CLI::IsMember({"content", "expectation"}));
  fit_cmd->add_option("--seed", fit.seed, "provenance seed stored in the model");
  fit_cmd->callback([&] { cmd_fit(fit); });

  std::string check_model, check_query;
  auto* check_cmd = app.add_subcommand(
      "check", "Classify query points against a fitted model (CSV to stdout)");
  check_cmd->add_option("model", check_model, "model JSON path")->required();
  check_cmd->add_option("queries", check_query, "query CSV path")->required();
  check_cmd->callback([&] { cmd_check(check_model, check_query); });

  std::string sp_input, sp_depth = "auto";
  auto* sp_cmd = app.add_subcommand(
      "spacings",
      "Depth, rank and spacing index per row. Spacing bounds are half open: "
      "shell i holds depths in (Z[i], Z[i-1]], so a sample point's own depth "
      "falls in shell rank+1; the outermost shell n+1 holds depth <= Z[n].");
  sp_cmd->add_option("input", sp_input, "input CSV")->required();
  sp_cmd->add_option("--depth", sp_depth, depth_help)
      ->check(CLI::IsMember({"auto", "mahalanobis", "simplicial", "simplicial-naive"}));
  sp_cmd->callback([&] { cmd_spacings(sp_input, sp_depth); });

  std::string hull_model;
  auto* hull_cmd = app.add_subcommand(
      "hull", "Export the retained-point convex hull of a 2-D model as CSV");
  hull_cmd->add_option("model", hull_model, "model JSON path")->required();
  hull_cmd->callback([&] { cmd_hull(hull_model); });

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Coverage simulation: fit on fresh samples, score fresh "
                  "samples, report gamma-hat or beta-hat");
  sim_cmd->add_option("--dist", sim.dist, "normal, cauchy or exponential")
      ->check(CLI::IsMember({"normal", "cauchy", "exponential"}));
  sim_cmd->add_option("--depth", sim.depth, depth_help)
      ->check(CLI::IsMember({"mahalanobis", "simplicial", "simplicial-naive"}));
  sim_cmd->add_option("--n", sim.n, "sample size per fit/evaluation");
  sim_cmd->add_option("--m", sim.m, "evaluation samples per replication");
  sim_cmd->add_option("--M", sim.M, "replications");
  sim_cmd->add_option("--beta", sim.beta, "content target");
  sim_cmd->add_option("--gamma", sim.gamma, "confidence level (content kind)");
  sim_cmd->add_option("--kind", sim.kind, "content or expectation")
      ->check(CLI::IsMember({"content", "expectation"}));
  sim_cmd->add_option("--seed", sim.seed, "base RNG seed");
  sim_cmd->add_option("--threads", sim.threads,
                      "worker threads (results identical for any count)");
  sim_cmd->add_option("--json", sim.json_path, "also write the report as JSON");
  sim_cmd->callback([&] { cmd_simulate(sim); });

  MinimalityArgs mini;
  auto* mini_cmd = app.add_subcommand(
      "minimality", "Symmetric-difference area between fitted and ideal "
                    "regions (planar normal, mahalanobis)");
  mini_cmd->add_option("--dist", mini.dist, "distribution (normal)");
  mini_cmd->add_option("--n", mini.n, "sample size per fit");
  mini_cmd->add_option("--beta", mini.beta, "content target");
  mini_cmd->add_option("--reps", mini.reps, "independent fits");
  mini_cmd->add_option("--probes", mini.probes, "uniform probes per fit");
  mini_cmd->add_option("--seed", mini.seed, "base RNG seed");
  mini_cmd->callback([&] { cmd_minimality(mini); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const FeatureUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
