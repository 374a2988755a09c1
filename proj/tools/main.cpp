#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "predshare/contracts.hpp"
#include "predshare/core.hpp"
#include "predshare/distributions.hpp"
#include "predshare/empirical.hpp"
#include "predshare/serialize.hpp"
#include "predshare/verify.hpp"
#include "predshare/version.hpp"
#include "predshare/worlds.hpp"

namespace {

using namespace predshare;

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct flag_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative output paths land in PREDSHARE_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& out) {
  if (out.empty()) return out;
  const std::filesystem::path path(out);
  if (path.is_absolute()) return out;
  const char* dir = std::getenv("PREDSHARE_OUTPUT_DIR");
  if (dir != nullptr && *dir != '\0') {
    return (std::filesystem::path(dir) / path).string();
  }
  return out;
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const std::string path = resolve_output_path(out);
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw io_failure("cannot open output file: " + path);
  stream << text;
  if (!stream) throw io_failure("write failed: " + path);
}

struct ClassifyConfig {
  std::string model = "corr";
  double alpha = 0.7;
  double beta = 0.6;
  std::vector<double> thetas;
  std::vector<double> theta_weights;
  double r1 = 1.0;
  double c1 = 1.0;
  double pi_i = 0.5;
  double kappa = 0.1;
  double lambda = 0.1;
  double mu = 0.1;
  bool informative_negatives = false;
  std::string out;
};

ModelSpec build_model(const ClassifyConfig& config) {
  if (config.model == "corr") {
    CorrelationModelSpec spec;
    spec.alpha = config.alpha;
    spec.beta = config.beta;
    std::vector<double> thetas = config.thetas;
    if (thetas.empty()) thetas.push_back(0.0);
    std::vector<double> weights = config.theta_weights;
    if (weights.empty()) {
      weights.assign(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
    }
    if (weights.size() != thetas.size()) {
      throw flag_error("--theta-weight count must match --theta count");
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      spec.theta_prior.support.push_back(ThetaWeight{thetas[i], weights[i]});
    }
    spec.utility = significant_action(config.r1, config.c1);
    return spec;
  }
  TwoHypothesesSpec spec;
  spec.pi_i = config.pi_i;
  spec.kappa = config.kappa;
  spec.lambda = config.lambda;
  spec.mu = config.mu;
  spec.utility = matching_recommendations();
  spec.structure = config.informative_negatives
                       ? TwoHypStructure::informative_negatives
                       : TwoHypStructure::uninformative_negatives;
  if (config.model == "twohyp") return TwoHypInfiniteModel{spec};
  if (config.model == "twohyp-one-sample") return TwoHypOneSampleModel{spec};
  throw flag_error("unknown model: " + config.model);
}

int run_classify(const ClassifyConfig& config) {
  const ModelSpec model = build_model(config);
  validate(model);
  const ContractClassification result = classify(model);
  write_output(to_json(result), config.out);
  return 0;
}

struct VerifyConfig {
  std::string only;
  std::uint64_t samples = 1000000;
  std::uint64_t worlds_seed = 1;
  std::uint64_t empirical_seed = default_empirical_seed;
  bool inject_fault = false;
  std::string out;
};

int run_verify(const VerifyConfig& config) {
  VerifyOptions options;
  options.only = config.only;
  options.worlds_samples = config.samples;
  options.worlds_seed = config.worlds_seed;
  options.empirical_seed = config.empirical_seed;
  options.inject_closed_form_fault = config.inject_fault;
  const std::vector<CheckResult> results = run_verification(options);
  if (results.empty()) {
    std::cerr << "no check matches --only " << config.only << "\n";
    return 2;
  }
  for (const CheckResult& result : results) {
    std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name
              << "\n";
    for (const ClauseResult& c : result.clauses) {
      if (!c.passed) {
        std::cout << "       failing clause: " << c.description << "\n";
        if (!c.detail.empty()) {
          std::cout << "       " << c.detail << "\n";
        }
      }
    }
  }
  std::string out = config.out;
  if (out.empty() && std::getenv("PREDSHARE_OUTPUT_DIR") != nullptr) {
    out = "verify_report.json";
  }
  if (!out.empty()) write_output(verification_to_json(results), out);
  return all_passed(results) ? 0 : 1;
}

struct SweepConfig {
  std::uint64_t seed = default_empirical_seed;
  double epsilon = 0.55;
  double c1_max = 2.5;
  double c1_step = 0.05;
  std::string format = "csv";
  bool total = false;
  std::string out;
};

int run_sweep(const SweepConfig& config) {
  SyntheticDatasetSpec spec;
  spec.seed = config.seed;
  spec.epsilon = config.epsilon;
  spec.firm1_frac = std::min(spec.firm1_frac, config.epsilon);
  spec.firm2_frac = std::min(spec.firm2_frac, config.epsilon);
  const Dataset dataset = generate_dataset(spec);
  const std::vector<double> grid = make_cost_grid(config.c1_max, config.c1_step);
  std::string text;
  if (config.total) {
    const TotalSharingTable table = total_sharing(dataset, grid);
    text = config.format == "csv" ? total_sharing_to_csv(table)
                                  : to_json(table);
  } else {
    const SweepTable table = cost_sweep(dataset, grid);
    text = config.format == "csv" ? sweep_to_csv(table) : to_json(table);
  }
  write_output(text, config.out);
  return 0;
}

struct SimulateConfig {
  std::uint64_t seed = default_empirical_seed;
  int n_seeds = 4;
  std::vector<double> epsilons;
  std::string out;
};

int run_simulate(const SimulateConfig& config) {
  SyntheticDatasetSpec base;
  base.seed = config.seed;
  std::vector<double> epsilons = config.epsilons;
  if (epsilons.empty()) {
    epsilons.assign(default_epsilons.begin(), default_epsilons.end());
  }
  if (config.n_seeds < 1) throw flag_error("--seeds must be >= 1");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < config.n_seeds; ++i) {
    seeds.push_back(config.seed + static_cast<std::uint64_t>(i));
  }
  const BatteryResult battery = run_battery(base, epsilons, seeds);
  write_output(to_json(battery), config.out);
  return 0;
}

struct WorldsConfig {
  double alpha = 0.7;
  double beta = 0.6;
  std::vector<double> thetas;
  std::vector<double> theta_weights;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string out;
};

int run_worlds(const WorldsConfig& config) {
  WorldFamily family;
  family.alpha = config.alpha;
  family.beta = config.beta;
  std::vector<double> thetas = config.thetas;
  if (thetas.empty()) {
    thetas = {0.0, theta_max(config.alpha, config.beta)};
  }
  std::vector<double> weights = config.theta_weights;
  if (weights.empty()) {
    weights.assign(thetas.size(), 1.0 / static_cast<double>(thetas.size()));
  }
  if (weights.size() != thetas.size()) {
    throw flag_error("--theta-weight count must match --theta count");
  }
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    family.theta_prior.support.push_back(ThetaWeight{thetas[i], weights[i]});
  }
  const FamilyValidationReport report =
      validate_family(family, config.samples, config.seed);
  write_output(to_json(report), config.out);
  return report.joint_ok() && report.uniformity_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-firm prediction-sharing contract analysis"};
  app.set_version_flag("--version",
                       std::string("predshare ") + version_string);
  app.require_subcommand(0, 1);

  ClassifyConfig classify_config;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Classify the four sharing contracts for a model");
  classify_cmd->add_option("--model", classify_config.model,
                           "corr | twohyp | twohyp-one-sample")
      ->check(CLI::IsMember({"corr", "twohyp", "twohyp-one-sample"}));
  classify_cmd->add_option("--alpha", classify_config.alpha,
                           "firm-1 accuracy (corr model)");
  classify_cmd->add_option("--beta", classify_config.beta,
                           "firm-2 accuracy (corr model)");
  classify_cmd->add_option("--theta", classify_config.thetas,
                           "correlation support point (repeatable)");
  classify_cmd->add_option("--theta-weight", classify_config.theta_weights,
                           "prior weight per support point (repeatable)");
  classify_cmd->add_option("--r1", classify_config.r1,
                           "significant-action reward");
  classify_cmd->add_option("--c1", classify_config.c1,
                           "significant-action cost");
  classify_cmd->add_option("--pi-i", classify_config.pi_i,
                           "prior on hypothesis I (twohyp models)");
  classify_cmd->add_option("--kappa", classify_config.kappa,
                           "hypothesis-exclusive cell mass (twohyp models)");
  classify_cmd->add_option("--lambda", classify_config.lambda,
                           "label-0 cell parameter (twohyp models)");
  classify_cmd->add_option("--mu", classify_config.mu,
                           "label-0 cell parameter (twohyp models)");
  classify_cmd->add_flag("--informative-negatives",
                         classify_config.informative_negatives,
                         "label-0 cells differ across hypotheses");
  classify_cmd->add_option("--out", classify_config.out,
                           "output file (default: stdout)");

  VerifyConfig verify_config;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the verification battery");
  verify_cmd->add_option("--only", verify_config.only,
                         "substring filter on check names");
  verify_cmd->add_option("--samples", verify_config.samples,
                         "interval-world sample count");
  verify_cmd->add_option("--worlds-seed", verify_config.worlds_seed,
                         "interval-world seed");
  verify_cmd->add_option("--empirical-seed", verify_config.empirical_seed,
                         "synthetic-dataset seed");
  verify_cmd
      ->add_flag("--inject-fault", verify_config.inject_fault,
                 "negative control: evaluate the closed form with the "
                 "alternate threshold reading")
      ->group("");  // hidden
  verify_cmd->add_option("--out", verify_config.out,
                         "JSON report file (default: verify_report.json "
                         "under PREDSHARE_OUTPUT_DIR when set)");

  SweepConfig sweep_config;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Cost sweep of the synthetic empirical pipeline");
  sweep_cmd->add_option("--seed", sweep_config.seed, "dataset seed");
  sweep_cmd->add_option("--epsilon", sweep_config.epsilon,
                        "shared feature-pool fraction");
  sweep_cmd->add_option("--c1-max", sweep_config.c1_max, "grid maximum");
  sweep_cmd->add_option("--c1-step", sweep_config.c1_step, "grid step");
  sweep_cmd->add_option("--format", sweep_config.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_flag("--total", sweep_config.total,
                      "emit the pooled total-sharing baseline instead");
  sweep_cmd->add_option("--out", sweep_config.out,
                        "output file (default: stdout)");

  SimulateConfig simulate_config;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Epsilon x seed battery of the empirical pipeline");
  simulate_cmd->add_option("--seed", simulate_config.seed, "base seed");
  simulate_cmd->add_option("--seeds", simulate_config.n_seeds,
                           "number of consecutive seeds");
  simulate_cmd->add_option("--epsilon", simulate_config.epsilons,
                           "pool fraction (repeatable)");
  simulate_cmd->add_option("--out", simulate_config.out,
                           "output file (default: stdout)");

  WorldsConfig worlds_config;
  CLI::App* worlds_cmd = app.add_subcommand(
      "worlds", "Monte Carlo validation of the interval-world family");
  worlds_cmd->add_option("--alpha", worlds_config.alpha, "firm-1 accuracy");
  worlds_cmd->add_option("--beta", worlds_config.beta, "firm-2 accuracy");
  worlds_cmd->add_option("--theta", worlds_config.thetas,
                         "correlation support point (repeatable)");
  worlds_cmd->add_option("--theta-weight", worlds_config.theta_weights,
                         "prior weight per support point (repeatable)");
  worlds_cmd->add_option("--samples", worlds_config.samples, "sample count");
  worlds_cmd->add_option("--seed", worlds_config.seed, "sampling seed");
  worlds_cmd->add_option("--out", worlds_config.out,
                         "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 2;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(classify_config);
    if (verify_cmd->parsed()) return run_verify(verify_config);
    if (sweep_cmd->parsed()) return run_sweep(sweep_config);
    if (simulate_cmd->parsed()) return run_simulate(simulate_config);
    if (worlds_cmd->parsed()) return run_worlds(worlds_config);
    std::cout << app.help();
    return 0;
  } catch (const io_failure& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
