#include "predshare/worlds.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <vector>

#include "predshare/numeric.hpp"
#include "predshare/random.hpp"

namespace predshare {

namespace {

constexpr int offset_bins = 20;
constexpr int shard_count = 8;

double frac(double x) { return x - std::floor(x); }

IntervalSet wrap_interval(double start, double length) {
  IntervalSet set;
  if (length <= 0.0) return set;
  if (length >= 1.0) {
    set.segments[0] = {0.0, 1.0};
    set.count = 1;
    return set;
  }
  start = frac(start);
  const double end = start + length;
  if (end <= 1.0) {
    set.segments[0] = {start, end};
    set.count = 1;
  } else {
    set.segments[0] = {start, 1.0};
    set.segments[1] = {0.0, end - 1.0};
    set.count = 2;
  }
  return set;
}

}  // namespace

bool IntervalSet::contains(double z) const {
  for (int i = 0; i < count; ++i) {
    if (segments[i].lo <= z && z < segments[i].hi) return true;
  }
  return false;
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (int i = 0; i < count; ++i) total += segments[i].hi - segments[i].lo;
  return total;
}

IntervalWorld build_interval_world(double alpha, double beta, double theta,
                                   double eta) {
  if (!(0.0 <= eta && eta < 1.0)) {
    throw model_error("interval world: eta outside [0,1)");
  }
  // Validates the parameter triple and rejects infeasible correlations.
  const JointSignalDistribution joint =
      joint_from_correlation(alpha, beta, theta);
  const double rho = 2.0 * joint.cell[1][1][1];

  IntervalWorld world;
  world.alpha = alpha;
  world.beta = beta;
  world.theta = theta;
  world.eta = eta;
  world.rho = rho;
  world.firm1_sets[1] = wrap_interval(eta, alpha);
  world.firm1_sets[0] = wrap_interval(eta + alpha, 1.0 - alpha);
  const double delta = frac(eta + alpha - rho);
  world.firm2_sets[1] = wrap_interval(delta, beta);
  world.firm2_sets[0] = wrap_interval(delta + beta, 1.0 - beta);
  return world;
}

std::pair<bool, bool> sample_signals(const IntervalWorld& world, double zeta,
                                     Label t) {
  const int ti = static_cast<int>(t);
  return {world.firm1_sets[ti].contains(zeta),
          world.firm2_sets[ti].contains(zeta)};
}

bool FamilyValidationReport::joint_ok(double tolerance) const {
  return max_joint_deviation < tolerance;
}

bool FamilyValidationReport::uniformity_ok(double significance) const {
  if (overall_p_value <= significance) return false;
  for (const ThetaOffsetReport& row : per_theta) {
    if (row.p_value <= significance) return false;
  }
  return true;
}

namespace {

struct ShardCounts {
  std::uint64_t joint[2][2][2] = {};
  std::vector<std::array<std::uint64_t, offset_bins>> offset;  // per theta

  explicit ShardCounts(std::size_t n_theta) : offset(n_theta) {
    for (auto& bins : offset) bins.fill(0);
  }
};

ShardCounts run_shard(const WorldFamily& family,
                      const std::vector<double>& cumulative,
                      std::uint64_t n_draws, std::uint64_t shard_seed) {
  ShardCounts counts(cumulative.size());
  Rng rng(shard_seed);
  for (std::uint64_t i = 0; i < n_draws; ++i) {
    const double u_theta = rng.uniform01();
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && u_theta >= cumulative[k]) ++k;
    const double eta = rng.uniform01();
    const Label t = rng.uniform01() < 0.5 ? Label::one : Label::zero;
    const double zeta = rng.uniform01();
    const IntervalWorld world = build_interval_world(
        family.alpha, family.beta, family.theta_prior.support[k].theta, eta);
    const auto [high1, high2] = sample_signals(world, zeta, t);
    ++counts.joint[high1 ? 1 : 0][high2 ? 1 : 0][static_cast<int>(t)];
    const double delta = frac(eta + family.alpha - world.rho);
    int bin = static_cast<int>(delta * offset_bins);
    if (bin >= offset_bins) bin = offset_bins - 1;
    ++counts.offset[k][bin];
  }
  return counts;
}

double uniform_chi_square(const std::array<std::uint64_t, offset_bins>& bins,
                          std::uint64_t draws) {
  const double expected = static_cast<double>(draws) / offset_bins;
  double stat = 0.0;
  for (const std::uint64_t c : bins) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

}  // namespace

FamilyValidationReport validate_family(const WorldFamily& family,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed) {
  CorrelationModelSpec check;
  check.alpha = family.alpha;
  check.beta = family.beta;
  check.theta_prior = family.theta_prior;
  check.validate();
  if (n_samples == 0) throw model_error("validate_family: no samples");

  const std::size_t n_theta = family.theta_prior.support.size();
  std::vector<double> cumulative(n_theta);
  double acc = 0.0;
  for (std::size_t k = 0; k < n_theta; ++k) {
    acc += family.theta_prior.support[k].weight;
    cumulative[k] = acc;
  }

  SplitMix seeder(seed);
  std::vector<std::future<ShardCounts>> futures;
  futures.reserve(shard_count);
  for (int s = 0; s < shard_count; ++s) {
    const std::uint64_t draws =
        n_samples / shard_count + (s < int(n_samples % shard_count) ? 1 : 0);
    const std::uint64_t shard_seed = seeder.next();
    futures.push_back(std::async(std::launch::async, run_shard, family,
                                 cumulative, draws, shard_seed));
  }
  ShardCounts total(n_theta);
  for (auto& future : futures) {
    const ShardCounts counts = future.get();
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int t = 0; t < 2; ++t) total.joint[s1][s2][t] += counts.joint[s1][s2][t];
    for (std::size_t k = 0; k < n_theta; ++k)
      for (int b = 0; b < offset_bins; ++b)
        total.offset[k][b] += counts.offset[k][b];
  }

  FamilyValidationReport report;
  report.n_samples = n_samples;
  report.bins = offset_bins;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t = 0; t < 2; ++t) {
        report.empirical.cell[s1][s2][t] =
            static_cast<double>(total.joint[s1][s2][t]) /
            static_cast<double>(n_samples);
      }
  for (std::size_t k = 0; k < n_theta; ++k) {
    const ThetaWeight& tw = family.theta_prior.support[k];
    const JointSignalDistribution joint =
        joint_from_correlation(family.alpha, family.beta, tw.theta);
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int t = 0; t < 2; ++t) {
          report.analytic.cell[s1][s2][t] += tw.weight * joint.cell[s1][s2][t];
        }
  }
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int t = 0; t < 2; ++t) {
        const double dev = std::fabs(report.empirical.cell[s1][s2][t] -
                                     report.analytic.cell[s1][s2][t]);
        if (dev > report.max_joint_deviation) report.max_joint_deviation = dev;
      }

  std::array<std::uint64_t, offset_bins> overall{};
  std::uint64_t overall_draws = 0;
  for (std::size_t k = 0; k < n_theta; ++k) {
    std::uint64_t draws = 0;
    for (int b = 0; b < offset_bins; ++b) {
      draws += total.offset[k][b];
      overall[b] += total.offset[k][b];
    }
    overall_draws += draws;
    ThetaOffsetReport row;
    row.theta = family.theta_prior.support[k].theta;
    row.draws = draws;
    if (draws > 0) {
      row.chi_square = uniform_chi_square(total.offset[k], draws);
      row.p_value = chi_square_tail(row.chi_square, offset_bins - 1);
    }
    report.per_theta.push_back(row);
  }
  report.overall_chi_square = uniform_chi_square(overall, overall_draws);
  report.overall_p_value =
      chi_square_tail(report.overall_chi_square, offset_bins - 1);
  return report;
}

std::string render_world(const IntervalWorld& world) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line,
                "world: alpha=%.6f beta=%.6f theta=%.6f eta=%.6f rho=%.6f\n",
                world.alpha, world.beta, world.theta, world.eta, world.rho);
  out += line;
  for (int firm = 1; firm <= 2; ++firm) {
    for (int t = 1; t >= 0; --t) {
      const IntervalSet& set =
          firm == 1 ? world.firm1_sets[t] : world.firm2_sets[t];
      const char signal = firm == 1 ? 'A' : 'a';
      std::snprintf(line, sizeof line, "firm %d, label %d, signal %c: ", firm,
                    t, signal);
      out += line;
      if (set.count == 0) out += "(empty)";
      for (int i = 0; i < set.count; ++i) {
        std::snprintf(line, sizeof line, "%s[%.6f, %.6f)", i ? " u " : "",
                      set.segments[i].lo, set.segments[i].hi);
        out += line;
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace predshare
