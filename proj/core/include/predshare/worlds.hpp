#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "predshare/core.hpp"
#include "predshare/distributions.hpp"

namespace predshare {

// Union of at most two half-open subintervals of [0,1).
struct IntervalSet {
  struct Segment {
    double lo = 0.0;
    double hi = 0.0;  // exclusive
  };
  Segment segments[2];
  int count = 0;

  bool contains(double z) const;
  double measure() const;
};

// A deterministic signal world: each firm's high-signal region per label.
// Firm 1's label-1 region starts at the offset eta with length alpha; firm 2's
// is placed so the label-1 overlap equals rho; label-0 regions are the
// complements.
struct IntervalWorld {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  double rho = 0.0;              // Pr[both high | label 1]
  IntervalSet firm1_sets[2];     // indexed by label
  IntervalSet firm2_sets[2];
};

IntervalWorld build_interval_world(double alpha, double beta, double theta,
                                   double eta);

// Signal pair for the latent draw zeta under label t; true = high signal.
std::pair<bool, bool> sample_signals(const IntervalWorld& world, double zeta,
                                     Label t);

struct WorldFamily {
  double alpha = 0.0;
  double beta = 0.0;
  ThetaPrior theta_prior;
};

struct ThetaOffsetReport {
  double theta = 0.0;
  std::uint64_t draws = 0;
  double chi_square = 0.0;
  double p_value = 1.0;
};

struct FamilyValidationReport {
  std::uint64_t n_samples = 0;
  int bins = 0;
  JointSignalDistribution empirical;
  JointSignalDistribution analytic;
  double max_joint_deviation = 0.0;
  // Uniformity of firm 2's interval start, overall and per theta support
  // point.
  double overall_chi_square = 0.0;
  double overall_p_value = 1.0;
  std::vector<ThetaOffsetReport> per_theta;

  bool joint_ok(double tolerance = 3e-3) const;
  bool uniformity_ok(double significance = 1e-3) const;
};

// Monte Carlo validation: draws (theta, eta, label, zeta), compares the
// sampled signal joint against the prior mixture of analytic joints, and
// chi-square-tests the uniformity of firm 2's interval start. Deterministic
// for a fixed seed; work is sharded across a fixed number of workers.
FamilyValidationReport validate_family(const WorldFamily& family,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed);

// Plain-text endpoint listing, one line per firm per label.
std::string render_world(const IntervalWorld& world);

}  // namespace predshare
