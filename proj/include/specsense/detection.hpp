#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specsense/consensus.hpp"
#include "specsense/signal.hpp"

namespace specsense {

// Inverse upper-tail standard normal: returns x with Q(x) = p,
// Q(x) = 0.5*erfc(x/sqrt(2)). Rational approximation plus Newton refinement;
// absolute error well below 1e-8. Throws unless 0 < p < 1.
double q_inverse(double p);

// Energy-detector threshold for a target per-node false-alarm probability:
//   gamma = (2 sigma_n^4 / L) * (sqrt(2W) * Qinv(p_fa) + W)
double threshold(double sigma_n, std::size_t L, std::size_t W, double p_fa);

struct DetectorConfig {
  double p_fa = 0.05;
  double gamma = 0.0;
};

DetectorConfig make_detector(double p_fa, double sigma_n, std::size_t L,
                             std::size_t W);

// Local test statistic T = z'z (sum of squared centered window energies).
double local_test(const EnergyRecord& record);

// Gaussian approximation of T:
//   noise only: ( 2W sigma_n^4 / L,  8W sigma_n^8 / L^2 )
//   signal:     ( W (sigma_a^2 + sigma_ps^4 lambda^2),
//                 2W sigma_a^2 (sigma_a^2 + 2 sigma_ps^4 lambda^2) )
// with sigma_a^2 the single-window z variance from theoretical_z_moments.
Moments theoretical_test_moments(double sigma_ps, double lambda, double sigma_n,
                                 std::size_t L, std::size_t W);

struct GlobalDecision {
  std::vector<std::uint8_t> present;  // per-node verdict
  std::size_t rounds = 0;
  bool decision() const { return present.front() != 0; }
  bool unanimous() const;
};

// Weighted global test: every node votes its confidence T - gamma, the votes
// are consensus-averaged, and the sign decides (tie T* = 0 counts as present).
GlobalDecision global_weighted_test(std::span<const double> t_values,
                                    double gamma, const ConsensusGraph& graph,
                                    const ConsensusConfig& config);

// 1-bit majority baseline: nodes vote T >= gamma, consensus-averaged bits,
// present iff the average is >= 1/2.
GlobalDecision voting_baseline(std::span<const double> t_values, double gamma,
                               const ConsensusGraph& graph,
                               const ConsensusConfig& config);

}  // namespace specsense
