#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specsense/rng.hpp"

namespace specsense {

enum class BurstMode {
  // Alternating active/passive runs with Poisson(lambda*q) and
  // Poisson((1-lambda)*q) lengths; zero-length draws are redrawn as 1.
  bursty_poisson,
  // Exactly round(lambda * block) active samples per consecutive block, at
  // uniformly shuffled positions. Makes the closed-form window moments exact.
  ideal_fraction,
};

// On/off primary transmitter: N(0, sigma_t^2) amplitudes while active, 0 while
// passive; `activity` is the long-run active fraction, `cycle_length` the
// expected samples per on+off cycle.
struct BurstModel {
  double sigma_t = 1.0;
  double activity = 0.5;
  double cycle_length = 20.0;
  BurstMode mode = BurstMode::bursty_poisson;
};

// n transmitted-amplitude samples. block_length is required (and only used)
// in ideal_fraction mode; callers pass their integration window length.
std::vector<double> generate_burst(const BurstModel& model, std::size_t n,
                                   Rng& rng, std::size_t block_length = 0);

// Received samples x[i] = a*s[i] + noise, noise iid N(0, sigma_n^2). An empty
// signal span is treated as all-zero (pure noise of length n).
std::vector<double> propagate(std::span<const double> s, double a,
                              double sigma_n, Rng& rng);
void propagate_into(std::span<double> x, std::span<const double> s, double a,
                    double sigma_n, Rng& rng);

// Per-window average signal energy: y[w] = (1/L) * sum of squares of the w-th
// consecutive, non-overlapping block of L samples.
std::vector<double> energy_windows(std::span<const double> x, std::size_t L,
                                   std::size_t W);

// The per-node sensing sufficient statistics: window energies y, their
// noise-centered version z = y - sigma_n^2, and the sample mean of z.
struct EnergyRecord {
  std::vector<double> y;
  std::vector<double> z;
  double mu = 0.0;
  std::size_t window_length = 0;  // L
  std::size_t window_count = 0;   // W
};

EnergyRecord center_and_mean(std::vector<double> y, double sigma_n,
                             std::size_t window_length);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Gaussian approximation of one centered window energy z:
//   mean = sigma_ps^2 * lambda
//   var  = (2/L) * (sigma_n^4 + sigma_ps^4 lambda + 2 sigma_n^2 sigma_ps^2 lambda)
// where sigma_ps is the received signal amplitude std at the node. sigma_ps=0
// gives the noise-only form (0, 2 sigma_n^4 / L).
Moments theoretical_z_moments(double sigma_ps, double lambda, double sigma_n,
                              std::size_t L);

}  // namespace specsense
