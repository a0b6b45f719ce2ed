#include "specsense/detection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specsense {

namespace {

// Acklam's rational approximation of the standard normal quantile.
double normal_quantile_estimate(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

std::vector<std::uint8_t> decide(const ConsensusResult& averaged, double cut) {
  std::vector<std::uint8_t> present(averaged.values.size());
  for (std::size_t i = 0; i < averaged.values.size(); ++i)
    present[i] = averaged.values[i][0] >= cut ? 1 : 0;
  return present;
}

}  // namespace

bool GlobalDecision::unanimous() const {
  for (std::uint8_t v : present)
    if (v != present.front()) return false;
  return true;
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("q_inverse: p must lie in (0, 1)");
  // Q^{-1}(p) = Phi^{-1}(1 - p) = -Phi^{-1}(p)
  double x = -normal_quantile_estimate(p);
  for (int i = 0; i < 2; ++i) {
    double pdf = normal_pdf(x);
    if (pdf <= 0.0) break;  // far tail: estimate is already at double precision
    x += (upper_tail(x) - p) / pdf;
  }
  return x;
}

double threshold(double sigma_n, std::size_t L, std::size_t W, double p_fa) {
  if (!(sigma_n > 0) || L < 1 || W < 1)
    throw std::invalid_argument("threshold: sigma_n, L, W must be positive");
  const double sn2 = sigma_n * sigma_n;
  return (2.0 * sn2 * sn2 / static_cast<double>(L)) *
         (std::sqrt(2.0 * static_cast<double>(W)) * q_inverse(p_fa) +
          static_cast<double>(W));
}

DetectorConfig make_detector(double p_fa, double sigma_n, std::size_t L,
                             std::size_t W) {
  DetectorConfig cfg;
  cfg.p_fa = p_fa;
  cfg.gamma = threshold(sigma_n, L, W, p_fa);
  return cfg;
}

double local_test(const EnergyRecord& record) {
  double acc = 0.0;
  for (double z : record.z) acc += z * z;
  return acc;
}

Moments theoretical_test_moments(double sigma_ps, double lambda, double sigma_n,
                                 std::size_t L, std::size_t W) {
  if (W < 1) throw std::invalid_argument("theoretical_test_moments: W must be >= 1");
  const double sigma_a2 = theoretical_z_moments(sigma_ps, lambda, sigma_n, L).variance;
  const double m2 = sigma_ps * sigma_ps * lambda;  // mean of z under a signal
  const double w = static_cast<double>(W);
  Moments m;
  m.mean = w * (sigma_a2 + m2 * m2);
  m.variance = 2.0 * w * sigma_a2 * (sigma_a2 + 2.0 * m2 * m2);
  return m;
}

GlobalDecision global_weighted_test(std::span<const double> t_values,
                                    double gamma, const ConsensusGraph& graph,
                                    const ConsensusConfig& config) {
  std::vector<std::vector<double>> votes(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i)
    votes[i] = {t_values[i] - gamma};
  ConsensusResult avg = average(graph, votes, config);
  GlobalDecision d;
  d.present = decide(avg, 0.0);
  d.rounds = avg.rounds;
  return d;
}

GlobalDecision voting_baseline(std::span<const double> t_values, double gamma,
                               const ConsensusGraph& graph,
                               const ConsensusConfig& config) {
  std::vector<std::vector<double>> bits(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i)
    bits[i] = {t_values[i] >= gamma ? 1.0 : 0.0};
  ConsensusResult avg = average(graph, bits, config);
  GlobalDecision d;
  d.present = decide(avg, 0.5);
  d.rounds = avg.rounds;
  return d;
}

}  // namespace specsense
