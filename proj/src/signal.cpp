#include "specsense/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace specsense {

namespace {

void validate_model(const BurstModel& m) {
  if (m.sigma_t < 0) throw std::invalid_argument("burst: sigma_t must be >= 0");
  if (m.activity < 0 || m.activity > 1)
    throw std::invalid_argument("burst: activity must lie in [0, 1]");
  if (m.cycle_length < 1) throw std::invalid_argument("burst: cycle_length must be >= 1");
}

void fill_ideal_fraction(std::vector<double>& s, const BurstModel& m,
                         std::size_t block, Rng& rng) {
  std::normal_distribution<double> amp(0.0, m.sigma_t);
  std::vector<std::size_t> idx(block);
  for (std::size_t start = 0; start < s.size(); start += block) {
    std::size_t len = std::min(block, s.size() - start);
    auto active = static_cast<std::size_t>(std::llround(m.activity * static_cast<double>(len)));
    idx.resize(len);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // partial Fisher-Yates: the first `active` entries are a uniform subset
    for (std::size_t i = 0; i < active; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, len - 1);
      std::swap(idx[i], idx[pick(rng)]);
      s[start + idx[i]] = amp(rng);
    }
  }
}

void fill_bursty_poisson(std::vector<double>& s, const BurstModel& m, Rng& rng) {
  if (m.activity == 0.0) return;  // never active
  std::normal_distribution<double> amp(0.0, m.sigma_t);
  if (m.activity == 1.0) {
    for (double& v : s) v = amp(rng);
    return;
  }
  std::poisson_distribution<long> on_len(m.activity * m.cycle_length);
  std::poisson_distribution<long> off_len((1.0 - m.activity) * m.cycle_length);
  std::bernoulli_distribution start_active(m.activity);

  bool active = start_active(rng);
  std::size_t i = 0;
  while (i < s.size()) {
    long run = active ? on_len(rng) : off_len(rng);
    if (run < 1) run = 1;  // state runs must advance time
    std::size_t end = std::min(s.size(), i + static_cast<std::size_t>(run));
    if (active)
      for (; i < end; ++i) s[i] = amp(rng);
    else
      i = end;
    active = !active;
  }
}

}  // namespace

std::vector<double> generate_burst(const BurstModel& model, std::size_t n,
                                   Rng& rng, std::size_t block_length) {
  if (n == 0) throw std::invalid_argument("generate_burst: n must be >= 1");
  validate_model(model);
  std::vector<double> s(n, 0.0);
  if (model.mode == BurstMode::ideal_fraction) {
    if (block_length == 0)
      throw std::invalid_argument("generate_burst: ideal_fraction needs a block length");
    fill_ideal_fraction(s, model, block_length, rng);
  } else {
    fill_bursty_poisson(s, model, rng);
  }
  return s;
}

void propagate_into(std::span<double> x, std::span<const double> s, double a,
                    double sigma_n, Rng& rng) {
  if (a < 0) throw std::invalid_argument("propagate: attenuation must be >= 0");
  if (sigma_n < 0) throw std::invalid_argument("propagate: sigma_n must be >= 0");
  if (!s.empty() && s.size() != x.size())
    throw std::invalid_argument("propagate: signal/output length mismatch");
  const bool has_signal = !s.empty() && a > 0;
  if (sigma_n == 0) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = has_signal ? a * s[i] : 0.0;
    return;
  }
  std::normal_distribution<double> noise(0.0, sigma_n);
  if (has_signal)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = a * s[i] + noise(rng);
  else
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = noise(rng);
}

std::vector<double> propagate(std::span<const double> s, double a,
                              double sigma_n, Rng& rng) {
  std::vector<double> x(s.size());
  propagate_into(x, s, a, sigma_n, rng);
  return x;
}

std::vector<double> energy_windows(std::span<const double> x, std::size_t L,
                                   std::size_t W) {
  if (L < 1 || W < 1) throw std::invalid_argument("energy_windows: L and W must be >= 1");
  if (x.size() < W * L)
    throw std::invalid_argument("energy_windows: insufficient samples");
  std::vector<double> y(W);
  for (std::size_t w = 0; w < W; ++w) {
    double acc = 0.0;
    const double* block = x.data() + w * L;
    for (std::size_t l = 0; l < L; ++l) acc += block[l] * block[l];
    y[w] = acc / static_cast<double>(L);
  }
  return y;
}

EnergyRecord center_and_mean(std::vector<double> y, double sigma_n,
                             std::size_t window_length) {
  if (y.empty()) throw std::invalid_argument("center_and_mean: empty energy vector");
  EnergyRecord rec;
  rec.window_length = window_length;
  rec.window_count = y.size();
  rec.z.resize(y.size());
  const double floor = sigma_n * sigma_n;
  double acc = 0.0;
  for (std::size_t w = 0; w < y.size(); ++w) {
    rec.z[w] = y[w] - floor;
    acc += rec.z[w];
  }
  rec.mu = acc / static_cast<double>(y.size());
  rec.y = std::move(y);
  return rec;
}

Moments theoretical_z_moments(double sigma_ps, double lambda, double sigma_n,
                              std::size_t L) {
  if (sigma_ps < 0 || lambda < 0 || sigma_n < 0 || L < 1)
    throw std::invalid_argument("theoretical_z_moments: invalid arguments");
  const double sn2 = sigma_n * sigma_n;
  const double sp2 = sigma_ps * sigma_ps;
  Moments m;
  m.mean = sp2 * lambda;
  m.variance = (2.0 / static_cast<double>(L)) *
               (sn2 * sn2 + sp2 * sp2 * lambda + 2.0 * sn2 * sp2 * lambda);
  return m;
}

}  // namespace specsense
