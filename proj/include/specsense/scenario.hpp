#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specsense/rng.hpp"

namespace specsense {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Amplitude path loss a = min(1, (d/d0)^(-exponent/2)); exponent is the usual
// power-law exponent, halved because we attenuate amplitudes, not powers.
struct PathLossModel {
  double reference_distance = 1.0;  // d0 [m]
  double exponent = 2.0;
};

// The static world being sensed: node geometry, amplitude attenuation matrix
// (primaries x secondaries, entries in (0,1]) and the common noise level.
struct Scenario {
  double side_length = 0.0;  // [m]
  std::vector<Point> primary_positions;
  std::vector<Point> secondary_positions;
  std::vector<std::vector<double>> attenuation;  // [p][s]
  double noise_std = 1.0;

  std::size_t primaries() const { return primary_positions.size(); }
  std::size_t secondaries() const { return secondary_positions.size(); }

  // Attenuations seen by secondary s, one entry per primary.
  std::vector<double> attenuation_column(std::size_t s) const;

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

// n_total iid uniform points on [0, side_length]^2, deterministic in rng.
std::vector<Point> place_nodes(std::size_t n_total, double side_length, Rng& rng);

// Greedy max-min dispersion: first pick is the point farthest from the
// centroid, each further pick maximizes its minimum distance to the picks so
// far (ties by lowest index). Returns (primary indices, secondary indices).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> select_primaries(
    const std::vector<Point>& points, std::size_t p);

double attenuation_from_geometry(const Point& primary, const Point& secondary,
                                 const PathLossModel& model);

// Hypothesis pairs that the minimum-variance criterion cannot separate: (j,p)
// is flagged when the squared attenuation ratio profile across secondaries is
// constant within tol (relative spread max/min - 1). Index 0 stands for the
// no-transmission hypothesis, whose profile is the all-ones row; a primary is
// confusable with it iff its squared-amplitude profile is constant.
std::vector<std::pair<int, int>> check_identifiability(
    const std::vector<std::vector<double>>& attenuation, double tol = 1e-6);

// Random scenario: uniform placement, greedy primary selection, geometric
// attenuation. Throws if the resulting matrix has ambiguous hypothesis pairs.
Scenario make_scenario(std::uint64_t seed, std::size_t primaries,
                       std::size_t secondaries, double side_length,
                       const PathLossModel& model = {}, double noise_std = 1.0);

struct ScenarioFile {
  Scenario scenario;
  // Optional [graph] section: undirected edges over secondary node indices.
  std::optional<std::vector<std::pair<int, int>>> graph_edges;
};

// Plain-text persistence; see docs/scenario-format.md. Reals are written with
// 17 significant digits so a round trip reproduces them bit for bit.
void write_scenario(std::ostream& out, const Scenario& s,
                    const std::vector<std::pair<int, int>>* graph_edges = nullptr);
ScenarioFile read_scenario(std::istream& in);

void save_scenario(const std::string& path, const Scenario& s,
                   const std::vector<std::pair<int, int>>* graph_edges = nullptr);
ScenarioFile load_scenario(const std::string& path);

}  // namespace specsense
