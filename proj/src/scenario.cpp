#include "specsense/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "specsense/kvfile.hpp"

namespace specsense {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<double> Scenario::attenuation_column(std::size_t s) const {
  std::vector<double> col(primaries());
  for (std::size_t p = 0; p < primaries(); ++p) col[p] = attenuation[p][s];
  return col;
}

void Scenario::validate() const {
  if (!(side_length > 0)) throw std::invalid_argument("side_length must be > 0");
  if (primaries() < 1) throw std::invalid_argument("need at least one primary");
  if (secondaries() < 2) throw std::invalid_argument("need at least two secondaries");
  if (!(noise_std > 0)) throw std::invalid_argument("noise_std must be > 0");
  auto inside = [&](const Point& pt) {
    return pt.x >= 0 && pt.x <= side_length && pt.y >= 0 && pt.y <= side_length;
  };
  for (const Point& pt : primary_positions)
    if (!inside(pt)) throw std::invalid_argument("primary position outside the square");
  for (const Point& pt : secondary_positions)
    if (!inside(pt)) throw std::invalid_argument("secondary position outside the square");
  if (attenuation.size() != primaries())
    throw std::invalid_argument("attenuation row count != primaries");
  for (const auto& row : attenuation) {
    if (row.size() != secondaries())
      throw std::invalid_argument("attenuation column count != secondaries");
    for (double a : row)
      if (!(a > 0.0) || !(a <= 1.0))
        throw std::invalid_argument("attenuation coefficients must lie in (0, 1]");
  }
}

std::vector<Point> place_nodes(std::size_t n_total, double side_length, Rng& rng) {
  if (n_total < 2) throw std::invalid_argument("place_nodes: need at least 2 nodes");
  if (!(side_length > 0)) throw std::invalid_argument("place_nodes: side_length must be > 0");
  std::uniform_real_distribution<double> coord(0.0, side_length);
  std::vector<Point> pts(n_total);
  for (Point& pt : pts) {
    pt.x = coord(rng);
    pt.y = coord(rng);
  }
  return pts;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> select_primaries(
    const std::vector<Point>& points, std::size_t p) {
  const std::size_t n = points.size();
  if (p >= n) throw std::invalid_argument("select_primaries: p must be < number of points");

  std::vector<std::size_t> chosen;
  chosen.reserve(p);
  if (p > 0) {
    Point c{0, 0};
    for (const Point& pt : points) {
      c.x += pt.x;
      c.y += pt.y;
    }
    c.x /= static_cast<double>(n);
    c.y /= static_cast<double>(n);

    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = distance(points[i], c);
      if (d > best_d) {  // strict: ties keep the lowest index
        best_d = d;
        best = i;
      }
    }
    chosen.push_back(best);

    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < p) {
      for (std::size_t i = 0; i < n; ++i)
        min_dist[i] = std::min(min_dist[i], distance(points[i], points[chosen.back()]));
      best_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        if (min_dist[i] > best_d) {
          best_d = min_dist[i];
          best = i;
        }
      }
      chosen.push_back(best);
    }
  }

  std::sort(chosen.begin(), chosen.end());
  std::vector<std::size_t> rest;
  rest.reserve(n - p);
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(chosen.begin(), chosen.end(), i)) rest.push_back(i);
  return {std::move(chosen), std::move(rest)};
}

double attenuation_from_geometry(const Point& primary, const Point& secondary,
                                 const PathLossModel& model) {
  if (!(model.reference_distance > 0) || !(model.exponent > 0))
    throw std::invalid_argument("path-loss model needs d0 > 0 and exponent > 0");
  double d = distance(primary, secondary);
  if (d <= model.reference_distance) return 1.0;  // clamp, covers d = 0
  return std::pow(d / model.reference_distance, -0.5 * model.exponent);
}

std::vector<std::pair<int, int>> check_identifiability(
    const std::vector<std::vector<double>>& attenuation, double tol) {
  const std::size_t np = attenuation.size();
  if (np == 0) throw std::invalid_argument("check_identifiability: empty matrix");
  const std::size_t ns = attenuation[0].size();
  for (const auto& row : attenuation) {
    if (row.size() != ns) throw std::invalid_argument("check_identifiability: ragged matrix");
    for (double a : row)
      if (!(a > 0)) throw std::invalid_argument("check_identifiability: coefficients must be > 0");
  }

  // Hypothesis 0 compensates by nothing, i.e. an all-ones profile.
  auto profile = [&](int h, std::size_t s) {
    return h == 0 ? 1.0 : attenuation[static_cast<std::size_t>(h - 1)][s];
  };

  std::vector<std::pair<int, int>> flagged;
  for (int j = 0; j <= static_cast<int>(np); ++j) {
    for (int p = j + 1; p <= static_cast<int>(np); ++p) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (std::size_t s = 0; s < ns; ++s) {
        double r = profile(p, s) / profile(j, s);
        r *= r;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      if (hi / lo - 1.0 <= tol) flagged.emplace_back(j, p);
    }
  }
  return flagged;
}

Scenario make_scenario(std::uint64_t seed, std::size_t primaries,
                       std::size_t secondaries, double side_length,
                       const PathLossModel& model, double noise_std) {
  Rng rng(seed);
  std::vector<Point> pts = place_nodes(primaries + secondaries, side_length, rng);
  auto [prim_idx, sec_idx] = select_primaries(pts, primaries);

  Scenario s;
  s.side_length = side_length;
  s.noise_std = noise_std;
  for (std::size_t i : prim_idx) s.primary_positions.push_back(pts[i]);
  for (std::size_t i : sec_idx) s.secondary_positions.push_back(pts[i]);
  s.attenuation.assign(primaries, std::vector<double>(secondaries));
  for (std::size_t p = 0; p < primaries; ++p)
    for (std::size_t q = 0; q < secondaries; ++q)
      s.attenuation[p][q] = attenuation_from_geometry(s.primary_positions[p],
                                                      s.secondary_positions[q], model);
  s.validate();
  auto ambiguous = check_identifiability(s.attenuation);
  if (!ambiguous.empty()) {
    std::ostringstream msg;
    msg << "scenario seed " << seed << " is not identifiable: hypothesis pairs";
    for (auto [a, b] : ambiguous) msg << " (" << a << "," << b << ")";
    msg << " are ambiguous; pick another seed";
    throw std::runtime_error(msg.str());
  }
  return s;
}

void write_scenario(std::ostream& out, const Scenario& s,
                    const std::vector<std::pair<int, int>>* graph_edges) {
  out << "# specsense scenario v1\n";
  out << "[geometry]\n";
  out << "side_length = " << kv::format_real(s.side_length) << "\n";
  out << "primaries = " << s.primaries() << "\n";
  out << "secondaries = " << s.secondaries() << "\n";
  for (std::size_t i = 0; i < s.primaries(); ++i)
    out << "primary_" << i << " = " << kv::format_real(s.primary_positions[i].x) << " "
        << kv::format_real(s.primary_positions[i].y) << "\n";
  for (std::size_t i = 0; i < s.secondaries(); ++i)
    out << "secondary_" << i << " = " << kv::format_real(s.secondary_positions[i].x) << " "
        << kv::format_real(s.secondary_positions[i].y) << "\n";
  out << "[attenuation]\n";
  for (std::size_t p = 0; p < s.primaries(); ++p) {
    out << "row_" << p << " =";
    for (double a : s.attenuation[p]) out << " " << kv::format_real(a);
    out << "\n";
  }
  out << "[noise]\n";
  out << "sigma_n = " << kv::format_real(s.noise_std) << "\n";
  if (graph_edges) {
    out << "[graph]\n";
    for (auto [i, j] : *graph_edges) out << "edge = " << i << " " << j << "\n";
  }
}

ScenarioFile read_scenario(std::istream& in) {
  auto entries = kv::parse(in);
  ScenarioFile f;
  Scenario& s = f.scenario;
  long long np = -1, ns = -1;
  std::vector<std::pair<int, int>> edges;
  bool has_graph = false;

  for (const auto& e : entries) {
    auto where = [&] { return " (line " + std::to_string(e.line) + ")"; };
    if (e.section == "geometry") {
      if (e.key == "side_length") {
        s.side_length = kv::parse_real(e.value);
      } else if (e.key == "primaries") {
        np = kv::parse_int(e.value);
        s.primary_positions.resize(static_cast<std::size_t>(np));
      } else if (e.key == "secondaries") {
        ns = kv::parse_int(e.value);
        s.secondary_positions.resize(static_cast<std::size_t>(ns));
      } else if (e.key.rfind("primary_", 0) == 0 || e.key.rfind("secondary_", 0) == 0) {
        bool prim = e.key.rfind("primary_", 0) == 0;
        std::size_t idx = static_cast<std::size_t>(
            kv::parse_int(e.key.substr(prim ? 8 : 10)));
        auto coords = kv::parse_real_list(e.value);
        if (coords.size() != 2)
          throw std::invalid_argument("expected 'x y' position" + where());
        auto& vec = prim ? s.primary_positions : s.secondary_positions;
        if (idx >= vec.size())
          throw std::invalid_argument("position index out of range" + where());
        vec[idx] = Point{coords[0], coords[1]};
      } else {
        throw std::invalid_argument("unknown geometry key '" + e.key + "'" + where());
      }
    } else if (e.section == "attenuation") {
      if (e.key.rfind("row_", 0) != 0)
        throw std::invalid_argument("unknown attenuation key '" + e.key + "'" + where());
      std::size_t idx = static_cast<std::size_t>(kv::parse_int(e.key.substr(4)));
      if (s.attenuation.size() <= idx) s.attenuation.resize(idx + 1);
      s.attenuation[idx] = kv::parse_real_list(e.value);
    } else if (e.section == "noise") {
      if (e.key != "sigma_n")
        throw std::invalid_argument("unknown noise key '" + e.key + "'" + where());
      s.noise_std = kv::parse_real(e.value);
    } else if (e.section == "graph") {
      if (e.key != "edge")
        throw std::invalid_argument("unknown graph key '" + e.key + "'" + where());
      auto ends = kv::parse_real_list(e.value);
      if (ends.size() != 2)
        throw std::invalid_argument("expected 'edge = i j'" + where());
      edges.emplace_back(static_cast<int>(ends[0]), static_cast<int>(ends[1]));
      has_graph = true;
    } else {
      throw std::invalid_argument("unknown section '" + e.section + "'" + where());
    }
  }
  if (np < 0 || ns < 0)
    throw std::invalid_argument("scenario file missing primaries/secondaries counts");
  s.validate();
  if (has_graph) f.graph_edges = std::move(edges);
  return f;
}

void save_scenario(const std::string& path, const Scenario& s,
                   const std::vector<std::pair<int, int>>* graph_edges) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_scenario(out, s, graph_edges);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return read_scenario(in);
}

}  // namespace specsense
