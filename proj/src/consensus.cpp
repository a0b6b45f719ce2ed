#include "specsense/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specsense {

namespace {

ConsensusGraph finish_graph(std::size_t n, std::vector<std::pair<int, int>> edges) {
  ConsensusGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.neighbors.assign(n, {});
  for (auto [i, j] : g.edges) {
    g.neighbors[static_cast<std::size_t>(i)].push_back(j);
    g.neighbors[static_cast<std::size_t>(j)].push_back(i);
  }
  g.weights.assign(n, std::vector<double>(n, 0.0));
  for (auto [i, j] : g.edges) {
    auto di = g.neighbors[static_cast<std::size_t>(i)].size();
    auto dj = g.neighbors[static_cast<std::size_t>(j)].size();
    double w = 1.0 / (1.0 + static_cast<double>(std::max(di, dj)));
    g.weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w;
    g.weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = w;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += g.weights[i][j];
    g.weights[i][i] = 1.0 - off;
  }
  return g;
}

void check_dimensions(const ConsensusGraph& graph,
                      const std::vector<std::vector<double>>& values) {
  if (values.size() != graph.n)
    throw std::invalid_argument("consensus: one value vector per node required");
  if (values.empty()) throw std::invalid_argument("consensus: empty input");
  const std::size_t dim = values[0].size();
  for (const auto& v : values)
    if (v.size() != dim)
      throw std::invalid_argument("consensus: value dimension mismatch across nodes");
}

}  // namespace

bool is_connected(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : edges) {
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

ConsensusGraph build_graph(const std::vector<Point>& positions, double radius) {
  const std::size_t n = positions.size();
  if (n < 2) throw std::invalid_argument("build_graph: need at least 2 nodes");
  if (!(radius > 0)) throw std::invalid_argument("build_graph: radius must be > 0");

  double r = radius;
  std::vector<std::pair<int, int>> edges;
  for (;;) {
    edges.clear();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (distance(positions[i], positions[j]) <= r)
          edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    if (is_connected(n, edges)) break;
    r *= 2.0;  // repair disconnected draws
  }
  return finish_graph(n, std::move(edges));
}

ConsensusGraph graph_from_edges(std::size_t n,
                                const std::vector<std::pair<int, int>>& edges) {
  if (n < 2) throw std::invalid_argument("graph_from_edges: need at least 2 nodes");
  std::vector<std::pair<int, int>> normalized;
  normalized.reserve(edges.size());
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= static_cast<int>(n) || j >= static_cast<int>(n) || i == j)
      throw std::invalid_argument("graph_from_edges: invalid edge");
    normalized.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
  if (!is_connected(n, normalized))
    throw std::invalid_argument("graph_from_edges: graph is not connected");
  return finish_graph(n, std::move(normalized));
}

std::vector<std::vector<double>> consensus_step(
    const ConsensusGraph& graph, const std::vector<std::vector<double>>& values) {
  check_dimensions(graph, values);
  const std::size_t dim = values[0].size();
  std::vector<std::vector<double>> out(graph.n, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < graph.n; ++i) {
    // self term plus neighbors; non-neighbor weights are zero
    for (std::size_t d = 0; d < dim; ++d)
      out[i][d] = graph.weights[i][i] * values[i][d];
    for (int jj : graph.neighbors[i]) {
      auto j = static_cast<std::size_t>(jj);
      const double w = graph.weights[i][j];
      for (std::size_t d = 0; d < dim; ++d) out[i][d] += w * values[j][d];
    }
  }
  return out;
}

ConsensusResult average(const ConsensusGraph& graph,
                        const std::vector<std::vector<double>>& values,
                        const ConsensusConfig& config) {
  check_dimensions(graph, values);
  if (!(config.tolerance > 0))
    throw std::invalid_argument("consensus: tolerance must be > 0");
  const std::size_t dim = values[0].size();

  std::vector<double> mean(dim, 0.0);
  for (const auto& v : values)
    for (std::size_t d = 0; d < dim; ++d) mean[d] += v[d];
  for (double& m : mean) m /= static_cast<double>(graph.n);

  ConsensusResult res;
  if (config.mode == ConsensusMode::ideal) {
    res.values.assign(graph.n, mean);
    return res;
  }

  const std::size_t cap =
      config.max_rounds ? config.max_rounds : 10 * graph.n * graph.n;
  auto converged = [&](const std::vector<std::vector<double>>& v) {
    for (std::size_t i = 0; i < graph.n; ++i)
      for (std::size_t d = 0; d < dim; ++d)
        if (std::abs(v[i][d] - mean[d]) > config.tolerance) return false;
    return true;
  };

  res.values = values;
  while (res.rounds < cap && !converged(res.values)) {
    res.values = consensus_step(graph, res.values);
    ++res.rounds;
  }
  return res;
}

}  // namespace specsense
