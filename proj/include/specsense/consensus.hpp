#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "specsense/scenario.hpp"

namespace specsense {

// Undirected communication graph over the secondary nodes plus the symmetric
// doubly-stochastic Metropolis weight matrix used for synchronous averaging.
struct ConsensusGraph {
  std::size_t n = 0;
  std::vector<std::pair<int, int>> edges;        // i < j
  std::vector<std::vector<int>> neighbors;       // adjacency lists
  std::vector<std::vector<double>> weights;      // n x n
};

enum class ConsensusMode {
  ideal,      // every node receives the exact arithmetic mean
  iterative,  // synchronous rounds v <- W v until within tolerance of the mean
};

struct ConsensusConfig {
  ConsensusMode mode = ConsensusMode::ideal;
  double tolerance = 1e-9;     // max per-node, per-component deviation
  std::size_t max_rounds = 0;  // 0 means 10 * n^2
};

// Random geometric graph: edge iff distance <= radius. A disconnected draw is
// repaired by repeatedly doubling the radius. Metropolis weights:
// w_ij = 1 / (1 + max(deg_i, deg_j)) on edges, diagonal absorbs the rest.
ConsensusGraph build_graph(const std::vector<Point>& positions, double radius);

// Graph from an explicit edge list (e.g. a scenario file's [graph] section).
// Throws if the edges do not form a connected graph on n nodes.
ConsensusGraph graph_from_edges(std::size_t n,
                                const std::vector<std::pair<int, int>>& edges);

bool is_connected(std::size_t n, const std::vector<std::pair<int, int>>& edges);

// One synchronous averaging round: out = weights * values.
std::vector<std::vector<double>> consensus_step(
    const ConsensusGraph& graph, const std::vector<std::vector<double>>& values);

struct ConsensusResult {
  std::vector<std::vector<double>> values;  // one vector per node
  std::size_t rounds = 0;
};

// Distributed average of per-node vectors (componentwise). In iterative mode
// the stopping check compares against the conserved network mean and is capped
// at max_rounds; rounds used are reported.
ConsensusResult average(const ConsensusGraph& graph,
                        const std::vector<std::vector<double>>& values,
                        const ConsensusConfig& config);

}  // namespace specsense
