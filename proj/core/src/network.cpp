#include "socm/network.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace socm {

bool NetworkTopology::has_edge(int i, int j) const {
  const auto& nbrs = adjacency[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

NetworkTopology build_regular_lattice(int n_side, Boundary boundary) {
  if (n_side < 2) throw std::invalid_argument("build_regular_lattice: n_side < 2");

  NetworkTopology topo;
  topo.n_side = n_side;
  topo.boundary = boundary;
  const int n = n_side * n_side;
  topo.adjacency.assign(n, {});

  auto id = [n_side](int row, int col) { return row * n_side + col; };

  for (int row = 0; row < n_side; ++row) {
    for (int col = 0; col < n_side; ++col) {
      const int node = id(row, col);
      auto link = [&](int r, int c) {
        if (boundary == Boundary::open) {
          if (r < 0 || r >= n_side || c < 0 || c >= n_side) return;
        } else {
          r = (r + n_side) % n_side;
          c = (c + n_side) % n_side;
        }
        const int other = id(r, c);
        if (other == node) return;
        auto& nbrs = topo.adjacency[node];
        auto pos = std::lower_bound(nbrs.begin(), nbrs.end(), other);
        if (pos == nbrs.end() || *pos != other) nbrs.insert(pos, other);
      };
      link(row - 1, col);
      link(row + 1, col);
      link(row, col - 1);
      link(row, col + 1);
    }
  }

  std::size_t degree_sum = 0;
  for (const auto& nbrs : topo.adjacency) degree_sum += nbrs.size();
  topo.edge_count = degree_sum / 2;
  return topo;
}

NetworkTopology rewire(NetworkTopology topology, double p, RandomSource& source) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("rewire: p outside [0, 1]");
  topology.rewire_prob = p;
  if (p == 0.0) return topology;

  const int n = topology.node_count();

  // Snapshot of the original edges; rewiring only ever moves these, one by one.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(topology.edge_count);
  for (int i = 0; i < n; ++i)
    for (int j : topology.adjacency[i])
      if (j > i) edges.emplace_back(i, j);

  auto erase_neighbor = [&](int node, int nbr) {
    auto& nbrs = topology.adjacency[node];
    nbrs.erase(std::lower_bound(nbrs.begin(), nbrs.end(), nbr));
  };
  auto insert_neighbor = [&](int node, int nbr) {
    auto& nbrs = topology.adjacency[node];
    nbrs.insert(std::lower_bound(nbrs.begin(), nbrs.end(), nbr), nbr);
  };

  for (const auto& [keep, moved] : edges) {
    if (source.uniform(0.0, 1.0) >= p) continue;

    // Legal new endpoints: every node except `keep` and its current neighbors
    // (which include `moved`), collected in ascending id order.
    std::vector<int> pool;
    pool.reserve(n);
    const auto& keep_nbrs = topology.adjacency[keep];
    std::size_t cursor = 0;
    for (int candidate = 0; candidate < n; ++candidate) {
      if (candidate == keep) continue;
      while (cursor < keep_nbrs.size() && keep_nbrs[cursor] < candidate) ++cursor;
      if (cursor < keep_nbrs.size() && keep_nbrs[cursor] == candidate) continue;
      pool.push_back(candidate);
    }
    if (pool.empty()) {
      ++topology.rewire_skips;
      continue;
    }

    const int target = pool[static_cast<std::size_t>(
        source.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
    erase_neighbor(keep, moved);
    erase_neighbor(moved, keep);
    insert_neighbor(keep, target);
    insert_neighbor(target, keep);
    ++topology.rewires_applied;
  }
  return topology;
}

DegreeStatistics degree_statistics(const NetworkTopology& topology) {
  DegreeStatistics stats;
  if (topology.adjacency.empty()) return stats;
  std::size_t degree_sum = 0;
  stats.min = topology.degree(0);
  stats.max = stats.min;
  for (int node = 0; node < topology.node_count(); ++node) {
    const int d = topology.degree(node);
    degree_sum += static_cast<std::size_t>(d);
    stats.min = std::min(stats.min, d);
    stats.max = std::max(stats.max, d);
  }
  stats.mean = static_cast<double>(degree_sum) / static_cast<double>(topology.node_count());
  return stats;
}

void write_edge_list(const NetworkTopology& topology, std::ostream& out) {
  for (int i = 0; i < topology.node_count(); ++i)
    for (int j : topology.adjacency[i])
      if (j > i) out << i << ' ' << j << '\n';
}

}  // namespace socm
