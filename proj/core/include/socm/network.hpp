#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "socm/rng.hpp"

namespace socm {

enum class Boundary { open, periodic };

// Undirected simple graph over an n_side x n_side grid of traders.
// Node ids are row-major: id = row * n_side + col. Adjacency lists are kept
// sorted ascending, symmetric, loop-free and duplicate-free.
struct NetworkTopology {
  int n_side = 0;
  Boundary boundary = Boundary::open;
  double rewire_prob = 0.0;
  std::vector<std::vector<int>> adjacency;
  std::size_t edge_count = 0;

  long rewires_applied = 0;  // edges whose far endpoint was moved
  long rewire_skips = 0;     // rewiring draws that found no legal target

  int node_count() const { return n_side * n_side; }
  int degree(int node) const { return static_cast<int>(adjacency[node].size()); }
  bool has_edge(int i, int j) const;
};

// Square lattice with von Neumann neighborhoods. With open boundaries border
// nodes simply lack the outside neighbors (interior degree 4, edges 3,
// corners 2); periodic wraps around. n_side < 2 throws.
NetworkTopology build_regular_lattice(int n_side, Boundary boundary = Boundary::open);

// Watts-Strogatz style rewiring. Every edge of the input is considered once,
// in ascending (i, j) order, and with probability p keeps its lower-id
// endpoint while the other end moves to a uniformly chosen node that is
// neither the kept endpoint nor one of its current neighbors. Edge count is
// conserved; an edge with no legal target is left untouched and counted in
// rewire_skips.
NetworkTopology rewire(NetworkTopology topology, double p, RandomSource& source);

struct DegreeStatistics {
  double mean = 0.0;
  int min = 0;
  int max = 0;
};

DegreeStatistics degree_statistics(const NetworkTopology& topology);

// One "i j" line per edge with i < j, in ascending order.
void write_edge_list(const NetworkTopology& topology, std::ostream& out);

}  // namespace socm
