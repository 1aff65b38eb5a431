#include "entdag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <stdexcept>

namespace entdag {

bool is_acyclic(const BinMatrix& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw std::invalid_argument("adjacency must be square");
  }
  const int d = static_cast<int>(adjacency.rows());
  std::vector<int> in_degree(d, 0);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (adjacency(i, j) != 0) ++in_degree[j];
    }
  }
  std::queue<int> ready;
  for (int j = 0; j < d; ++j) {
    if (in_degree[j] == 0) ready.push(j);
  }
  int consumed = 0;
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop();
    ++consumed;
    for (int v = 0; v < d; ++v) {
      if (adjacency(u, v) != 0 && --in_degree[v] == 0) ready.push(v);
    }
  }
  return consumed == d;
}

std::vector<int> topological_order(const BinMatrix& adjacency) {
  const int d = static_cast<int>(adjacency.rows());
  std::vector<int> in_degree(d, 0);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (adjacency(i, j) != 0) ++in_degree[j];
    }
  }
  std::queue<int> ready;
  for (int j = 0; j < d; ++j) {
    if (in_degree[j] == 0) ready.push(j);
  }
  std::vector<int> order;
  order.reserve(d);
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop();
    order.push_back(u);
    for (int v = 0; v < d; ++v) {
      if (adjacency(u, v) != 0 && --in_degree[v] == 0) ready.push(v);
    }
  }
  if (static_cast<int>(order.size()) != d) {
    throw std::invalid_argument("graph is cyclic; no topological order");
  }
  return order;
}

Digraph threshold(const WeightMatrix& w, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("threshold omega must be > 0");
  const int d = w.d();
  BinMatrix adj = BinMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j && std::abs(w.values()(i, j)) > omega) adj(i, j) = 1;
    }
  }
  return Digraph{std::move(adj)};
}

namespace {

// Any directed cycle found by DFS, as a list of nodes, or empty.
std::vector<int> find_cycle(const BinMatrix& adj) {
  const int d = static_cast<int>(adj.rows());
  std::vector<int> color(d, 0);  // 0 white, 1 on stack, 2 done
  std::vector<int> parent(d, -1);

  for (int root = 0; root < d; ++root) {
    if (color[root] != 0) continue;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
      const int u = stack.back();
      if (color[u] == 0) color[u] = 1;
      bool descended = false;
      for (int v = 0; v < d; ++v) {
        if (adj(u, v) == 0) continue;
        if (color[v] == 1) {
          // Back edge u -> v closes a cycle v -> ... -> u -> v.
          std::vector<int> cycle = {v};
          for (int w = u; w != v; w = parent[w]) cycle.push_back(w);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;
        }
        if (color[v] == 0) {
          parent[v] = u;
          stack.push_back(v);
          descended = true;
          break;
        }
      }
      if (!descended) {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

std::pair<Digraph, std::vector<std::pair<int, int>>> drop_cycle_edges(
    const Digraph& g, const WeightMatrix& w) {
  if (g.d() != w.d()) throw std::invalid_argument("dimension mismatch");
  BinMatrix adj = g.adjacency;
  std::vector<std::pair<int, int>> dropped;
  while (true) {
    const std::vector<int> cycle = find_cycle(adj);
    if (cycle.empty()) break;
    int best_from = -1, best_to = -1;
    double best_mag = 0.0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int from = cycle[k];
      const int to = cycle[(k + 1) % cycle.size()];
      const double mag = std::abs(w.values()(from, to));
      if (best_from < 0 || mag < best_mag) {
        best_from = from;
        best_to = to;
        best_mag = mag;
      }
    }
    adj(best_from, best_to) = 0;
    dropped.emplace_back(best_from, best_to);
  }
  return {Digraph{std::move(adj)}, std::move(dropped)};
}

int structural_hamming_distance(const Digraph& est, const Digraph& truth) {
  if (est.d() != truth.d()) throw std::invalid_argument("dimension mismatch");
  const int d = est.d();
  int shd = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const int e_ij = est.adjacency(i, j), e_ji = est.adjacency(j, i);
      const int t_ij = truth.adjacency(i, j), t_ji = truth.adjacency(j, i);
      if (e_ij == t_ij && e_ji == t_ji) continue;
      if (e_ij + e_ji == 1 && t_ij + t_ji == 1) {
        ++shd;  // single edge on both sides, opposite orientation
      } else {
        shd += std::abs(e_ij - t_ij) + std::abs(e_ji - t_ji);
      }
    }
  }
  return shd;
}

int structural_hamming_distance(const Digraph& est, const Dag& truth) {
  return structural_hamming_distance(est, truth.graph());
}

std::pair<double, double> fdr_tpr(const Digraph& est, const Dag& truth) {
  if (est.d() != truth.d()) throw std::invalid_argument("dimension mismatch");
  const int d = est.d();
  int tp = 0, predicted = 0, expected = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int e = est.adjacency(i, j), t = truth.adjacency()(i, j);
      predicted += e;
      expected += t;
      tp += e & t;
    }
  }
  const double fdr = predicted > 0 ? static_cast<double>(predicted - tp) / predicted : 0.0;
  const double tpr = expected > 0 ? static_cast<double>(tp) / expected : 1.0;
  return {fdr, tpr};
}

GraphMetrics evaluate_graph(const Digraph& est, const Dag& truth) {
  GraphMetrics m;
  m.shd = structural_hamming_distance(est, truth);
  std::tie(m.fdr, m.tpr) = fdr_tpr(est, truth);
  m.predicted_edges = est.edge_count();
  m.true_edges = truth.edge_count();
  return m;
}

}  // namespace entdag
