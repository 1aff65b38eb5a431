#pragma once

#include <utility>
#include <vector>

#include "entdag/types.hpp"

namespace entdag {

// True iff Kahn's algorithm consumes every node.
bool is_acyclic(const BinMatrix& adjacency);

// Topological order of a DAG adjacency; throws if the graph is cyclic.
std::vector<int> topological_order(const BinMatrix& adjacency);

// Keeps entries with |w(i,j)| > omega. The result may contain cycles;
// callers decide whether to reject or repair (see drop_cycle_edges).
Digraph threshold(const WeightMatrix& w, double omega);

// Greedily removes the smallest-|w| edge on each residual cycle until the
// graph is acyclic. Returns the repaired graph and the dropped edges.
std::pair<Digraph, std::vector<std::pair<int, int>>> drop_cycle_edges(
    const Digraph& g, const WeightMatrix& w);

// Edge insertions + deletions + reversals transforming est into truth.
// A reversed edge costs 1, not one deletion plus one insertion;
// conventions differ across the literature by exactly those reversals.
int structural_hamming_distance(const Digraph& est, const Digraph& truth);
int structural_hamming_distance(const Digraph& est, const Dag& truth);

// FDR counts reversed edges as false discoveries; FDR of an empty
// prediction is 0 so sweep aggregation never divides by zero.
std::pair<double, double> fdr_tpr(const Digraph& est, const Dag& truth);

GraphMetrics evaluate_graph(const Digraph& est, const Dag& truth);

}  // namespace entdag
