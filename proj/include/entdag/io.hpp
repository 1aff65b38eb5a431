#pragma once

#include <string>

#include "entdag/solver.hpp"
#include "entdag/types.hpp"

namespace entdag {

// Dataset CSV: first row holds column names, every later row one numeric
// record; comma-separated, '.' decimal separator, UTF-8. Values are written
// with enough digits to round-trip a double exactly.
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const Dataset& data, const std::string& path);

// Graph JSON: {"d": int, "edges": [[from, to], ...]} with 0-based indices.
Digraph read_digraph_json(const std::string& path);
void write_digraph_json(const Digraph& graph, const std::string& path);
Dag read_dag_json(const std::string& path);

// Raw weight matrix as a headerless d x d CSV, full precision.
WeightMatrix read_weights_csv(const std::string& path);
void write_weights_csv(const WeightMatrix& w, const std::string& path);

// SolveReport as JSON: estimate, thresholded graph, per-outer-iteration
// trace, convergence flag, wall time.
void write_report_json(const SolveReport& report, const std::string& path);

// Serialized forms used by the report writer and the CLI, exposed so tests
// and commands can print to stdout without touching the filesystem.
std::string report_to_json(const SolveReport& report);
std::string metrics_to_json(const GraphMetrics& metrics);

}  // namespace entdag
