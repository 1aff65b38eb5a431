#include "entdag/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

namespace entdag {
namespace {

using nlohmann::json;

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Splits one CSV line at commas. The formats here never quote fields, so a
// plain scan suffices; embedded commas in column names are not supported.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& field, const std::string& path,
                    int line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  // Tolerate surrounding spaces but nothing else.
  while (first != last && *first == ' ') ++first;
  while (last != first && *(last - 1) == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                             ": not a number: '" + field + "'");
  }
  return value;
}

// Shortest representation that parses back to the same double.
std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value,
                    std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

// Strips one trailing '\r' so files with Windows line endings parse too.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

Matrix read_numeric_rows(std::istream& in, const std::string& path,
                         int expected_cols, int first_line_no) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = first_line_no;
  while (next_line(in, line)) {
    if (line.empty()) {
      ++line_no;
      continue;  // ignore blank lines (commonly a trailing newline)
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (expected_cols >= 0 &&
        static_cast<int>(fields.size()) != expected_cols) {
      throw std::runtime_error(
          path + ":" + std::to_string(line_no) + ": expected " +
          std::to_string(expected_cols) + " fields, got " +
          std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) {
      row.push_back(parse_double(f, path, line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": ragged row");
    }
    rows.push_back(std::move(row));
    ++line_no;
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");
  Matrix values(static_cast<int>(rows.size()),
                static_cast<int>(rows.front().size()));
  for (int i = 0; i < values.rows(); ++i) {
    for (int j = 0; j < values.cols(); ++j) {
      values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return values;
}

json parse_json_file(const std::string& path) {
  std::ifstream in = open_for_read(path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

Digraph digraph_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("d") || !j.contains("edges")) {
    throw std::runtime_error(path + ": expected {\"d\": ..., \"edges\": ...}");
  }
  const int d = j.at("d").get<int>();
  if (d < 1) throw std::runtime_error(path + ": d must be positive");
  std::vector<std::pair<int, int>> edges;
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::runtime_error(path + ": edge must be a [from, to] pair");
    }
    const int from = e.at(0).get<int>();
    const int to = e.at(1).get<int>();
    if (from < 0 || from >= d || to < 0 || to >= d) {
      throw std::runtime_error(path + ": edge index out of range: [" +
                               std::to_string(from) + ", " +
                               std::to_string(to) + "]");
    }
    edges.emplace_back(from, to);
  }
  return Digraph::from_edges(d, edges);
}

json digraph_to_json(const Digraph& graph) {
  json edges = json::array();
  for (const auto& [from, to] : graph.edges()) {
    edges.push_back(json::array({from, to}));
  }
  return json{{"d", graph.d()}, {"edges", std::move(edges)}};
}

json report_to_json_value(const SolveReport& report) {
  json trace = json::array();
  for (const OuterIterRecord& rec : report.trace) {
    trace.push_back(json{{"iter", rec.iter},
                         {"loss_value", rec.loss_value},
                         {"h_value", rec.h_value},
                         {"rho", rec.rho},
                         {"alpha", rec.alpha},
                         {"inner_iterations", rec.inner_iterations}});
  }
  json w_est = json::array();
  const Matrix& w = report.w_est.values();
  for (int i = 0; i < w.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < w.cols(); ++j) row.push_back(w(i, j));
    w_est.push_back(std::move(row));
  }
  return json{{"w_est", std::move(w_est)},
              {"est_graph", digraph_to_json(report.est_graph)},
              {"trace", std::move(trace)},
              {"converged", report.converged},
              {"wall_time", report.wall_time}};
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::string header;
  if (!next_line(in, header) || header.empty()) {
    throw std::runtime_error(path + ": missing header row");
  }
  std::vector<std::string> names = split_csv_line(header);
  Matrix values =
      read_numeric_rows(in, path, static_cast<int>(names.size()), 2);
  return Dataset(std::move(values), std::move(names));
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out = open_for_write(path);
  const std::vector<std::string>& names = data.names();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j > 0) out << ',';
    out << names[j];
  }
  out << '\n';
  const Matrix& values = data.values();
  for (int i = 0; i < values.rows(); ++i) {
    for (int j = 0; j < values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
  finish_write(out, path);
}

Digraph read_digraph_json(const std::string& path) {
  return digraph_from_json(parse_json_file(path), path);
}

void write_digraph_json(const Digraph& graph, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << digraph_to_json(graph).dump(2) << '\n';
  finish_write(out, path);
}

Dag read_dag_json(const std::string& path) {
  Digraph graph = read_digraph_json(path);
  try {
    return Dag(std::move(graph.adjacency));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

WeightMatrix read_weights_csv(const std::string& path) {
  std::ifstream in = open_for_read(path);
  Matrix w = read_numeric_rows(in, path, -1, 1);
  if (w.rows() != w.cols()) {
    throw std::runtime_error(path + ": weight matrix must be square, got " +
                             std::to_string(w.rows()) + "x" +
                             std::to_string(w.cols()));
  }
  return WeightMatrix(std::move(w));
}

void write_weights_csv(const WeightMatrix& w, const std::string& path) {
  std::ofstream out = open_for_write(path);
  const Matrix& values = w.values();
  for (int i = 0; i < values.rows(); ++i) {
    for (int j = 0; j < values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
  finish_write(out, path);
}

void write_report_json(const SolveReport& report, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << report_to_json_value(report).dump(2) << '\n';
  finish_write(out, path);
}

std::string report_to_json(const SolveReport& report) {
  return report_to_json_value(report).dump(2);
}

std::string metrics_to_json(const GraphMetrics& metrics) {
  const json j{{"shd", metrics.shd},
               {"fdr", metrics.fdr},
               {"tpr", metrics.tpr},
               {"predicted_edges", metrics.predicted_edges},
               {"true_edges", metrics.true_edges}};
  return j.dump(2);
}

}  // namespace entdag
