#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgm/collapse.hpp"
#include "sgm/graph.hpp"

namespace sgm::bench {

// External vertex names in first-appearance order.
class IdTable {
 public:
  Vertex intern(const std::string& name);
  std::optional<Vertex> find(const std::string& name) const;
  const std::string& name(Vertex v) const { return names_[v]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
};

struct EdgeList {
  Graph graph;
  IdTable ids;
  std::size_t lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  // From a "# Nodes: N Edges: E" header, when present.
  std::optional<std::size_t> declared_nodes;
  std::optional<std::size_t> declared_edges;
};

// '#' lines are comments; every other nonblank line must hold exactly two
// whitespace-separated tokens. Throws IoError (with the line number) on a
// malformed line or an unreadable file.
EdgeList parse_edge_list(const std::string& text);
EdgeList ingest_edge_list(const std::string& path);

// Pairs of external names, one per line, same comment rules. Names missing
// from `ids` are interned.
std::vector<std::pair<Vertex, Vertex>> parse_pairs(const std::string& text, IdTable& left,
                                                   IdTable& right);

std::string read_file(const std::string& path);
// Creates parent directories. Throws IoError on failure.
void write_file(const std::string& path, const std::string& contents);

struct CsvRow {
  std::string algorithm;
  std::size_t n = 0;
  double p = 0.0;
  double s = 0.0;
  double beta = 0.0;
  std::string trial_or_median;  // trial index, or "median"
  double accuracy = 0.0;
  std::optional<double> runtime_ms;
  std::uint64_t seed = 0;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline constexpr const char* kCsvHeader =
    "algorithm,n,p,s,beta,trial_or_median,accuracy,runtime_ms,seed";

// Shortest text that reads back as the same double.
std::string format_double(double x);

std::vector<CsvRow> csv_rows(const SweepResult& sweep);
std::string to_csv(const std::vector<CsvRow>& rows);
std::vector<CsvRow> parse_csv(const std::string& text);

// One polyline per curve. Throws DomainError when there is nothing to draw.
std::string to_svg(const std::vector<Curve>& curves, const std::string& x_label);

// Both throw DomainError for an empty sweep before touching the file system.
void emit_csv(const SweepResult& sweep, const std::string& path);
void emit_svg(const std::vector<Curve>& curves, const std::string& x_label,
              const std::string& path);

}  // namespace sgm::bench
