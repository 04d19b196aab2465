#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_set>

#include "sgm/errors.hpp"
#include "sgm/io.hpp"

namespace sgm::bench {

namespace {

// Splits a data line into whitespace-separated tokens. Returns false for
// blank and comment lines.
bool tokens_of(const std::string& line, std::vector<std::string>& tokens) {
  tokens.clear();
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tokens.empty() && tok.front() == '#') return false;
    tokens.push_back(tok);
  }
  return !tokens.empty();
}

}  // namespace

Vertex IdTable::intern(const std::string& name) {
  auto [it, inserted] = index_.try_emplace(name, static_cast<Vertex>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

std::optional<Vertex> IdTable::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.close();
  if (!out) throw IoError("error writing '" + path + "'");
}

EdgeList parse_edge_list(const std::string& text) {
  static const std::regex header(R"(Nodes:\s*(\d+)\s+Edges:\s*(\d+))");
  EdgeList out;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    ++out.lines;
    if (!tokens_of(line, tokens)) {
      std::smatch m;
      if (!out.declared_nodes && std::regex_search(line, m, header)) {
        out.declared_nodes = std::stoull(m[1].str());
        out.declared_edges = std::stoull(m[2].str());
      }
      continue;
    }
    if (tokens.size() != 2) {
      throw IoError("edge list line " + std::to_string(out.lines) + ": expected 2 tokens, found " +
                    std::to_string(tokens.size()));
    }
    const Vertex u = out.ids.intern(tokens[0]);
    const Vertex v = out.ids.intern(tokens[1]);
    if (u == v) {
      ++out.self_loops;
      continue;
    }
    const std::uint64_t key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
    if (!seen.insert(key).second) {
      ++out.duplicates;
      continue;
    }
    edges.emplace_back(u, v);
  }
  out.graph = build_graph(out.ids.size(), edges);
  return out;
}

EdgeList ingest_edge_list(const std::string& path) { return parse_edge_list(read_file(path)); }

std::vector<std::pair<Vertex, Vertex>> parse_pairs(const std::string& text, IdTable& left,
                                                   IdTable& right) {
  std::vector<std::pair<Vertex, Vertex>> out;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> tokens;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokens_of(line, tokens)) continue;
    if (tokens.size() != 2) {
      throw IoError("pair list line " + std::to_string(line_no) + ": expected 2 tokens, found " +
                    std::to_string(tokens.size()));
    }
    out.emplace_back(left.intern(tokens[0]), right.intern(tokens[1]));
  }
  return out;
}

}  // namespace sgm::bench
