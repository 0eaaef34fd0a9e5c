#include "bipgirth/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bipgirth/errors.hpp"

namespace bipgirth {

namespace {

/// Splits a line into whitespace tokens after stripping a '#' comment.
std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;) tokens.push_back(tok);
  return tokens;
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

std::uint64_t parse_count(const std::string& tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw GraphError(where(line_no) + "expected a non-negative integer, got '" + tok + "'");
  }
  return value;
}

VertexId parse_index(const std::string& tok, std::size_t line_no) {
  std::uint64_t v = parse_count(tok, line_no);
  if (v > 0xfffffffeULL) throw GraphError(where(line_no) + "index too large: " + tok);
  return static_cast<VertexId>(v);
}

}  // namespace

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "bip " << g.size_a() << ' ' << g.size_b() << ' ' << g.edge_count() << '\n';
  for (const auto& [a, b] : g.edges()) out << "e " << a << ' ' << b << '\n';
}

BipartiteGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n_a = 0, n_b = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "bip") {
        throw GraphError(where(line_no) + "expected header 'bip <nA> <nB> <m>'");
      }
      n_a = parse_count(tok[1], line_no);
      n_b = parse_count(tok[2], line_no);
      m = parse_count(tok[3], line_no);
      have_header = true;
      continue;
    }
    if (tok.size() != 3 || tok[0] != "e") {
      throw GraphError(where(line_no) + "expected edge line 'e <a> <b>'");
    }
    VertexId a = parse_index(tok[1], line_no);
    VertexId b = parse_index(tok[2], line_no);
    if (a >= n_a || b >= n_b) {
      throw GraphError(where(line_no) + "edge (" + tok[1] + ", " + tok[2] + ") out of range");
    }
    edges.emplace_back(a, b);
  }
  if (!have_header) throw GraphError("missing 'bip' header");
  if (edges.size() != m) {
    throw GraphError("header declares " + std::to_string(m) + " edges but " +
                     std::to_string(edges.size()) + " edge lines follow");
  }
  return BipartiteGraph(n_a, n_b, edges);
}

void write_selection(std::ostream& out, const InducedSelection& sel) {
  out << "sel " << sel.a.size() << ' ' << sel.b.size() << '\n';
  for (VertexId a : sel.a) out << "a " << a << '\n';
  for (VertexId b : sel.b) out << "b " << b << '\n';
}

InducedSelection read_selection(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n_a = 0, n_b = 0;
  std::vector<VertexId> a, b;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 3 || tok[0] != "sel") {
        throw GraphError(where(line_no) + "expected header 'sel <nA> <nB>'");
      }
      n_a = parse_count(tok[1], line_no);
      n_b = parse_count(tok[2], line_no);
      have_header = true;
      continue;
    }
    if (tok.size() != 2 || (tok[0] != "a" && tok[0] != "b")) {
      throw GraphError(where(line_no) + "expected 'a <index>' or 'b <index>'");
    }
    (tok[0] == "a" ? a : b).push_back(parse_index(tok[1], line_no));
  }
  if (!have_header) throw GraphError("missing 'sel' header");
  if (a.size() != n_a || b.size() != n_b) {
    throw GraphError("selection header counts do not match the listed vertices");
  }
  return InducedSelection{std::move(a), std::move(b)};
}

void write_blocks(std::ostream& out, const BlockList& blocks) {
  out << "blocks " << blocks.size() << '\n';
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (VertexId b : blocks[i]) out << "block " << i << ' ' << b << '\n';
  }
}

BlockList read_blocks(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  BlockList blocks;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() == 2 && tok[0] == "blocks") {
      auto r = parse_count(tok[1], line_no);
      if (r < blocks.size()) throw GraphError(where(line_no) + "block count below listed blocks");
      blocks.resize(r);
      continue;
    }
    if (tok.size() != 3 || tok[0] != "block") {
      throw GraphError(where(line_no) + "expected 'block <i> <bIndex>'");
    }
    auto i = parse_count(tok[1], line_no);
    if (i >= 1'000'000) throw GraphError(where(line_no) + "block index too large");
    if (i >= blocks.size()) blocks.resize(i + 1);
    blocks[i].push_back(parse_index(tok[2], line_no));
  }
  return blocks;
}

BipartiteGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  try {
    return read_graph(in);
  } catch (const GraphError& e) {
    throw GraphError(path + ": " + e.what());
  }
}

void save_graph(const std::string& path, const BipartiteGraph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file '" + path + "'");
  write_graph(out, g);
}

}  // namespace bipgirth
