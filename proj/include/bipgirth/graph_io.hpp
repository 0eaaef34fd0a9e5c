#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bipgirth/graph.hpp"

namespace bipgirth {

// Graph text format:
//   bip <nA> <nB> <m>
//   e <a> <b>          (m lines, 0-based)
// '#' starts a comment anywhere on a line; blank lines are ignored.
// The writer emits edges sorted by (a, b).
void write_graph(std::ostream& out, const BipartiteGraph& g);
BipartiteGraph read_graph(std::istream& in);

// Selection (vertex-list) format:
//   sel <|A1|> <|B1|>
//   a <index> ...      then   b <index> ...
void write_selection(std::ostream& out, const InducedSelection& sel);
InducedSelection read_selection(std::istream& in);

// Block partition sidecar: optional `blocks <r>` header, then `block <i> <bIndex>`
// lines. Without the header the block count is one more than the largest i.
using BlockList = std::vector<std::vector<VertexId>>;
void write_blocks(std::ostream& out, const BlockList& blocks);
BlockList read_blocks(std::istream& in);

BipartiteGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const BipartiteGraph& g);

}  // namespace bipgirth
