#ifndef CHORDCYCLES_IO_HPP
#define CHORDCYCLES_IO_HPP

#include <iosfwd>
#include <string>

#include "chordcycles/graph.hpp"

namespace chords {

enum class GraphFormat { edge_list, dimacs };

// edge_list: one "u v" pair per line, 0-based ids, '#' starts a comment.
// dimacs:    "p edge <n> <m>" header, "e u v" lines, 1-based ids, 'c' comments.
// Throws ParseError with a line number on malformed input; an input with no
// edges is an error for edge_list (the format cannot express vertex count).
Graph load_graph(std::istream& in, GraphFormat format, LoadStats* stats = nullptr);
Graph load_graph_file(const std::string& path, GraphFormat format, LoadStats* stats = nullptr);

GraphFormat parse_format(const std::string& name);

void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace chords

#endif
