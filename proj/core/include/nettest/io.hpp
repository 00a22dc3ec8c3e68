#ifndef NETTEST_IO_HPP
#define NETTEST_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "nettest/graph.hpp"

namespace nettest {

// Sample files are JSONL: one graph per line as
//   {"m": <int>, "edges": [[i, j], ...]}  with 0 <= i < j < m.
// Validation is strict: malformed lines, out-of-order pairs, and duplicate
// edges are rejected with the offending line number.
std::vector<Graph> parse_samples(std::istream& in);
std::vector<Graph> read_samples(const std::string& path);

void emit_samples(std::ostream& out, const std::vector<Graph>& graphs);
void write_samples(const std::string& path, const std::vector<Graph>& graphs);

}  // namespace nettest

#endif
