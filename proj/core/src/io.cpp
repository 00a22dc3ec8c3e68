#include "nettest/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nettest {

namespace {

using nlohmann::json;

Graph parse_line(const std::string& line, std::size_t line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  if (!j.is_object() || !j.contains("m") || !j.contains("edges"))
    throw ParseError("expected an object with fields \"m\" and \"edges\"",
                     line_number);
  if (!j["m"].is_number_integer() || j["m"].get<long long>() < 1)
    throw ParseError("\"m\" must be a positive integer", line_number);
  const int m = j["m"].get<int>();
  if (!j["edges"].is_array())
    throw ParseError("\"edges\" must be an array of pairs", line_number);

  Graph g(m);
  for (const json& pair : j["edges"]) {
    if (!pair.is_array() || pair.size() != 2 ||
        !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw ParseError("each edge must be a pair of integers", line_number);
    const long long i = pair[0].get<long long>();
    const long long jj = pair[1].get<long long>();
    if (i < 0 || i >= jj || jj >= m)
      throw InvalidPairError("edge [" + std::to_string(i) + ", " +
                             std::to_string(jj) + "] violates 0 <= i < j < m on line " +
                             std::to_string(line_number));
    if (g.has_edge(static_cast<int>(i), static_cast<int>(jj)))
      throw ParseError("duplicate edge [" + std::to_string(i) + ", " +
                           std::to_string(jj) + "]",
                       line_number);
    g.set_edge(static_cast<int>(i), static_cast<int>(jj), true);
  }
  return g;
}

}  // namespace

std::vector<Graph> parse_samples(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    graphs.push_back(parse_line(line, line_number));
  }
  return graphs;
}

std::vector<Graph> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open sample file: " + path);
  return parse_samples(in);
}

void emit_samples(std::ostream& out, const std::vector<Graph>& graphs) {
  for (const Graph& g : graphs) {
    out << "{\"m\":" << g.vertex_count() << ",\"edges\":[";
    bool first = true;
    for (auto [i, j] : g.edge_list()) {
      if (!first) out << ",";
      first = false;
      out << "[" << i << "," << j << "]";
    }
    out << "]}\n";
  }
}

void write_samples(const std::string& path, const std::vector<Graph>& graphs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  emit_samples(out, graphs);
}

}  // namespace nettest
