#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/edit_path.hpp"
#include "core/graph.hpp"

namespace gedot {

using Json = nlohmann::ordered_json;

/// One dataset line, kept in the orientation the file gives. Mappings are
/// injections of the smaller graph into the larger one (g1 into g2 on ties).
struct DatasetEntry {
  Graph g1;
  Graph g2;
  std::optional<long long> ged;
  std::vector<NodeMatching> mappings;
  std::optional<std::string> query_id;
  bool approximate = false;              // ged is an upper bound, not exact
  std::optional<EditPath> generation_path;  // synth output, g1 -> g2

  bool operator==(const DatasetEntry&) const = default;
};

Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

Json op_to_json(const EditOperation& op);
EditOperation op_from_json(const Json& j);
Json path_to_json(const EditPath& path);
EditPath path_from_json(const Json& j);

/// Parses and validates one line: mapping lengths, injectivity and, when a
/// ged is given, that every mapping's induced path has exactly that length.
DatasetEntry entry_from_json(const Json& j);
Json entry_to_json(const DatasetEntry& e);

/// Canonical pair carrying the entry's ground truth.
GraphPair to_pair(const DatasetEntry& e);

/// Throws Parse with the 1-based line number on the first bad line. Blank
/// lines are skipped.
std::vector<DatasetEntry> read_dataset(std::istream& in);
std::vector<DatasetEntry> load_dataset(const std::string& path);
void write_dataset(std::ostream& out, const std::vector<DatasetEntry>& entries);
void save_dataset(const std::string& path, const std::vector<DatasetEntry>& entries);

/// Fixed six-decimal rendering used by every results file.
std::string format_real(double v);

}  // namespace gedot
