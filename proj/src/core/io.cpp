#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "core/error.hpp"

namespace gedot {
namespace {

[[noreturn]] void schema(const std::string& what) { fail(ErrorKind::Parse, what); }

NodeIndex index_from_json(const Json& j, const char* field) {
  if (!j.is_number_integer()) schema(std::string("'") + field + "' must be an integer");
  const long long v = j.get<long long>();
  if (v < 0) schema(std::string("'") + field + "' must be non-negative, got " + std::to_string(v));
  return static_cast<NodeIndex>(v);
}

const Json& member(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

std::string label_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  schema("labels must be strings or integers");
}

void check_mapping(const NodeMatching& m, std::size_t from_n, std::size_t to_n, std::size_t k) {
  const std::string where = "mapping " + std::to_string(k);
  if (m.size() != from_n) {
    schema(where + " has length " + std::to_string(m.size()) + ", expected " +
           std::to_string(from_n) + " (nodes of the smaller graph)");
  }
  std::set<NodeIndex> seen;
  for (NodeIndex t : m) {
    if (t >= to_n) schema(where + " targets node " + std::to_string(t) + " out of range");
    if (!seen.insert(t).second) schema(where + " is not injective (node " + std::to_string(t) + ")");
  }
}

}  // namespace

Graph graph_from_json(const Json& j) {
  if (!j.is_object()) schema("graph must be a JSON object");
  std::vector<std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array()) schema("'labels' must be an array");
    for (const Json& l : *it) labels.push_back(label_text(l));
  } else if (auto n = j.find("n"); n != j.end()) {
    labels.assign(index_from_json(*n, "n"), kUnlabeled);
  } else {
    schema("graph needs 'labels' or 'n'");
  }
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) schema("'edges' must be an array");
    for (const Json& e : *it) {
      if (!e.is_array() || e.size() != 2) schema("each edge must be a two-element array");
      edges.emplace_back(index_from_json(e[0], "edge endpoint"), index_from_json(e[1], "edge endpoint"));
    }
  }
  std::string id;
  if (auto it = j.find("id"); it != j.end()) {
    if (it->is_string()) {
      id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      id = std::to_string(it->get<long long>());
    } else {
      schema("'id' must be a string or integer");
    }
  }
  try {
    return Graph::from_strings(labels, edges, id);
  } catch (const Error& e) {
    schema(e.what());
  }
}

Json graph_to_json(const Graph& g) {
  Json j = Json::object();
  if (!g.id().empty()) j["id"] = g.id();
  Json labels = Json::array();
  for (const Label& l : g.labels()) labels.push_back(l.value());
  j["labels"] = std::move(labels);
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  return j;
}

Json op_to_json(const EditOperation& op) {
  switch (op.kind) {
    case EditKind::RelabelNode:
      return {{"op", "relabel"}, {"node", op.node}, {"label", op.label}};
    case EditKind::InsertNode:
      return {{"op", "insert_node"}, {"label", op.label}};
    case EditKind::DeleteNode:
      return {{"op", "delete_node"}, {"node", op.node}};
    case EditKind::DeleteEdge:
      return {{"op", "delete_edge"}, {"u", op.u}, {"v", op.v}};
    case EditKind::InsertEdge:
      return {{"op", "insert_edge"}, {"u", op.u}, {"v", op.v}};
  }
  return {};
}

EditOperation op_from_json(const Json& j) {
  if (!j.is_object()) schema("operation must be a JSON object");
  const Json& kind = member(j, "op");
  if (!kind.is_string()) schema("'op' must be a string");
  const std::string k = kind.get<std::string>();
  auto text = [&](const char* key) {
    const Json& v = member(j, key);
    if (!v.is_string()) schema(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  };
  if (k == "relabel") return EditOperation::relabel(index_from_json(member(j, "node"), "node"), text("label"));
  if (k == "insert_node") return EditOperation::insert_node(text("label"));
  if (k == "delete_node") return EditOperation::delete_node(index_from_json(member(j, "node"), "node"));
  if (k == "delete_edge" || k == "insert_edge") {
    const NodeIndex u = index_from_json(member(j, "u"), "u");
    const NodeIndex v = index_from_json(member(j, "v"), "v");
    if (u == v) schema("edge operation with identical endpoints");
    return k == "delete_edge" ? EditOperation::delete_edge(u, v) : EditOperation::insert_edge(u, v);
  }
  schema("unknown operation '" + k + "'");
}

Json path_to_json(const EditPath& path) {
  Json arr = Json::array();
  for (const EditOperation& op : path.ops) arr.push_back(op_to_json(op));
  return arr;
}

EditPath path_from_json(const Json& j) {
  if (!j.is_array()) schema("path must be an array");
  EditPath p;
  for (const Json& op : j) p.ops.push_back(op_from_json(op));
  return p;
}

DatasetEntry entry_from_json(const Json& j) {
  if (!j.is_object()) schema("dataset line must be a JSON object");
  DatasetEntry e;
  e.g1 = graph_from_json(member(j, "g1"));
  e.g2 = graph_from_json(member(j, "g2"));
  if (auto it = j.find("ged"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 0) schema("'ged' must be a non-negative integer");
    e.ged = it->get<long long>();
  }
  if (auto it = j.find("query_id"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      e.query_id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      e.query_id = std::to_string(it->get<long long>());
    } else {
      schema("'query_id' must be a string or integer");
    }
  }
  if (auto it = j.find("approximate"); it != j.end()) {
    if (!it->is_boolean()) schema("'approximate' must be a boolean");
    e.approximate = it->get<bool>();
  }
  if (auto it = j.find("path"); it != j.end()) e.generation_path = path_from_json(*it);

  if (auto it = j.find("mappings"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) schema("'mappings' must be an array");
    const bool swap = e.g1.node_count() > e.g2.node_count();
    const Graph& small = swap ? e.g2 : e.g1;
    const Graph& large = swap ? e.g1 : e.g2;
    for (const Json& mj : *it) {
      if (!mj.is_array()) schema("each mapping must be an array of node indices");
      NodeMatching m;
      for (const Json& t : mj) m.push_back(index_from_json(t, "mapping entry"));
      check_mapping(m, small.node_count(), large.node_count(), e.mappings.size());
      e.mappings.push_back(std::move(m));
    }
    if (e.ged) {
      const GraphPair pair = canonicalize_pair(e.g1, e.g2);
      for (std::size_t k = 0; k < e.mappings.size(); ++k) {
        const std::size_t len = ep_gen_length(pair, e.mappings[k]);
        if (static_cast<long long>(len) != *e.ged) {
          schema("mapping " + std::to_string(k) + " induces " + std::to_string(len) +
                 " edits but ged is " + std::to_string(*e.ged));
        }
      }
    }
  }
  return e;
}

Json entry_to_json(const DatasetEntry& e) {
  Json j = Json::object();
  j["g1"] = graph_to_json(e.g1);
  j["g2"] = graph_to_json(e.g2);
  if (e.ged) j["ged"] = *e.ged;
  if (!e.mappings.empty()) j["mappings"] = e.mappings;
  if (e.query_id) j["query_id"] = *e.query_id;
  if (e.approximate) j["approximate"] = true;
  if (e.generation_path) j["path"] = path_to_json(*e.generation_path);
  return j;
}

GraphPair to_pair(const DatasetEntry& e) {
  GraphPair p = canonicalize_pair(e.g1, e.g2);
  p.ground_truth_ged = e.ged;
  p.ground_truth_matchings = e.mappings;
  return p;
}

std::vector<DatasetEntry> read_dataset(std::istream& in) {
  std::vector<DatasetEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(entry_from_json(Json::parse(line)));
    } catch (const Json::exception& ex) {
      fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + ex.what());
    } catch (const Error& ex) {
      fail(ErrorKind::Parse, "line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

std::vector<DatasetEntry> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const std::vector<DatasetEntry>& entries) {
  for (const DatasetEntry& e : entries) out << entry_to_json(e).dump() << '\n';
}

void save_dataset(const std::string& path, const std::vector<DatasetEntry>& entries) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_dataset(out, entries);
  if (!out) fail(ErrorKind::Io, "write to '" + path + "' failed");
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";  // tiny negatives round to zero
  return s;
}

}  // namespace gedot
