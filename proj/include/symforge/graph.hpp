#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symforge/errors.hpp"
#include "symforge/snippet.hpp"

namespace symforge {

enum class NodeKind { cve, cwe, error_type, sym_path };
enum class EdgeKind { has_error, triggered_by, classified_as, shared_pattern };

const char* to_string(NodeKind k);
const char* to_string(EdgeKind k);

struct GraphNode {
    std::string id;  // "cve:CVE-...", "cwe:131", "err:ptr", "path:CVE-.../test000009"
    NodeKind kind = NodeKind::cve;
    nlohmann::json attrs = nlohmann::json::object();
};

struct GraphEdge {
    EdgeKind kind = EdgeKind::has_error;
    std::string from_id;
    std::string to_id;
    std::optional<long> weight;

    bool operator==(const GraphEdge&) const = default;
};

/// Typed property graph over one analysis run.
struct VulnGraph {
    std::map<std::string, GraphNode> nodes;  // id -> node
    std::vector<GraphEdge> edges;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using FileRecords = std::pair<CveSnippet, std::vector<KleeErrorRecord>>;

std::string cve_node_id(const std::string& cve_id);
std::string cwe_node_id(int cwe_id);
std::string error_type_node_id(ErrorKind kind);
std::string sym_path_node_id(const std::string& cve_id, const std::string& test_id);

/// Build the full graph: one cve node per file, shared cwe/error-type
/// nodes, one sym_path node per record, plus classified_as, weighted
/// has_error, triggered_by, and finally shared_pattern edges.
/// Throws GraphError on duplicate cve ids.
VulnGraph build_graph(const std::vector<FileRecords>& file_results);

/// Compute shared-pattern edges from the current sym_path population.
/// Pattern key = (error kind, faulting function); an edge joins two cve
/// nodes owning at least one equal key, weight = number of shared keys,
/// endpoints in lexicographic order. Pure and idempotent.
std::vector<GraphEdge> shared_pattern_edges(const VulnGraph& graph);

/// Serialize to a JSON-LD document: @context maps kinds to IRIs,
/// @graph lists nodes by id with edges embedded as references.
/// Emission is deterministic (sorted keys, nodes ordered by id).
nlohmann::json export_jsonld(const VulnGraph& graph);

/// Rebuild a graph from a JSON-LD document. Throws GraphError on
/// unknown edge kinds, dangling references, or duplicate ids.
VulnGraph import_jsonld(const nlohmann::json& doc);

struct CweTableRow {
    int cwe_id = 0;
    int files = 0;
    int detected_files = 0;
    double detection_rate = 0.0;
    long critical_errors = 0;
};

/// Per-CWE aggregation of critical (ptr + external) error weights.
std::vector<CweTableRow> errors_by_cwe(const VulnGraph& graph);

struct CveRankRow {
    std::string cve_id;
    long ptr = 0;
    long external = 0;
    long total = 0;
};

/// CVEs ranked by critical error count, ties broken by id ascending.
std::vector<CveRankRow> top_cves(const VulnGraph& graph, int n);

}  // namespace symforge
