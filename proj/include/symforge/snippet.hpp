#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symforge {

/// An incomplete Rust source fragment with CVE/CWE identity.
struct CveSnippet {
    std::string cve_id;  // "CVE-2020-35904"
    int cwe_id = 0;      // 131
    std::string source_text;
    std::filesystem::path origin_path;
    int line_count = 0;
};

/// Lexical profile of the context a snippet is missing.
struct MissingContextProfile {
    bool missing_struct_defs = false;
    bool missing_imports = false;
    bool missing_manifest = false;
    bool missing_trait_impls = false;
    std::vector<std::string> unresolved_identifiers;  // first-appearance order

    bool operator==(const MissingContextProfile&) const = default;
};

class SnippetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse "cwe-<n>-cve-<yyyy>-<nnnn>" out of a file or directory name.
/// Returns {cwe_id, "CVE-<yyyy>-<nnnn>"} or nullopt.
std::optional<std::pair<int, std::string>> parse_identity(const std::string& name);

/// Canonical per-file directory name, e.g. "cwe-131-cve-2020-35904".
std::string identity_dir_name(const std::string& cve_id, int cwe_id);

/// Load a snippet file. Identity comes from the filename convention;
/// a sidecar "<stem>.meta.json" ({"cve": ..., "cwe": ...}) overrides it.
/// Throws SnippetError on unreadable files, empty files, or when
/// neither convention yields an identity.
CveSnippet load_snippet(const std::filesystem::path& path);

/// Lexical missing-context heuristics. Never fails.
MissingContextProfile profile_missing_context(const CveSnippet& snippet);

}  // namespace symforge
