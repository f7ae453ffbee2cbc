#pragma once

#include <filesystem>

#include "symforge/agents.hpp"
#include "symforge/config.hpp"
#include "symforge/report.hpp"

namespace symforge {

/// Run the four agent stages, harness generation, executor run/replay,
/// and parsing for one snippet. Persists plan.json, risk.json,
/// wrapper.rs, harness.c, params.json, and report.json under
/// out_dir/cwe-<n>-cve-<id>/. A stage failure is recorded in the
/// returned FileReport (failed_stage) instead of propagating.
FileReport run_pipeline(const CveSnippet& snippet, AgentBackend& backend,
                        const ExecutorSession& session, const std::filesystem::path& out_dir,
                        const RunConfig& config);

/// Per-file replay session derived from the config's replay root.
ExecutorSession session_for_snippet(const RunConfig& config, const CveSnippet& snippet);

}  // namespace symforge
