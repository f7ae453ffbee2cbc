#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "symforge/agents.hpp"
#include "symforge/klee.hpp"
#include "symforge/wrapper.hpp"

namespace symforge {

enum class BackendKind { rule, remote };

/// Run configuration, loaded from a JSON file and overridable by CLI
/// flags. Defaults run fully offline.
struct RunConfig {
    BackendKind backend = BackendKind::rule;
    RemoteBackend::Options remote;

    ToolchainSpec toolchain;  // offline by default

    SessionMode executor_mode = SessionMode::replay;
    std::string executor_command = "klee";
    std::filesystem::path replay_root;  // per-file dirs named cwe-<n>-cve-<id>

    int harness_buffer_bytes = 128;
    int harness_index_bound = 10000;

    std::map<std::string, double> confidence_weights;  // kind name -> weight

    int workers = 0;  // 0 = logical CPU count
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig default_config();

/// Parse a config file; unknown keys are rejected to catch typos.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(const nlohmann::json& doc);

std::unique_ptr<AgentBackend> make_backend(const RunConfig& config);

}  // namespace symforge
