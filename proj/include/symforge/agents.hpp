#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symforge/contracts.hpp"
#include "symforge/snippet.hpp"

namespace symforge {

enum class AgentRole { oracle, safety, codegen, filter };

const char* to_string(AgentRole role);

class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A backend maps (role, request payload) to a response payload that
/// must validate against the role's schema. Implementations must be
/// safe for concurrent requests unless serial_only() returns true.
class AgentBackend {
public:
    virtual ~AgentBackend() = default;
    virtual nlohmann::json request(AgentRole role, const nlohmann::json& payload) = 0;
    virtual bool serial_only() const { return false; }
};

/// Offline deterministic backend. Keyword heuristics over the snippet
/// text stand in for each role:
///   oracle  - echoes the metadata CWE; complexity from unsafe count
///   safety  - risk from unsafe-API keyword hits, those lines critical
///   codegen - emits the CWE's template source
///   filter  - maps risk bands to executor limits
class RuleBasedBackend final : public AgentBackend {
public:
    nlohmann::json request(AgentRole role, const nlohmann::json& payload) override;
};

/// Remote HTTP backend: POSTs {role, model, max_tokens, payload} as JSON
/// to a configured endpoint and returns the response body. Credentials
/// come from the environment variable named in the config.
class RemoteBackend final : public AgentBackend {
public:
    struct Options {
        std::string url;                    // e.g. "http://host:port/v1/agents"
        std::string api_key_env = "SYMFORGE_API_KEY";
        std::map<std::string, std::string> models;  // role name -> model name
        int max_tokens = 2500;
        int timeout_s = 60;
    };

    explicit RemoteBackend(Options options);
    nlohmann::json request(AgentRole role, const nlohmann::json& payload) override;

private:
    Options options_;
};

nlohmann::json snippet_payload(const CveSnippet& snippet);

/// Stage 1: request an analysis plan and validate it. Out-of-range
/// function counts are clamped into [1,16]; a schema-invalid response
/// is re-requested once before the stage fails.
AnalysisPlan plan_analysis(const CveSnippet& snippet, AgentBackend& backend,
                           std::vector<std::string>& warnings);

/// Stage 2: risk score clamped to [0,10], critical lines filtered to
/// the snippet's line range, out-of-plan patterns dropped with warning.
RiskAssessment assess_safety(const CveSnippet& snippet, const AnalysisPlan& plan,
                             AgentBackend& backend, std::vector<std::string>& warnings);

/// Stage 3 repair loop: request, validate, compile; on failure feed the
/// diagnostic back, at most two repair requests; then fall back to the
/// template for the plan's first CWE. Backend transport errors surface
/// as BackendError; everything else resolves to an artifact.
WrapperArtifact generate_wrapper(const CveSnippet& snippet, const AnalysisPlan& plan,
                                 const RiskAssessment& risk, AgentBackend& backend,
                                 const CompileFn& compile, std::vector<std::string>& warnings);

/// Stage 4: validated executor parameters; on backend failure returns
/// the built-in defaults with a warning.
KleeParams select_params(const RiskAssessment& risk, const AnalysisPlan& plan,
                         AgentBackend& backend, std::vector<std::string>& warnings);

}  // namespace symforge
