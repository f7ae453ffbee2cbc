#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

// Structured contracts passed between the pipeline stages. Every stage
// consumes and produces one of these types; the JSON form is the wire
// format persisted to disk and exchanged with agent backends.

namespace symforge {

enum class Complexity { low, medium, high };

/// Stage-1 output: vulnerability classes plus generation guidance.
struct AnalysisPlan {
    std::vector<int> vulnerability_types;
    Complexity complexity = Complexity::low;
    int recommended_function_count = 8;
};

struct RiskPattern {
    std::string name;
    int cwe_id = 0;
};

/// Stage-2 output: risk score in [0,10] and 1-based critical lines.
struct RiskAssessment {
    std::vector<RiskPattern> patterns;
    double risk_score = 0.0;
    std::vector<int> critical_lines;
};

/// Parameter kinds the C harness can drive symbolically.
enum class ParamKind { byte_pointer, size, int32, byte };

/// Exported C-ABI function: name plus ordered parameter kinds.
/// Return type is always a 32-bit int.
struct FfiSignature {
    std::string name;
    std::vector<ParamKind> params;

    bool operator==(const FfiSignature&) const = default;
};

enum class WrapperOrigin { generated, fallback };

/// Stage-3 output: the wrapper source and its exported surface.
struct WrapperArtifact {
    std::string source_text;
    std::vector<FfiSignature> exported_functions;
    WrapperOrigin origin = WrapperOrigin::generated;
    int attempts_used = 1;
};

enum class SearchStrategy { dfs, bfs, random_path };

/// Stage-4 output: executor limits. All limits are positive.
struct KleeParams {
    SearchStrategy search_strategy = SearchStrategy::dfs;
    int time_limit_s = 60;
    int memory_limit_mb = 1024;
    int max_fork_depth = 64;

    bool operator==(const KleeParams&) const = default;
};

/// Built-in parameters used when the filter stage fails.
KleeParams default_klee_params();

/// Result of one wrapper compilation attempt. Exactly one of
/// bitcode_path / diagnostic is meaningful depending on success.
struct CompileOutcome {
    bool success = false;
    std::optional<std::string> bitcode_path;
    std::optional<std::string> diagnostic;
};

using CompileFn = std::function<CompileOutcome(const std::string& source_text)>;

const char* to_string(Complexity c);
const char* to_string(ParamKind k);
const char* to_string(SearchStrategy s);
const char* to_string(WrapperOrigin o);

std::optional<Complexity> complexity_from_string(const std::string& s);
std::optional<SearchStrategy> strategy_from_string(const std::string& s);

nlohmann::json to_json(const AnalysisPlan& plan);
nlohmann::json to_json(const RiskAssessment& risk);
nlohmann::json to_json(const KleeParams& params);

/// Parse + validate a stage response. Throw SchemaError on shape errors;
/// numeric fields out of range are clamped and noted in `warnings`.
AnalysisPlan plan_from_json(const nlohmann::json& doc, std::vector<std::string>& warnings);
RiskAssessment risk_from_json(const nlohmann::json& doc, std::vector<std::string>& warnings);
KleeParams params_from_json(const nlohmann::json& doc, std::vector<std::string>& warnings);

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace symforge
