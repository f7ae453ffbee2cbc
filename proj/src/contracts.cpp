#include "symforge/contracts.hpp"

#include <algorithm>
#include <cmath>

namespace symforge {

namespace {

using nlohmann::json;

long clamp_long(long v, long lo, long hi, const char* field, std::vector<std::string>& warnings) {
    if (v < lo || v > hi) {
        warnings.push_back(std::string(field) + " " + std::to_string(v) + " clamped into [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return std::clamp(v, lo, hi);
    }
    return v;
}

const json& require(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw SchemaError(std::string("missing field '") + key + "'");
    }
    return doc.at(key);
}

long require_int(const json& doc, const char* key) {
    const json& v = require(doc, key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw SchemaError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<long>();
}

double require_number(const json& doc, const char* key) {
    const json& v = require(doc, key);
    if (!v.is_number()) {
        throw SchemaError(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

std::string require_string(const json& doc, const char* key) {
    const json& v = require(doc, key);
    if (!v.is_string()) {
        throw SchemaError(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

}  // namespace

KleeParams default_klee_params() { return KleeParams{SearchStrategy::dfs, 60, 1024, 64}; }

const char* to_string(Complexity c) {
    switch (c) {
        case Complexity::low: return "low";
        case Complexity::medium: return "medium";
        case Complexity::high: return "high";
    }
    return "low";
}

const char* to_string(ParamKind k) {
    switch (k) {
        case ParamKind::byte_pointer: return "byte_pointer";
        case ParamKind::size: return "size";
        case ParamKind::int32: return "int32";
        case ParamKind::byte: return "byte";
    }
    return "byte";
}

const char* to_string(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::dfs: return "dfs";
        case SearchStrategy::bfs: return "bfs";
        case SearchStrategy::random_path: return "random-path";
    }
    return "dfs";
}

const char* to_string(WrapperOrigin o) {
    return o == WrapperOrigin::generated ? "generated" : "fallback";
}

std::optional<Complexity> complexity_from_string(const std::string& s) {
    if (s == "low") return Complexity::low;
    if (s == "medium") return Complexity::medium;
    if (s == "high") return Complexity::high;
    return std::nullopt;
}

std::optional<SearchStrategy> strategy_from_string(const std::string& s) {
    if (s == "dfs") return SearchStrategy::dfs;
    if (s == "bfs") return SearchStrategy::bfs;
    if (s == "random-path" || s == "random_path") return SearchStrategy::random_path;
    return std::nullopt;
}

nlohmann::json to_json(const AnalysisPlan& plan) {
    return json{{"vulnerability_types", plan.vulnerability_types},
                {"complexity", to_string(plan.complexity)},
                {"recommended_function_count", plan.recommended_function_count}};
}

nlohmann::json to_json(const RiskAssessment& risk) {
    json patterns = json::array();
    for (const auto& p : risk.patterns) {
        patterns.push_back(json{{"name", p.name}, {"cwe_id", p.cwe_id}});
    }
    return json{{"patterns", patterns},
                {"risk_score", risk.risk_score},
                {"critical_lines", risk.critical_lines}};
}

nlohmann::json to_json(const KleeParams& params) {
    return json{{"search_strategy", to_string(params.search_strategy)},
                {"time_limit_s", params.time_limit_s},
                {"memory_limit_mb", params.memory_limit_mb},
                {"max_fork_depth", params.max_fork_depth}};
}

AnalysisPlan plan_from_json(const nlohmann::json& doc, std::vector<std::string>& warnings) {
    AnalysisPlan plan;
    const json& types = require(doc, "vulnerability_types");
    if (!types.is_array()) throw SchemaError("vulnerability_types must be an array");
    for (const auto& t : types) {
        if (!t.is_number_integer() && !t.is_number_unsigned()) {
            throw SchemaError("vulnerability_types entries must be integers");
        }
        int id = t.get<int>();
        if (id <= 0) {
            warnings.push_back("dropped unknown vulnerability type " + std::to_string(id));
            continue;
        }
        plan.vulnerability_types.push_back(id);
    }
    if (plan.vulnerability_types.empty()) {
        throw SchemaError("vulnerability_types must name at least one recognized CWE");
    }

    auto complexity = complexity_from_string(require_string(doc, "complexity"));
    if (!complexity) throw SchemaError("complexity must be one of low|medium|high");
    plan.complexity = *complexity;

    long count = require_int(doc, "recommended_function_count");
    plan.recommended_function_count =
        static_cast<int>(clamp_long(count, 1, 16, "recommended_function_count", warnings));
    return plan;
}

RiskAssessment risk_from_json(const nlohmann::json& doc, std::vector<std::string>& warnings) {
    RiskAssessment risk;
    const json& patterns = require(doc, "patterns");
    if (!patterns.is_array()) throw SchemaError("patterns must be an array");
    for (const auto& p : patterns) {
        RiskPattern pattern;
        pattern.name = require_string(p, "name");
        pattern.cwe_id = static_cast<int>(require_int(p, "cwe_id"));
        risk.patterns.push_back(std::move(pattern));
    }

    double score = require_number(doc, "risk_score");
    if (score < 0.0 || score > 10.0) {
        warnings.push_back("risk_score " + std::to_string(score) + " clamped into [0, 10]");
        score = std::clamp(score, 0.0, 10.0);
    }
    risk.risk_score = score;

    const json& lines = require(doc, "critical_lines");
    if (!lines.is_array()) throw SchemaError("critical_lines must be an array");
    for (const auto& l : lines) {
        if (!l.is_number_integer() && !l.is_number_unsigned()) {
            throw SchemaError("critical_lines entries must be integers");
        }
        risk.critical_lines.push_back(l.get<int>());
    }
    return risk;
}

KleeParams params_from_json(const nlohmann::json& doc, std::vector<std::string>& warnings) {
    KleeParams params;
    auto strategy = strategy_from_string(require_string(doc, "search_strategy"));
    if (!strategy) throw SchemaError("search_strategy must be one of dfs|bfs|random-path");
    params.search_strategy = *strategy;

    const long kLimitCap = 1000000;
    params.time_limit_s =
        static_cast<int>(clamp_long(require_int(doc, "time_limit_s"), 1, kLimitCap, "time_limit_s", warnings));
    params.memory_limit_mb = static_cast<int>(
        clamp_long(require_int(doc, "memory_limit_mb"), 1, kLimitCap, "memory_limit_mb", warnings));
    params.max_fork_depth = static_cast<int>(
        clamp_long(require_int(doc, "max_fork_depth"), 1, kLimitCap, "max_fork_depth", warnings));
    return params;
}

}  // namespace symforge
