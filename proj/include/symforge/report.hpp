#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symforge/contracts.hpp"
#include "symforge/errors.hpp"

namespace symforge {

/// How the analyzed wrapper came to be. "failed" marks pipeline runs
/// that never produced a wrapper; "replayed" marks reports built from
/// pre-recorded executor output only.
enum class CompileOriginTag { generated, fallback, failed, replayed };

const char* to_string(CompileOriginTag t);

/// Per-file outcome of a pipeline or replay run.
struct FileReport {
    std::string cve_id;
    int cwe_id = 0;
    CompileOriginTag compile_origin = CompileOriginTag::failed;
    int attempts_used = 0;  // 0 when the wrapper stage was never reached
    CriticalitySummary summary;
    bool detected = false;
    double risk_score = 0.0;
    std::optional<KleeParams> params;
    std::optional<std::string> failed_stage;
    std::map<std::string, std::string> artifact_paths;
    std::vector<std::string> warnings;
    std::vector<KleeErrorRecord> records;  // embedded in per-file reports only
};

/// Corpus-level rates. Rates are exact fractions of `files`.
struct RunMetrics {
    int files = 0;
    int compiled_generated = 0;
    int fallback_used = 0;
    int detected = 0;
    long total_critical = 0;
    double compile_rate = 0.0;
    double fallback_rate = 0.0;
    double detection_rate = 0.0;
};

/// Four-way partition of the corpus against a baseline tool.
struct BaselineComparison {
    std::vector<std::string> only_ours;
    std::vector<std::string> only_baseline;
    std::vector<std::string> both;
    std::vector<std::string> neither;
};

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Render num/den as a percentage with one decimal, round half up:
/// format_percent(26, 31) == "83.9%".
std::string format_percent(long num, long den);

/// Throws ReportError on an empty report list.
RunMetrics compute_metrics(const std::vector<FileReport>& reports);

/// Partition reports against a cve_id -> warning-count baseline map.
/// Missing baseline entries count as 0 and add a warning.
BaselineComparison classify_against_baseline(const std::vector<FileReport>& reports,
                                             const std::map<std::string, int>& baseline,
                                             std::vector<std::string>& warnings);

nlohmann::json summary_to_json(const CriticalitySummary& s);
nlohmann::json record_to_json(const KleeErrorRecord& r);
KleeErrorRecord record_from_json(const nlohmann::json& doc);
nlohmann::json file_report_to_json(const FileReport& report, bool include_records);

/// Assemble the schema-versioned corpus document. Key order and file
/// order (by cve_id) are deterministic.
nlohmann::json emit_report(const std::vector<FileReport>& reports, const RunMetrics& metrics,
                           const std::optional<BaselineComparison>& comparison,
                           const std::map<std::string, double>& confidence_weights);

/// Structural check against the shipped report schema. Returns false
/// and fills `error` on the first violation.
bool validate_report_document(const nlohmann::json& doc, std::string* error);

}  // namespace symforge
