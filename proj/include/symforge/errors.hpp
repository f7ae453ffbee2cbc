#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symforge/klee.hpp"

namespace symforge {

/// One argument of the faulting stack frame: either the literal token
/// "symbolic" or a concrete decimal value.
struct FrameArg {
    std::string name;
    bool symbolic = false;
    std::uint64_t value = 0;

    bool operator==(const FrameArg&) const = default;
};

/// Structured form of one typed error file.
struct KleeErrorRecord {
    std::string test_id;
    ErrorKind kind = ErrorKind::ptr;
    std::string message;
    std::string faulting_function;  // empty when no stack block
    std::vector<FrameArg> frame_args;
    std::optional<std::uint64_t> example_address;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> address_range;  // inclusive
    std::string raw_text;
    bool partial = false;    // some section did not match the grammar
    bool malformed = false;  // unreadable file or missing Error: line
    std::optional<std::string> consistency_warning;  // suffix/message kind mismatch
};

/// Per-kind counts. Critical = ptr + external.
struct CriticalitySummary {
    long ptr_count = 0;
    long external_count = 0;
    long abort_count = 0;
    long div_count = 0;
    long overflow_count = 0;
    long critical_total = 0;

    bool operator==(const CriticalitySummary&) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string raw)
        : std::runtime_error(what), raw_text(std::move(raw)) {}
    std::string raw_text;
};

/// Parse one error file body. `kind` always comes from the filename
/// suffix; a message that clearly names a different kind still parses
/// and sets consistency_warning. Throws ParseError when the first line
/// is not "Error: ...".
KleeErrorRecord parse_error_file(const std::string& text, ErrorKind kind,
                                 const std::string& test_id);

/// Parse every error file of a listing. Read failures and malformed
/// bodies become records with malformed = true, never dropped.
std::vector<KleeErrorRecord> scan_and_parse(const OutputDirListing& listing);

/// Fold records into per-kind counts.
CriticalitySummary summarize_criticality(const std::vector<KleeErrorRecord>& records);

/// Render a record back to error-file text. Inverse of parse_error_file
/// over the structured fields; used to build fixtures.
std::string render_error_file(const KleeErrorRecord& record);

/// Default per-kind confidence weights reported alongside counts
/// (ptr strongest, external medium, the rest low).
std::vector<std::pair<ErrorKind, double>> default_confidence_weights();

}  // namespace symforge
