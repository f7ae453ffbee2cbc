#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "symforge/contracts.hpp"

namespace symforge {

/// The five typed error classes the executor emits.
enum class ErrorKind { ptr, external, abort, div, overflow };

const char* to_string(ErrorKind k);
std::optional<ErrorKind> error_kind_from_string(const std::string& s);

struct ErrorFileEntry {
    std::string test_id;  // "test000009"
    ErrorKind kind = ErrorKind::ptr;
    std::filesystem::path path;
};

/// Snapshot of one executor output directory.
struct OutputDirListing {
    std::filesystem::path dir;
    std::vector<ErrorFileEntry> error_files;       // sorted by filename
    std::vector<std::filesystem::path> test_files;  // *.ktest
    bool stats_present = false;
    std::vector<std::filesystem::path> quarantined;  // unrecognized .err suffixes
    bool partial = false;                            // executor timed out
};

enum class SessionMode { live, replay };

/// Either a live executor command or a pre-recorded output directory.
struct ExecutorSession {
    SessionMode mode = SessionMode::replay;
    std::string executor_command;     // live: binary name or path
    std::filesystem::path replay_dir; // replay: directory to scan
};

class ExecutorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic flag list for the executor CLI.
std::vector<std::string> select_flags(const KleeParams& params);

/// Read-only scan of an output directory.
OutputDirListing scan_output_dir(const std::filesystem::path& dir);

/// Run the executor (live) or scan the recorded directory (replay).
/// Live runs get a hard timeout of twice the configured time limit;
/// on timeout the partial results are still scanned and flagged.
OutputDirListing run_executor(const ExecutorSession& session, const std::filesystem::path& bitcode,
                              const KleeParams& params, const std::filesystem::path& out_dir);

}  // namespace symforge
