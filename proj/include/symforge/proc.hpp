#pragma once

#include <filesystem>
#include <string>

namespace symforge {

/// Outcome of one external command run through the shell.
struct CommandResult {
    int exit_code = -1;
    std::string stderr_text;
    bool timed_out = false;
    bool launch_failed = false;
};

/// Run `command` via /bin/sh with a hard timeout, capturing stderr.
/// Captured diagnostics keep at least the first 64 KiB verbatim.
CommandResult run_command(const std::string& command, int timeout_s,
                          const std::filesystem::path& work_dir);

}  // namespace symforge
