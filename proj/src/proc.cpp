#include "symforge/proc.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace symforge {

namespace {
constexpr std::size_t kDiagnosticCap = 64 * 1024;
}

CommandResult run_command(const std::string& command, int timeout_s,
                          const std::filesystem::path& work_dir) {
    CommandResult result;
    std::error_code ec;
    std::filesystem::create_directories(work_dir, ec);
    auto stderr_path = work_dir / ".cmd-stderr.txt";

    std::ostringstream shell;
    shell << "cd '" << work_dir.string() << "' && timeout " << timeout_s << "s " << command
          << " 2> '" << stderr_path.string() << "'";
    int rc = std::system(shell.str().c_str());

    if (rc == -1) {
        result.launch_failed = true;
        return result;
    }
    result.exit_code = WEXITSTATUS(rc);
    if (result.exit_code == 124) result.timed_out = true;  // timeout(1) convention
    if (result.exit_code == 127) result.launch_failed = true;

    std::ifstream err(stderr_path, std::ios::binary);
    if (err) {
        std::ostringstream buf;
        buf << err.rdbuf();
        result.stderr_text = buf.str();
        if (result.stderr_text.size() > kDiagnosticCap) {
            result.stderr_text.resize(kDiagnosticCap);
            result.stderr_text += "\n[diagnostic truncated]";
        }
    }
    std::filesystem::remove(stderr_path, ec);
    return result;
}

}  // namespace symforge
