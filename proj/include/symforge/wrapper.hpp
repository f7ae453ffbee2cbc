#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symforge/contracts.hpp"

namespace symforge {

/// One entry of the built-in fallback template library.
struct TemplateEntry {
    int cwe_id = 0;  // 0 = generic memory-safety template
    std::vector<std::string> function_names;
    std::string source_text;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CWE ids with a dedicated template (the generic one backs everything else).
const std::vector<int>& template_cwe_ids();

/// Look up the template for a CWE id; unknown ids get the generic entry.
const TemplateEntry& find_template(int cwe_id);

/// Build a fallback WrapperArtifact (origin = fallback) for a CWE id.
WrapperArtifact fallback_wrapper(int cwe_id);

/// Extract exported C-ABI signatures from wrapper source.
/// Scans the narrow generated dialect: a #[no_mangle] attribute followed
/// by `pub extern "C" fn name(...) -> i32`. Throws ValidationError when
/// no function is exported, a name repeats, or a parameter type falls
/// outside {*mut u8, usize, i32, u8}.
std::vector<FfiSignature> validate_wrapper(const std::string& source_text);

/// External toolchain invocation for wrapper compilation.
/// The command template expands {input} and {output} placeholders.
struct ToolchainSpec {
    std::string command_template;  // empty = offline mode
    int timeout_s = 120;
    bool offline = true;
};

/// Compile wrapper source to bitcode. Offline mode succeeds iff the
/// source validates (no bitcode produced). Live mode runs the external
/// command and captures its diagnostics verbatim.
CompileOutcome compile_wrapper(const WrapperArtifact& artifact, const ToolchainSpec& toolchain,
                               const std::filesystem::path& work_dir);

}  // namespace symforge
