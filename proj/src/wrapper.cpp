#include "symforge/wrapper.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "symforge/proc.hpp"

namespace symforge {

namespace {

// The four canonical vulnerability paths every template exports
// (unchecked write, write after free, repeated free, unchecked-multiply
// allocation). Templates differ in which path leads, matching the CWE's
// root cause.
constexpr const char* kOverflowWrite = R"(#[no_mangle]
pub extern "C" fn buffer_overflow_write(buffer: *mut u8, offset: usize, value: u8) -> i32 {
    unsafe { *buffer.add(offset) = value; } // no bounds check
    0
}
)";

constexpr const char* kUseAfterFree = R"(#[no_mangle]
pub extern "C" fn use_after_free_access(ptr: *mut u8, size: usize) -> i32 {
    unsafe {
        let layout = std::alloc::Layout::from_size_align_unchecked(size, 1);
        std::alloc::dealloc(ptr, layout);
        *ptr = 42; // write after free
    }
    0
}
)";

constexpr const char* kDoubleFree = R"(#[no_mangle]
pub extern "C" fn double_free_trigger(ptr: *mut u8, size: usize) -> i32 {
    unsafe {
        let layout = std::alloc::Layout::from_size_align_unchecked(size, 1);
        std::alloc::dealloc(ptr, layout);
        std::alloc::dealloc(ptr, layout); // second free of the same region
    }
    0
}
)";

constexpr const char* kOverflowAlloc = R"(#[no_mangle]
pub extern "C" fn integer_overflow_allocation(base_size: usize, multiplier: usize) -> i32 {
    unsafe {
        let size = base_size * multiplier; // unchecked multiply used as allocation size
        let layout = std::alloc::Layout::from_size_align_unchecked(size, 8);
        let ptr = std::alloc::alloc(layout);
        *ptr = 0xAA;
        std::alloc::dealloc(ptr, layout);
    }
    0
}
)";

struct TemplatePlan {
    int cwe_id;
    const char* label;
    const char* root;  // the function body carrying the root cause, emitted first
};

const TemplatePlan kTemplatePlans[] = {
    {119, "buffer overflow", kOverflowWrite},
    {125, "out-of-bounds read", kOverflowWrite},
    {131, "incorrect buffer size calculation", kOverflowAlloc},
    {134, "format string", kOverflowWrite},
    {190, "integer overflow", kOverflowAlloc},
    {191, "integer underflow", kOverflowAlloc},
    {415, "double free", kDoubleFree},
    {416, "use after free", kUseAfterFree},
    {787, "out-of-bounds write", kOverflowWrite},
    {824, "uninitialized pointer access", kUseAfterFree},
    {908, "uninitialized resource use", kUseAfterFree},
    {0, "memory safety", kOverflowWrite},  // generic entry
};

std::string build_template_source(const TemplatePlan& plan) {
    std::ostringstream out;
    if (plan.cwe_id > 0) {
        out << "// Fallback wrapper for CWE-" << plan.cwe_id << " (" << plan.label
            << "); the leading function carries the root-cause path.\n\n";
    } else {
        out << "// Generic memory-safety fallback wrapper.\n\n";
    }
    out << plan.root;
    for (const char* body : {kOverflowWrite, kUseAfterFree, kDoubleFree, kOverflowAlloc}) {
        if (body != plan.root) {
            out << "\n" << body;
        }
    }
    return out.str();
}

std::map<int, TemplateEntry> build_template_table() {
    std::map<int, TemplateEntry> table;
    for (const TemplatePlan& plan : kTemplatePlans) {
        TemplateEntry entry;
        entry.cwe_id = plan.cwe_id;
        entry.source_text = build_template_source(plan);
        for (const FfiSignature& sig : validate_wrapper(entry.source_text)) {
            entry.function_names.push_back(sig.name);
        }
        table[plan.cwe_id] = std::move(entry);
    }
    return table;
}

const std::map<int, TemplateEntry>& template_table() {
    static const std::map<int, TemplateEntry> table = build_template_table();
    return table;
}

std::string collapse_ws(const std::string& s) {
    std::string out;
    bool in_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out += ' ';
        in_space = false;
        out += c;
    }
    return out;
}

std::optional<ParamKind> kind_from_type(const std::string& normalized) {
    if (normalized == "*mut u8" || normalized == "* mut u8") return ParamKind::byte_pointer;
    if (normalized == "usize") return ParamKind::size;
    if (normalized == "i32") return ParamKind::int32;
    if (normalized == "u8") return ParamKind::byte;
    return std::nullopt;
}

}  // namespace

const std::vector<int>& template_cwe_ids() {
    static const std::vector<int> ids = [] {
        std::vector<int> v;
        for (const auto& [id, entry] : template_table()) {
            if (id > 0) v.push_back(id);
        }
        return v;
    }();
    return ids;
}

const TemplateEntry& find_template(int cwe_id) {
    const auto& table = template_table();
    auto it = table.find(cwe_id);
    if (it == table.end()) it = table.find(0);
    return it->second;
}

WrapperArtifact fallback_wrapper(int cwe_id) {
    const TemplateEntry& entry = find_template(cwe_id);
    WrapperArtifact artifact;
    artifact.source_text = entry.source_text;
    artifact.exported_functions = validate_wrapper(entry.source_text);
    artifact.origin = WrapperOrigin::fallback;
    artifact.attempts_used = 1;
    return artifact;
}

std::vector<FfiSignature> validate_wrapper(const std::string& source_text) {
    static const std::regex fn_re(
        "pub\\s+extern\\s+\"C\"\\s+fn\\s+([A-Za-z_][A-Za-z0-9_]*)\\s*\\(([^)]*)\\)\\s*->\\s*"
        "([A-Za-z0-9_]+)");

    std::vector<FfiSignature> signatures;
    std::set<std::string> seen;

    auto begin = std::sregex_iterator(source_text.begin(), source_text.end(), fn_re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;

        // exported means the declaration rides behind a #[no_mangle] attribute
        std::string before = source_text.substr(0, static_cast<std::size_t>(m.position()));
        while (!before.empty() && std::isspace(static_cast<unsigned char>(before.back()))) {
            before.pop_back();
        }
        const std::string attr = "#[no_mangle]";
        if (before.size() < attr.size() || before.compare(before.size() - attr.size(), attr.size(), attr) != 0) {
            continue;
        }

        FfiSignature sig;
        sig.name = m[1].str();
        if (!seen.insert(sig.name).second) {
            throw ValidationError("duplicate exported function name '" + sig.name + "'");
        }
        if (m[3].str() != "i32") {
            throw ValidationError("function '" + sig.name + "': return type must be i32, got '" +
                                  m[3].str() + "'");
        }

        std::string params = m[2].str();
        std::istringstream list(params);
        std::string piece;
        while (std::getline(list, piece, ',')) {
            std::string normalized = collapse_ws(piece);
            if (normalized.empty()) continue;
            auto colon = normalized.find(':');
            std::string pname = colon == std::string::npos ? normalized : normalized.substr(0, colon);
            std::string ptype = colon == std::string::npos ? "" : normalized.substr(colon + 1);
            while (!ptype.empty() && ptype.front() == ' ') ptype.erase(ptype.begin());
            while (!pname.empty() && pname.back() == ' ') pname.pop_back();
            auto kind = kind_from_type(ptype);
            if (!kind) {
                throw ValidationError("function '" + sig.name + "': parameter '" + pname +
                                      "' has non-KLEE-compatible type '" + ptype + "'");
            }
            sig.params.push_back(*kind);
        }
        signatures.push_back(std::move(sig));
    }

    if (signatures.empty()) {
        throw ValidationError("no exported functions");
    }
    return signatures;
}

CompileOutcome compile_wrapper(const WrapperArtifact& artifact, const ToolchainSpec& toolchain,
                               const std::filesystem::path& work_dir) {
    CompileOutcome outcome;
    if (toolchain.offline || toolchain.command_template.empty()) {
        try {
            validate_wrapper(artifact.source_text);
            outcome.success = true;
        } catch (const ValidationError& e) {
            outcome.success = false;
            outcome.diagnostic = e.what();
        }
        return outcome;
    }

    std::error_code ec;
    std::filesystem::create_directories(work_dir, ec);
    auto input = work_dir / "wrapper.rs";
    auto output = work_dir / "wrapper.bc";
    {
        std::ofstream out(input, std::ios::binary);
        out << artifact.source_text;
    }
    std::filesystem::remove(output, ec);

    std::string command = toolchain.command_template;
    auto expand = [&command](const std::string& key, const std::string& value) {
        for (std::size_t pos = command.find(key); pos != std::string::npos;
             pos = command.find(key, pos + value.size())) {
            command.replace(pos, key.size(), value);
        }
    };
    expand("{input}", input.string());
    expand("{output}", output.string());

    CommandResult run = run_command(command, toolchain.timeout_s, work_dir);
    if (run.launch_failed) {
        outcome.diagnostic = "toolchain command failed to launch: " + toolchain.command_template;
        return outcome;
    }
    if (run.timed_out) {
        outcome.diagnostic = "toolchain timed out after " + std::to_string(toolchain.timeout_s) +
                             " s\n" + run.stderr_text;
        return outcome;
    }
    if (run.exit_code == 0 && std::filesystem::exists(output, ec)) {
        outcome.success = true;
        outcome.bitcode_path = output.string();
        return outcome;
    }
    outcome.diagnostic = run.stderr_text.empty()
                             ? "toolchain exited with code " + std::to_string(run.exit_code)
                             : run.stderr_text;
    return outcome;
}

}  // namespace symforge
