#include "symforge/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace symforge {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool parse_u64(std::string_view token, std::uint64_t& out) {
    token = trim(token);
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

// Split "name=value, name=value" at top-level commas.
std::vector<std::string_view> split_args(std::string_view body) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(body.substr(start, i - start));
            start = i + 1;
        }
    }
    if (start < body.size()) parts.push_back(body.substr(start));
    return parts;
}

// Kind suggested by the message text, for suffix consistency checks.
std::optional<ErrorKind> kind_from_message(const std::string& message) {
    if (message.rfind("memory error", 0) == 0) return ErrorKind::ptr;
    if (message.find("external call") != std::string::npos) return ErrorKind::external;
    if (message.rfind("abort", 0) == 0) return ErrorKind::abort;
    if (message.find("divide by zero") != std::string::npos) return ErrorKind::div;
    if (message.find("overflow") != std::string::npos) return ErrorKind::overflow;
    return std::nullopt;
}

// One collected stack frame: "#0 in fn(arg=..., arg=...)" possibly
// reassembled from wrapped lines.
struct Frame {
    int index = -1;
    std::string text;
};

void parse_frame(const Frame& frame, KleeErrorRecord& record) {
    const std::string& t = frame.text;
    auto in_pos = t.find(" in ");
    auto paren = t.find('(');
    if (in_pos == std::string::npos || paren == std::string::npos || paren < in_pos) {
        record.partial = true;
        return;
    }
    std::string fn(trim(std::string_view(t).substr(in_pos + 4, paren - in_pos - 4)));
    auto close = t.rfind(')');
    if (close == std::string::npos || close < paren) {
        record.partial = true;
        return;
    }
    if (frame.index != 0) return;  // only the faulting frame is kept structured
    record.faulting_function = fn;
    std::string_view body = std::string_view(t).substr(paren + 1, close - paren - 1);
    if (trim(body).empty()) return;
    for (std::string_view part : split_args(body)) {
        auto eq = part.find('=');
        if (eq == std::string_view::npos) {
            record.partial = true;
            continue;
        }
        FrameArg arg;
        arg.name = std::string(trim(part.substr(0, eq)));
        std::string_view value = trim(part.substr(eq + 1));
        if (value == "symbolic") {
            arg.symbolic = true;
        } else if (!parse_u64(value, arg.value)) {
            record.partial = true;
            continue;
        }
        record.frame_args.push_back(std::move(arg));
    }
}

}  // namespace

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::ptr: return "ptr";
        case ErrorKind::external: return "external";
        case ErrorKind::abort: return "abort";
        case ErrorKind::div: return "div";
        case ErrorKind::overflow: return "overflow";
    }
    return "ptr";
}

std::optional<ErrorKind> error_kind_from_string(const std::string& s) {
    if (s == "ptr") return ErrorKind::ptr;
    if (s == "external") return ErrorKind::external;
    if (s == "abort") return ErrorKind::abort;
    if (s == "div") return ErrorKind::div;
    if (s == "overflow") return ErrorKind::overflow;
    return std::nullopt;
}

KleeErrorRecord parse_error_file(const std::string& text, ErrorKind kind,
                                 const std::string& test_id) {
    KleeErrorRecord record;
    record.test_id = test_id;
    record.kind = kind;
    record.raw_text = text;

    auto lines = split_lines(text);
    if (lines.empty() || lines[0].rfind("Error:", 0) != 0) {
        throw ParseError("error file does not start with an 'Error:' line", text);
    }
    record.message = std::string(trim(std::string_view(lines[0]).substr(6)));

    enum class Section { none, stack, info };
    Section section = Section::none;
    std::vector<Frame> frames;
    std::string pending_info_key;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        std::string_view stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped == "Stack:") {
            section = Section::stack;
            continue;
        }
        if (stripped == "Info:") {
            section = Section::info;
            continue;
        }

        if (section == Section::stack) {
            if (stripped.front() == '#') {
                auto in_pos = stripped.find(" in ");
                int index = -1;
                std::uint64_t n = 0;
                if (in_pos != std::string_view::npos &&
                    parse_u64(stripped.substr(1, in_pos - 1), n)) {
                    index = static_cast<int>(n);
                }
                frames.push_back(Frame{index, std::string(stripped)});
                if (index < 0) record.partial = true;
            } else if (!frames.empty()) {
                frames.back().text += " ";
                frames.back().text += std::string(stripped);
            } else {
                record.partial = true;
            }
            continue;
        }

        if (section == Section::info) {
            auto colon = stripped.find(':');
            bool is_key = colon != std::string_view::npos && colon > 0;
            if (is_key) {
                for (std::size_t k = 0; k < colon; ++k) {
                    char c = stripped[k];
                    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
                        is_key = false;
                        break;
                    }
                }
            }
            if (!is_key) {
                // continuation of a multi-line value (address expressions)
                if (pending_info_key.empty()) record.partial = true;
                continue;
            }
            std::string key(stripped.substr(0, colon));
            std::string_view value = trim(stripped.substr(colon + 1));
            pending_info_key = key;
            if (key == "example") {
                std::uint64_t v = 0;
                if (parse_u64(value, v)) {
                    record.example_address = v;
                } else {
                    record.partial = true;
                }
            } else if (key == "range") {
                std::string_view inner = trim(value);
                if (inner.size() >= 2 && inner.front() == '[' && inner.back() == ']') {
                    auto parts = split_args(inner.substr(1, inner.size() - 2));
                    std::uint64_t lo = 0;
                    std::uint64_t hi = 0;
                    if (parts.size() == 2 && parse_u64(parts[0], lo) && parse_u64(parts[1], hi) &&
                        lo <= hi) {
                        record.address_range = {lo, hi};
                    } else {
                        record.partial = true;
                    }
                } else {
                    record.partial = true;
                }
            } else if (key != "address") {
                // addresses stay verbatim in raw_text; other keys are unknown
                record.partial = true;
            }
            continue;
        }

        record.partial = true;  // text outside any recognized section
    }

    for (const Frame& frame : frames) parse_frame(frame, record);

    if (auto inferred = kind_from_message(record.message); inferred && *inferred != kind) {
        record.consistency_warning = std::string("filename suffix says '") + to_string(kind) +
                                     "' but the message reads like '" + to_string(*inferred) + "'";
    }
    return record;
}

std::vector<KleeErrorRecord> scan_and_parse(const OutputDirListing& listing) {
    std::vector<KleeErrorRecord> records;
    records.reserve(listing.error_files.size());
    for (const ErrorFileEntry& entry : listing.error_files) {
        std::ifstream in(entry.path, std::ios::binary);
        if (!in) {
            KleeErrorRecord record;
            record.test_id = entry.test_id;
            record.kind = entry.kind;
            record.malformed = true;
            record.message = "unreadable file: " + entry.path.string();
            records.push_back(std::move(record));
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            records.push_back(parse_error_file(buf.str(), entry.kind, entry.test_id));
        } catch (const ParseError& e) {
            KleeErrorRecord record;
            record.test_id = entry.test_id;
            record.kind = entry.kind;
            record.malformed = true;
            record.message = e.what();
            record.raw_text = e.raw_text;
            records.push_back(std::move(record));
        }
    }
    return records;
}

CriticalitySummary summarize_criticality(const std::vector<KleeErrorRecord>& records) {
    CriticalitySummary summary;
    for (const KleeErrorRecord& r : records) {
        switch (r.kind) {
            case ErrorKind::ptr: ++summary.ptr_count; break;
            case ErrorKind::external: ++summary.external_count; break;
            case ErrorKind::abort: ++summary.abort_count; break;
            case ErrorKind::div: ++summary.div_count; break;
            case ErrorKind::overflow: ++summary.overflow_count; break;
        }
    }
    summary.critical_total = summary.ptr_count + summary.external_count;
    return summary;
}

std::string render_error_file(const KleeErrorRecord& record) {
    std::ostringstream out;
    out << "Error: " << record.message << "\n";
    if (!record.faulting_function.empty()) {
        out << "Stack:\n";
        out << "  #0 in " << record.faulting_function << "(";
        for (std::size_t i = 0; i < record.frame_args.size(); ++i) {
            if (i > 0) out << ", ";
            const FrameArg& arg = record.frame_args[i];
            out << arg.name << "=";
            if (arg.symbolic) {
                out << "symbolic";
            } else {
                out << arg.value;
            }
        }
        out << ")\n";
        out << "  #1 in main()\n";
    }
    if (record.example_address || record.address_range) {
        out << "Info:\n";
        if (record.example_address) {
            out << "  example: " << *record.example_address << "\n";
        }
        if (record.address_range) {
            out << "  range: [" << record.address_range->first << ", "
                << record.address_range->second << "]\n";
        }
    }
    return out.str();
}

std::vector<std::pair<ErrorKind, double>> default_confidence_weights() {
    return {{ErrorKind::ptr, 1.0},
            {ErrorKind::external, 0.5},
            {ErrorKind::abort, 0.25},
            {ErrorKind::div, 0.25},
            {ErrorKind::overflow, 0.25}};
}

}  // namespace symforge
