#include "symforge/harness.hpp"

#include <sstream>

namespace symforge {

namespace {

struct KindCounts {
    int sizes = 0;
    int bytes = 0;
    int ints = 0;
};

KindCounts count_kinds(const FfiSignature& sig) {
    KindCounts counts;
    for (ParamKind kind : sig.params) {
        switch (kind) {
            case ParamKind::size: ++counts.sizes; break;
            case ParamKind::byte: ++counts.bytes; break;
            case ParamKind::int32: ++counts.ints; break;
            case ParamKind::byte_pointer: break;
        }
    }
    return counts;
}

const char* c_type(ParamKind kind) {
    switch (kind) {
        case ParamKind::byte_pointer: return "unsigned char *";
        case ParamKind::size: return "size_t";
        case ParamKind::int32: return "int32_t";
        case ParamKind::byte: return "unsigned char";
    }
    return "int32_t";
}

// Kind-slot variable: the j-th size parameter of a signature binds idx<j>,
// bytes bind val<j>, int32s bind num<j>, and every pointer binds the shared
// buffer.
std::string slot_name(ParamKind kind, int ordinal) {
    switch (kind) {
        case ParamKind::byte_pointer: return ordinal == 1 ? "buffer" : "buffer" + std::to_string(ordinal);
        case ParamKind::size: return "idx" + std::to_string(ordinal);
        case ParamKind::byte: return "val" + std::to_string(ordinal);
        case ParamKind::int32: return "num" + std::to_string(ordinal);
    }
    return "arg";
}

std::string join_slots(const char* prefix, int count) {
    std::ostringstream out;
    for (int i = 1; i <= count; ++i) {
        if (i > 1) out << ", ";
        out << prefix << i;
    }
    return out.str();
}

}  // namespace

std::string render_extern_decl(const FfiSignature& sig) {
    std::ostringstream out;
    out << "extern int32_t " << sig.name << "(";
    if (sig.params.empty()) {
        out << "void";
    } else {
        KindCounts seen;
        int pointers = 0;
        for (std::size_t i = 0; i < sig.params.size(); ++i) {
            if (i > 0) out << ", ";
            ParamKind kind = sig.params[i];
            int ordinal = 0;
            switch (kind) {
                case ParamKind::byte_pointer: ordinal = ++pointers; break;
                case ParamKind::size: ordinal = ++seen.sizes; break;
                case ParamKind::byte: ordinal = ++seen.bytes; break;
                case ParamKind::int32: ordinal = ++seen.ints; break;
            }
            out << c_type(kind);
            if (kind != ParamKind::byte_pointer) out << " ";
            out << slot_name(kind, ordinal);
        }
    }
    out << ");";
    return out.str();
}

HarnessSource generate_harness(const HarnessSpec& spec) {
    if (spec.signatures.empty()) {
        throw HarnessError("empty signature list");
    }
    if (spec.signatures.size() > 16) {
        throw HarnessError("at most 16 signatures supported, got " +
                           std::to_string(spec.signatures.size()));
    }

    KindCounts max_counts;
    for (const FfiSignature& sig : spec.signatures) {
        KindCounts counts = count_kinds(sig);
        int scalars = counts.sizes + counts.bytes + counts.ints;
        if (scalars > 6) {
            throw HarnessError("signature '" + sig.name + "' has " + std::to_string(scalars) +
                               " scalar parameters; the harness template supports at most 6");
        }
        max_counts.sizes = std::max(max_counts.sizes, counts.sizes);
        max_counts.bytes = std::max(max_counts.bytes, counts.bytes);
        max_counts.ints = std::max(max_counts.ints, counts.ints);
    }

    std::ostringstream out;
    out << "#include <klee/klee.h>\n";
    out << "#include <stdint.h>\n";
    out << "#include <string.h>\n";
    out << "\n";
    for (const FfiSignature& sig : spec.signatures) {
        out << render_extern_decl(sig) << "\n";
    }
    out << "\n";
    out << "int main() {\n";
    if (max_counts.sizes > 0) out << "    size_t " << join_slots("idx", max_counts.sizes) << ";\n";
    if (max_counts.bytes > 0) {
        out << "    unsigned char " << join_slots("val", max_counts.bytes) << ";\n";
    }
    if (max_counts.ints > 0) out << "    int32_t " << join_slots("num", max_counts.ints) << ";\n";
    out << "    unsigned char buffer[" << spec.buffer_bytes << "];\n";
    out << "\n";
    for (int i = 1; i <= max_counts.sizes; ++i) {
        out << "    klee_make_symbolic(&idx" << i << ", sizeof(idx" << i << "), \"idx" << i
            << "\");\n";
    }
    for (int i = 1; i <= max_counts.bytes; ++i) {
        out << "    klee_make_symbolic(&val" << i << ", sizeof(val" << i << "), \"val" << i
            << "\");\n";
    }
    for (int i = 1; i <= max_counts.ints; ++i) {
        out << "    klee_make_symbolic(&num" << i << ", sizeof(num" << i << "), \"num" << i
            << "\");\n";
    }
    out << "    klee_make_symbolic(buffer, sizeof(buffer), \"buffer\");\n";
    out << "\n";
    for (int i = 1; i <= max_counts.sizes; ++i) {
        out << "    klee_assume(idx" << i << " < " << spec.index_bound << ");\n";
    }
    if (max_counts.sizes > 0) out << "\n";
    out << "    int path = klee_range(0, " << spec.signatures.size() << ", \"path\");\n";
    out << "\n";
    for (std::size_t s = 0; s < spec.signatures.size(); ++s) {
        const FfiSignature& sig = spec.signatures[s];
        out << (s == 0 ? "    if" : "    } else if") << " (path == " << s << ") {\n";
        out << "        " << sig.name << "(";
        KindCounts seen;
        for (std::size_t i = 0; i < sig.params.size(); ++i) {
            if (i > 0) out << ", ";
            ParamKind kind = sig.params[i];
            switch (kind) {
                case ParamKind::byte_pointer: out << "buffer"; break;
                case ParamKind::size: out << slot_name(kind, ++seen.sizes); break;
                case ParamKind::byte: out << slot_name(kind, ++seen.bytes); break;
                case ParamKind::int32: out << slot_name(kind, ++seen.ints); break;
            }
        }
        out << ");\n";
    }
    out << "    }\n";
    out << "    return 0;\n";
    out << "}\n";

    HarnessSource source;
    source.text = out.str();
    source.path_count = static_cast<int>(spec.signatures.size());
    return source;
}

}  // namespace symforge
