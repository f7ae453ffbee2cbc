#include "symforge/snippet.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace symforge {

namespace {

const std::regex kIdentityRe("cwe-([0-9]+)-cve-([0-9]{4})-([0-9]{1,7})", std::regex::icase);
const std::regex kCveRe("CVE-[0-9]{4}-[0-9]{1,7}");

// Names ambient in the analyzed language; never flagged as unresolved.
const std::set<std::string>& prelude_allowlist() {
    static const std::set<std::string> names = {"Vec",  "String", "Box", "Option", "Result", "Some",
                                                "None", "Ok",     "Err", "Drop",   "Clone",  "Copy"};
    return names;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> words = {
        "fn",    "let",   "mut",    "impl",     "for",  "struct", "enum",  "use",    "unsafe",
        "if",    "else",  "while",  "loop",     "match", "return", "pub",  "extern", "crate",
        "in",    "as",    "ref",    "move",     "where", "trait",  "type", "const",  "static",
        "dyn",   "mod",   "break",  "continue", "true",  "false",  "self", "Self",   "super",
        "async", "await"};
    return words;
}

struct Token {
    std::string text;
    char next_char = '\0';        // first non-space char after the token
    bool before_field_colon = false;  // followed by a single ':' (not '::')
    bool after_path_sep = false;      // preceded by "::"
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Identifier stream with comments, strings, and char literals stripped.
std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool after_path_sep = false;
    while (i < n) {
        char c = text[i];
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            int depth = 1;
            i += 2;
            while (i < n && depth > 0) {
                if (text[i] == '/' && i + 1 < n && text[i + 1] == '*') {
                    ++depth;
                    i += 2;
                } else if (text[i] == '*' && i + 1 < n && text[i + 1] == '/') {
                    --depth;
                    i += 2;
                } else {
                    ++i;
                }
            }
            continue;
        }
        if (c == '"') {
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\\') ++i;
                ++i;
            }
            ++i;
            continue;
        }
        if (c == '\'') {
            // char literal when a closing quote follows shortly; otherwise a lifetime
            std::size_t j = i + 1;
            if (j < n && text[j] == '\\') j += 2;
            else j += 1;
            if (j < n && text[j] == '\'') i = j + 1;
            else ++i;
            continue;
        }
        if (c == ':' && i + 1 < n && text[i + 1] == ':') {
            after_path_sep = true;
            i += 2;
            continue;
        }
        if (ident_start(c)) {
            std::size_t start = i;
            while (i < n && ident_char(text[i])) ++i;
            Token token;
            token.text = text.substr(start, i - start);
            token.after_path_sep = after_path_sep;
            std::size_t k = i;
            while (k < n && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
            token.next_char = k < n ? text[k] : '\0';
            token.before_field_colon =
                token.next_char == ':' && !(k + 1 < n && text[k + 1] == ':');
            tokens.push_back(std::move(token));
            after_path_sep = false;
            continue;
        }
        after_path_sep = false;
        ++i;
    }
    return tokens;
}

bool is_capitalized(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

int count_lines(const std::string& text) {
    if (text.empty()) return 0;
    int lines = static_cast<int>(std::count(text.begin(), text.end(), '\n'));
    if (text.back() != '\n') ++lines;
    return lines;
}

std::optional<std::pair<std::string, int>> read_sidecar(const std::filesystem::path& snippet_path,
                                                        std::string& error) {
    std::filesystem::path sidecar = snippet_path;
    sidecar.replace_extension(".meta.json");
    std::ifstream in(sidecar);
    if (!in) return std::nullopt;
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        error = "sidecar " + sidecar.string() + " is not valid JSON: " + e.what();
        return std::nullopt;
    }
    if (!doc.is_object() || !doc.contains("cve") || !doc.contains("cwe") ||
        !doc["cve"].is_string() || !doc["cwe"].is_number_integer()) {
        error = "sidecar " + sidecar.string() + " needs string 'cve' and integer 'cwe'";
        return std::nullopt;
    }
    std::string cve = doc["cve"].get<std::string>();
    int cwe = doc["cwe"].get<int>();
    if (!std::regex_match(cve, kCveRe) || cwe <= 0) {
        error = "sidecar " + sidecar.string() + " has a malformed cve id or non-positive cwe";
        return std::nullopt;
    }
    return std::make_pair(cve, cwe);
}

}  // namespace

std::optional<std::pair<int, std::string>> parse_identity(const std::string& name) {
    std::smatch m;
    if (!std::regex_search(name, m, kIdentityRe)) return std::nullopt;
    int cwe = std::stoi(m[1].str());
    if (cwe <= 0) return std::nullopt;
    std::string cve = "CVE-" + m[2].str() + "-" + m[3].str();
    return std::make_pair(cwe, cve);
}

std::string identity_dir_name(const std::string& cve_id, int cwe_id) {
    std::string lower = cve_id;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return "cwe-" + std::to_string(cwe_id) + "-" + lower;
}

CveSnippet load_snippet(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SnippetError("cannot read snippet file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    CveSnippet snippet;
    snippet.source_text = buf.str();
    snippet.origin_path = path;
    snippet.line_count = count_lines(snippet.source_text);
    if (snippet.source_text.empty()) {
        throw SnippetError("empty snippet: " + path.string());
    }

    std::string sidecar_error;
    if (auto sidecar = read_sidecar(path, sidecar_error)) {
        snippet.cve_id = sidecar->first;
        snippet.cwe_id = sidecar->second;
        return snippet;
    }
    if (!sidecar_error.empty()) {
        throw SnippetError(sidecar_error);
    }
    if (auto identity = parse_identity(path.filename().string())) {
        snippet.cwe_id = identity->first;
        snippet.cve_id = identity->second;
        return snippet;
    }
    throw SnippetError("cannot determine identity of " + path.string() +
                       ": filename does not match cwe-<n>-cve-<yyyy>-<nnnn> and no sidecar " +
                       std::filesystem::path(path).replace_extension(".meta.json").string() +
                       " exists");
}

MissingContextProfile profile_missing_context(const CveSnippet& snippet) {
    MissingContextProfile profile;

    std::error_code ec;
    auto manifest = snippet.origin_path.parent_path() / "Cargo.toml";
    profile.missing_manifest = !std::filesystem::exists(manifest, ec);

    auto tokens = tokenize(snippet.source_text);

    // Declaration pass.
    std::set<std::string> declared_types;   // struct/enum/trait names
    std::set<std::string> declared_values;  // fields, params, lets, fns, use leaves
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i].text;
        if ((t == "struct" || t == "enum" || t == "trait") && i + 1 < tokens.size()) {
            declared_types.insert(tokens[i + 1].text);
        } else if ((t == "fn" || t == "let" || t == "mod" || t == "type" || t == "const" ||
                    t == "static") &&
                   i + 1 < tokens.size()) {
            std::size_t target = i + 1;
            if (tokens[target].text == "mut" && target + 1 < tokens.size()) ++target;
            declared_values.insert(tokens[target].text);
        } else if (t == "use") {
            for (std::size_t j = i + 1; j < tokens.size(); ++j) {
                if (keywords().count(tokens[j].text)) break;
                if (is_capitalized(tokens[j].text)) declared_values.insert(tokens[j].text);
                if (tokens[j].next_char == ';' || tokens[j].next_char == '\0') break;
            }
        }
        if (tokens[i].before_field_colon && !keywords().count(t) && !tokens[i].after_path_sep) {
            declared_values.insert(t);  // `name:` field or parameter declaration
        }
    }

    std::vector<std::string> unresolved;
    auto add_unresolved = [&unresolved](const std::string& name) {
        if (std::find(unresolved.begin(), unresolved.end(), name) == unresolved.end()) {
            unresolved.push_back(name);
        }
    };

    bool saw_unmatched_self_field = false;
    bool impl_target_declared = false;

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i].text;

        if (t == "impl" && i + 1 < tokens.size()) {
            bool trait_form = i + 3 < tokens.size() && tokens[i + 2].text == "for";
            std::size_t target = trait_form ? i + 3 : i + 1;
            const std::string& name = tokens[target].text;
            impl_target_declared =
                declared_types.count(name) > 0 || prelude_allowlist().count(name) > 0;
            if (!impl_target_declared) {
                add_unresolved(name);
                if (trait_form) profile.missing_trait_impls = true;
            }
            continue;
        }

        if (t == "self" && tokens[i].next_char == '.' && i + 1 < tokens.size()) {
            const Token& field = tokens[i + 1];
            if (field.next_char == '(') continue;  // method call, not a field
            if (!declared_values.count(field.text)) {
                add_unresolved(field.text);
                if (!impl_target_declared) saw_unmatched_self_field = true;
            }
            continue;
        }

        if (is_capitalized(t) && !tokens[i].after_path_sep && !keywords().count(t) &&
            !prelude_allowlist().count(t) && !declared_types.count(t) &&
            !declared_values.count(t)) {
            // impl target slots were handled above
            bool inherent_target = i >= 1 && tokens[i - 1].text == "impl" &&
                                   !(i + 1 < tokens.size() && tokens[i + 1].text == "for");
            bool trait_target = i >= 3 && tokens[i - 1].text == "for" && tokens[i - 3].text == "impl";
            if (inherent_target || trait_target) continue;
            profile.missing_imports = true;
            add_unresolved(t);
        }
    }

    profile.missing_struct_defs = saw_unmatched_self_field;
    profile.unresolved_identifiers = std::move(unresolved);
    return profile;
}

}  // namespace symforge
