#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "symforge/contracts.hpp"

namespace symforge {

/// Input to C harness generation.
struct HarnessSpec {
    std::vector<FfiSignature> signatures;
    int buffer_bytes = 128;
    int index_bound = 10000;
};

/// Generated harness: C source plus the dispatch path count.
struct HarnessSource {
    std::string text;
    int path_count = 0;
};

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Render one extern declaration:
///   byte_pointer -> unsigned char *, size -> size_t,
///   int32 -> int32_t, byte -> unsigned char.
std::string render_extern_decl(const FfiSignature& sig);

/// Emit the full symbolic-execution harness. Pure: identical spec yields
/// identical bytes. Throws HarnessError for an empty signature list, more
/// than 16 signatures, or a signature with more than 6 scalar parameters.
HarnessSource generate_harness(const HarnessSpec& spec);

}  // namespace symforge
