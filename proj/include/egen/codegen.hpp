/// @file codegen.hpp
/// Java source generation. Output is plain text produced deterministically
/// from the model; nothing here compiles or runs Java.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "egen/ast.hpp"
#include "egen/diagnostics.hpp"
#include "egen/engine.hpp"

namespace egen {

struct GenOptions {
    std::string package_name = "com.example.app";
    std::int64_t fallback_ms = kDefaultFallbackMs;
    std::int64_t cap_ms = kDefaultCapMs;
};

struct GeneratedFile {
    std::string relative_path; // e.g. "com/example/app/AdaptationUtility.java"
    std::string contents;
    std::uint64_t checksum = 0; // FNV-1a 64 over contents
};

struct GenResult {
    std::vector<GeneratedFile> files;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

/// Generates AdaptationUtility, BatteryAware, LocationUtility, and
/// MainActivity under the package directory. Refuses an empty model
/// (EGEN-G02) and a malformed package name (EGEN-G01); on refusal `files`
/// is empty. Same model + options always yields byte-identical output.
GenResult generate(const PolicyModel& model, const GenOptions& options);

/// Lowercase dotted Java package: `[a-z][a-z0-9_]*(\.[a-z][a-z0-9_]*)*`.
bool valid_package_name(std::string_view name);

std::uint64_t fnv1a64(std::string_view data);

} // namespace egen
