#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace nslab {

inline constexpr const char* kToolVersion = "nslab 1.0.0";

// Provenance record for a trajectory directory: the configuration that
// produced it plus content hashes of every artifact, so downstream reports
// can verify they are reading what the run wrote.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::map<std::string, std::string> config_echo;
    std::map<std::string, std::string> artifacts;  // relative path -> fnv1a64 hex
};

std::string fnv1a64_file(const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

// Loads dir/manifest.json; with verify set, recomputes artifact hashes and
// throws DataFormatError on mismatch.
RunManifest load_manifest(const std::filesystem::path& dir, bool verify = true);

}  // namespace nslab
