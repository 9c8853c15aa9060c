#include "nslab/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "nslab/errors.hpp"

namespace nslab {

std::string fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataFormatError("cannot hash missing file: " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir) {
    nlohmann::json j;
    j["tool_version"] = manifest.tool_version;
    j["config"] = manifest.config_echo;
    j["artifacts"] = manifest.artifacts;
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw DataFormatError("cannot write manifest in " + dir.string());
    out << j.dump(2) << '\n';
}

RunManifest load_manifest(const std::filesystem::path& dir, bool verify) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw DataFormatError("no manifest.json in " + dir.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataFormatError("bad manifest in " + dir.string() + ": " + e.what());
    }
    RunManifest manifest;
    manifest.tool_version = j.value("tool_version", "");
    if (j.contains("config"))
        manifest.config_echo = j["config"].get<std::map<std::string, std::string>>();
    if (j.contains("artifacts"))
        manifest.artifacts = j["artifacts"].get<std::map<std::string, std::string>>();
    if (verify) {
        for (const auto& [rel, hash] : manifest.artifacts) {
            const std::string actual = fnv1a64_file(dir / rel);
            if (actual != hash)
                throw DataFormatError("manifest hash mismatch for " + rel + " in " + dir.string());
        }
    }
    return manifest;
}

}  // namespace nslab
