#include "nslab/snapshot_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "nslab/errors.hpp"

namespace nslab {

namespace {

constexpr char kMagic[5] = {'N', 'S', 'L', 'P', '1'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void write_raw(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in, const std::filesystem::path& path) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw DataFormatError("snapshot truncated: " + path.string());
    return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataFormatError("cannot open snapshot for writing: " + path.string());
    out.write(kMagic, sizeof(kMagic));
    write_raw(out, kVersion);
    write_raw(out, static_cast<std::uint32_t>(field.grid.n));
    write_raw(out, time);
    write_raw(out, field.grid.nu);
    for (int c = 0; c < 3; ++c) {
        out.write(reinterpret_cast<const char*>(field.comp[c].data()),
                  static_cast<std::streamsize>(field.comp[c].size() * sizeof(Complex)));
    }
    if (!out) throw DataFormatError("snapshot write failed: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataFormatError("cannot open snapshot: " + path.string());
    char magic[5];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataFormatError("not an NSLP1 snapshot: " + path.string());
    const auto version = read_raw<std::uint8_t>(in, path);
    if (version != kVersion) throw DataFormatError("unsupported NSLP1 version in " + path.string());
    const auto n = read_raw<std::uint32_t>(in, path);
    const double time = read_raw<double>(in, path);
    const double nu = read_raw<double>(in, path);
    Snapshot snap;
    snap.time = time;
    snap.field = SpectralField(Grid(static_cast<int>(n), nu));
    for (int c = 0; c < 3; ++c) {
        in.read(reinterpret_cast<char*>(snap.field.comp[c].data()),
                static_cast<std::streamsize>(snap.field.comp[c].size() * sizeof(Complex)));
        if (!in) throw DataFormatError("snapshot truncated: " + path.string());
    }
    return snap;
}

}  // namespace nslab
