#include "supercrit/snapshot_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace supercrit {

namespace {

constexpr char kMagic[12] = {'S', 'C', 'R', 'T', '-', 'F', 'L', 'D', '-', 'S', 'N', 'P'};
constexpr std::uint32_t kVersion = 1;

// This code assumes a little-endian host (checked once at runtime).
void check_endianness() {
    std::uint32_t probe = 1;
    char c;
    std::memcpy(&c, &probe, 1);
    if (c != 1) throw std::runtime_error("snapshot io: big-endian hosts unsupported");
}

template <class T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, const std::string& name,
                    const Multiplier& m, double t) {
    check_endianness();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write snapshot: " + path);
    out.write(kMagic, sizeof kMagic);
    put(out, kVersion);
    put(out, std::uint32_t(f.n()));
    put(out, f.grid().length);
    put(out, std::uint32_t(name.size()));
    out.write(name.data(), std::streamsize(name.size()));
    const double* p = f.phys();
    out.write(reinterpret_cast<const char*>(p),
              std::streamsize(sizeof(double) * std::size_t(f.n()) * f.n()));
    if (!out) throw std::runtime_error("short write: " + path);

    std::ofstream meta(path + ".meta.txt");
    meta << "field: " << name << "\n";
    meta << "t: " << t << "\n";
    meta << "N: " << f.n() << "\n";
    meta << "L: " << f.grid().length << "\n";
    meta << "multiplier: " << m.describe() << "\n";
    meta << "domain: periodic torus [0,L)^2; compactly supported data with L >= 4x the data "
            "diameter keeps periodic images negligible\n";
}

Snapshot read_snapshot(const std::string& path) {
    check_endianness();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read snapshot: " + path);
    char magic[12];
    in.read(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw std::runtime_error("not a field snapshot: " + path);
    if (get<std::uint32_t>(in) != kVersion)
        throw std::runtime_error("unsupported snapshot version: " + path);
    std::uint32_t n = get<std::uint32_t>(in);
    double length = get<double>(in);
    std::uint32_t name_len = get<std::uint32_t>(in);
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);

    Snapshot snap;
    snap.name = name;
    snap.field = SpectralField(Grid(int(n), length));
    double* p = snap.field.phys();
    in.read(reinterpret_cast<char*>(p), std::streamsize(sizeof(double) * std::size_t(n) * n));
    if (!in) throw std::runtime_error("short read: " + path);
    return snap;
}

}  // namespace supercrit
