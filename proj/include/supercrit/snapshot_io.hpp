#pragma once

#include "supercrit/multiplier.hpp"
#include "supercrit/spectral_field.hpp"

#include <string>

namespace supercrit {

/// Field snapshot format (little-endian throughout):
///   bytes  0..11  magic "SCRT-FLD-SNP"
///   bytes 12..15  u32 version (1)
///   u32 N, f64 L, u32 name length, name bytes,
///   then N*N f64 physical values, row-major.
/// A text sidecar <path>.meta.txt carries the multiplier metadata and the
/// domain note.
void write_snapshot(const std::string& path, const SpectralField& f, const std::string& name,
                    const Multiplier& m, double t);

struct Snapshot {
    SpectralField field;
    std::string name;
};

Snapshot read_snapshot(const std::string& path);

}  // namespace supercrit
