#pragma once

#include <string>

#include "vdl/fields.hpp"

namespace vdl {

// binary snapshot: magic "VDL1", little-endian u32 n, f64 l, f64 nu, f64 t,
// then three velocity components of n^3 little-endian f64, row-major x,y,z
struct Checkpoint {
    GridSpec grid;
    double nu = 1.0;
    double t = 0.0;
    VectorField u;

    Checkpoint() : u(grid) {}
    explicit Checkpoint(const GridSpec& g) : grid(g), u(g) {}
};

void write_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint read_checkpoint(const std::string& path);

} // namespace vdl
