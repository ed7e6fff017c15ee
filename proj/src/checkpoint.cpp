#include "vdl/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "vdl/errors.hpp"

namespace vdl {
namespace {

constexpr char kMagic[4] = {'V', 'D', 'L', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double d) {
    std::uint64_t v;
    static_assert(sizeof(v) == sizeof(d));
    std::memcpy(&v, &d, sizeof(v));
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double d;
    std::memcpy(&d, &v, sizeof(d));
    return d;
}

} // namespace

void write_checkpoint(const std::string& path, const Checkpoint& ck) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw format_error("cannot open for writing: " + path);
    os.write(kMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(ck.grid.n));
    put_f64(os, ck.grid.l);
    put_f64(os, ck.nu);
    put_f64(os, ck.t);
    for (int c = 0; c < 3; ++c)
        for (double d : ck.u.c[c]) put_f64(os, d);
    if (!os) throw format_error("write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw format_error("cannot open checkpoint: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw format_error("bad checkpoint magic in " + path);
    const std::uint32_t n = get_u32(is);
    if (!is || n == 0 || n > (1u << 12))
        throw format_error("implausible grid size in " + path);
    GridSpec g;
    g.n = static_cast<int>(n);
    g.l = get_f64(is);
    Checkpoint ck(g);
    ck.nu = get_f64(is);
    ck.t = get_f64(is);
    if (!is || !(g.l > 0.0)) throw format_error("bad checkpoint header in " + path);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) ck.u.c[c][i] = get_f64(is);
    if (!is) throw format_error("truncated checkpoint: " + path);
    is.peek();
    if (!is.eof()) throw format_error("trailing bytes in checkpoint: " + path);
    return ck;
}

} // namespace vdl
