#include "rydent/state_io.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "rydent/errors.hpp"

namespace rydent {

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'Y', 'D', 'S', 'T', 'A', 'T', '1'};

void put_u32(std::ofstream& out, std::uint32_t v) {
    std::array<unsigned char, 4> b{static_cast<unsigned char>(v),
                                   static_cast<unsigned char>(v >> 8),
                                   static_cast<unsigned char>(v >> 16),
                                   static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    std::array<unsigned char, 4> b{};
    in.read(reinterpret_cast<char*>(b.data()), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ofstream& out, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    std::array<unsigned char, 8> b;
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] =
        static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b.data()), 8);
}

} // namespace

void save_state(const GroundState& state, const std::string& path) {
    if (state.n_atoms < 1 ||
        state.amplitudes.size() != (std::size_t{1} << state.n_atoms))
        throw validation_error("save_state: malformed state");
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("save_state: cannot open " + tmp.string());
        out.write(kMagic.data(), kMagic.size());
        put_u32(out, static_cast<std::uint32_t>(state.n_atoms));
        std::uint32_t flags = 0;
        if (state.converged) flags |= 1u;
        if (state.degenerate) flags |= 2u;
        put_u32(out, flags);
        for (double a : state.amplitudes) put_f64(out, a);
        if (!out) throw io_error("save_state: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw io_error("save_state: rename to " + path + " failed: " + ec.message());
}

GroundState load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("load_state: cannot open " + path);
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw validation_error("load_state: " + path + " is not a state file");
    const std::uint32_t n_atoms = get_u32(in);
    const std::uint32_t flags = get_u32(in);
    if (!in || n_atoms < 1 || n_atoms > 46)
        throw validation_error("load_state: implausible atom count in " + path);

    GroundState gs;
    gs.n_atoms = static_cast<int>(n_atoms);
    gs.converged = (flags & 1u) != 0;
    gs.degenerate = (flags & 2u) != 0;
    gs.energy = std::numeric_limits<double>::quiet_NaN();
    gs.gap = std::numeric_limits<double>::quiet_NaN();
    gs.residual_norm = std::numeric_limits<double>::quiet_NaN();

    const std::size_t dim = std::size_t{1} << n_atoms;
    gs.amplitudes.resize(dim);
    std::vector<unsigned char> raw(dim * 8);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw validation_error("load_state: " + path + " is truncated");
    in.peek();
    if (!in.eof()) throw validation_error("load_state: " + path + " has trailing bytes");
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t v = 0;
        for (int b = 7; b >= 0; --b) v = (v << 8) | raw[i * 8 + static_cast<std::size_t>(b)];
        std::memcpy(&gs.amplitudes[i], &v, 8);
    }
    double nrm2 = 0.0;
    for (double a : gs.amplitudes) {
        if (!std::isfinite(a))
            throw validation_error("load_state: non-finite amplitude in " + path);
        nrm2 += a * a;
    }
    if (std::abs(nrm2 - 1.0) > 1e-9)
        throw validation_error("load_state: state in " + path + " is not normalized");
    return gs;
}

} // namespace rydent
