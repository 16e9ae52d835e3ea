#pragma once

#include <string>

#include "rydent/hamiltonian.hpp"

namespace rydent {

// Binary state cache: 16-byte header (8-byte magic "RYDSTAT1", u32 n_atoms,
// u32 flags), then 2^n_atoms little-endian f64 amplitudes. Flags: bit 0
// converged, bit 1 degenerate warning. Energy and gap are not stored; a
// reloaded state carries NaN there.
void save_state(const GroundState& state, const std::string& path);

GroundState load_state(const std::string& path);

} // namespace rydent
