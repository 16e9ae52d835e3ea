#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace rydent {

enum class ShotFormat { lines, csv };

ShotFormat shot_format_from_name(const std::string& name);

// Text rendering is atom-0-first: character j of the string is bit j.
std::string bitstring_text(std::uint64_t bits, int n_atoms);
std::uint64_t parse_bitstring(const std::string& text);

struct ShotData {
    int n_atoms = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
};

// lines: one bitstring per line. csv: "bitstring,count" per line (duplicate
// bitstrings accumulate). expected_atoms = 0 infers the width from the first
// line; otherwise any mismatch is fatal.
ShotData read_shot_file(const std::string& path, ShotFormat format, int expected_atoms = 0);
ShotData parse_shots(std::istream& in, ShotFormat format, int expected_atoms,
                     const std::string& origin);

void write_shot_file(const std::string& path, const std::map<std::uint64_t, std::uint64_t>& counts,
                     int n_atoms, ShotFormat format);

} // namespace rydent
