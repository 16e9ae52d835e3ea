#include "rydent/shot_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rydent/errors.hpp"

namespace rydent {

ShotFormat shot_format_from_name(const std::string& name) {
    if (name == "lines") return ShotFormat::lines;
    if (name == "csv") return ShotFormat::csv;
    throw validation_error("unknown shot format '" + name + "' (expected lines or csv)");
}

std::string bitstring_text(std::uint64_t bits, int n_atoms) {
    std::string s(static_cast<std::size_t>(n_atoms), '0');
    for (int j = 0; j < n_atoms; ++j)
        if ((bits >> j) & 1u) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

std::uint64_t parse_bitstring(const std::string& text) {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < text.size(); ++j) {
        const char c = text[j];
        if (c == '1')
            bits |= std::uint64_t{1} << j;
        else if (c != '0')
            throw validation_error(std::string("invalid character '") + c + "' in bitstring");
    }
    return bits;
}

namespace {

[[noreturn]] void bad_line(const std::string& origin, std::size_t line_no,
                           const std::string& why) {
    throw validation_error(origin + ": line " + std::to_string(line_no) + ": " + why);
}

} // namespace

ShotData parse_shots(std::istream& in, ShotFormat format, int expected_atoms,
                     const std::string& origin) {
    ShotData data;
    data.n_atoms = expected_atoms;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) bad_line(origin, line_no, "empty line");

        std::string bit_text;
        std::uint64_t count = 1;
        if (format == ShotFormat::csv) {
            const std::size_t comma = line.find(',');
            if (comma == std::string::npos) bad_line(origin, line_no, "expected bitstring,count");
            bit_text = line.substr(0, comma);
            const std::string count_text = line.substr(comma + 1);
            const auto* first = count_text.data();
            const auto* last = first + count_text.size();
            const auto res = std::from_chars(first, last, count);
            if (res.ec != std::errc{} || res.ptr != last)
                bad_line(origin, line_no, "bad count '" + count_text + "'");
            if (count < 1) bad_line(origin, line_no, "count must be >= 1");
        } else {
            bit_text = line;
        }

        if (bit_text.empty() || bit_text.size() > 63)
            bad_line(origin, line_no, "bitstring length out of range");
        if (data.n_atoms == 0) data.n_atoms = static_cast<int>(bit_text.size());
        if (static_cast<int>(bit_text.size()) != data.n_atoms)
            bad_line(origin, line_no,
                     "bitstring has " + std::to_string(bit_text.size()) + " atoms, expected " +
                         std::to_string(data.n_atoms));
        std::uint64_t bits = 0;
        try {
            bits = parse_bitstring(bit_text);
        } catch (const validation_error& e) {
            bad_line(origin, line_no, e.what());
        }
        data.counts[bits] += count;
    }
    if (data.counts.empty()) throw validation_error(origin + ": no shot records");
    return data;
}

ShotData read_shot_file(const std::string& path, ShotFormat format, int expected_atoms) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open shot file " + path);
    return parse_shots(in, format, expected_atoms, path);
}

void write_shot_file(const std::string& path, const std::map<std::uint64_t, std::uint64_t>& counts,
                     int n_atoms, ShotFormat format) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string());
        for (const auto& [bits, count] : counts) {
            const std::string text = bitstring_text(bits, n_atoms);
            if (format == ShotFormat::csv) {
                out << text << ',' << count << '\n';
            } else {
                for (std::uint64_t r = 0; r < count; ++r) out << text << '\n';
            }
        }
        if (!out) throw io_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw io_error("rename to " + path + " failed: " + ec.message());
}

} // namespace rydent
