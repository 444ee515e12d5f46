#include "nicolas/checkpoint.hpp"

#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nicolas/errors.hpp"

namespace nicolas {

namespace {

std::string double_field(const char* key, double value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %.17g %a\n", key, value, value);
    return buf;
}

// Parses "key <decimal> <hex>" lines; the hex token is authoritative.
double parse_double_field(const std::string& line, const char* key) {
    std::istringstream in(line);
    std::string k, dec, hex;
    if (!(in >> k >> dec) || k != key)
        throw checkpoint_corrupt_error("checkpoint: expected field '" + std::string(key) +
                                       "', got line '" + line + "'");
    const std::string token = (in >> hex) ? hex : dec;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE)
        throw checkpoint_corrupt_error("checkpoint: bad numeric value in field '" +
                                       std::string(key) + "'");
    return v;
}

std::uint64_t parse_uint_field(const std::string& line, const char* key) {
    std::istringstream in(line);
    std::string k;
    std::uint64_t v = 0;
    if (!(in >> k >> v) || k != key)
        throw checkpoint_corrupt_error("checkpoint: expected field '" + std::string(key) +
                                       "', got line '" + line + "'");
    return v;
}

} // namespace

void write_checkpoint_file(const Checkpoint& ck, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw io_error("checkpoint: cannot open '" + path.string() + "' for writing");
    out << "format_version " << ck.format_version << '\n';
    out << "n " << ck.n << '\n';
    out << "p_n " << ck.p_n << '\n';
    out << double_field("theta_sum", ck.theta_sum);
    out << double_field("theta_compensation", ck.theta_compensation);
    out << double_field("mertens_sum", ck.mertens_sum);
    out << double_field("mertens_compensation", ck.mertens_compensation);
    if (ck.min_margin) out << double_field("min_margin", *ck.min_margin);
    if (ck.min_margin_n) out << "min_margin_n " << *ck.min_margin_n << '\n';
    out.flush();
    if (!out)
        throw io_error("checkpoint: write to '" + path.string() + "' failed");
}

Checkpoint read_checkpoint_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("checkpoint: cannot open '" + path.string() + "' for reading");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) lines.push_back(line);
    if (in.bad())
        throw io_error("checkpoint: read from '" + path.string() + "' failed");
    if (lines.size() < 7)
        throw checkpoint_corrupt_error("checkpoint: truncated record in '" + path.string() + "'");

    Checkpoint ck;
    ck.format_version = static_cast<std::int32_t>(parse_uint_field(lines[0], "format_version"));
    if (ck.format_version != checkpoint_format_version)
        throw checkpoint_version_error("checkpoint: format_version " +
                                       std::to_string(ck.format_version) + " not supported");
    ck.n = parse_uint_field(lines[1], "n");
    ck.p_n = parse_uint_field(lines[2], "p_n");
    ck.theta_sum = parse_double_field(lines[3], "theta_sum");
    ck.theta_compensation = parse_double_field(lines[4], "theta_compensation");
    ck.mertens_sum = parse_double_field(lines[5], "mertens_sum");
    ck.mertens_compensation = parse_double_field(lines[6], "mertens_compensation");
    for (std::size_t i = 7; i < lines.size(); ++i) {
        std::istringstream probe(lines[i]);
        std::string key;
        probe >> key;
        if (key == "min_margin")
            ck.min_margin = parse_double_field(lines[i], "min_margin");
        else if (key == "min_margin_n")
            ck.min_margin_n = parse_uint_field(lines[i], "min_margin_n");
        else
            throw checkpoint_corrupt_error("checkpoint: unknown field '" + key + "'");
    }
    return ck;
}

} // namespace nicolas
