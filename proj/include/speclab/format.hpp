// Numeric formatting and manifest hashing shared by all file emitters.
#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace speclab {

// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("parse_double: bad number '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t seed = 1469598103934665603ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string to_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline constexpr const char* kToolName = "speclab";
inline constexpr const char* kToolVersion = "0.1.0";

// Effective configuration of one CLI run. The hash is taken over the sorted
// key=value pairs, so it does not depend on insertion order.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> entries;

    void set(const std::string& key, const std::string& value) { entries[key] = value; }
    void set(const std::string& key, double value) { entries[key] = format_double(value); }
    void set(const std::string& key, long long value) { entries[key] = std::to_string(value); }

    std::string canonical() const {
        std::string s = "subcommand=" + subcommand + "\n";
        for (const auto& [k, v] : entries) s += k + "=" + v + "\n";
        return s;
    }

    std::string hash() const { return to_hex(fnv1a(canonical())); }

    // First line of every output file.
    std::string header() const {
        return std::string("# ") + kToolName + " " + kToolVersion + " manifest=" + hash();
    }
};

}  // namespace speclab
