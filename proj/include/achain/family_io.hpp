#pragma once

// Text family format:
//   n=<int>
//   <lowercase hex mask>      one per line, strictly increasing
// Lines starting with '#' are comments; blank lines are skipped.

#include "achain/subset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace achain {

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline void write_family(std::ostream& out, const SetFamily& family) {
    out << "n=" << family.ground() << '\n';
    char buf[17];
    for (auto m : family.masks()) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, m, 16);
        out.write(buf, end - buf);
        out << '\n';
    }
}

inline std::string format_family(const SetFamily& family) {
    std::ostringstream out;
    write_family(out, family);
    return out.str();
}

inline SetFamily read_family(std::istream& in) {
    std::string text;
    std::size_t line_no = 0;
    int n = -1;
    std::vector<std::uint64_t> masks;
    while (std::getline(in, text)) {
        ++line_no;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty() || text.front() == '#') continue;
        if (n < 0) {
            if (text.rfind("n=", 0) != 0) throw FormatError(line_no, "expected header 'n=<int>'");
            int value = -1;
            auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0 || value > kMaxGroundSet)
                throw FormatError(line_no, "ground-set size must be an integer in [0, 63]");
            n = value;
            continue;
        }
        for (char c : text)
            if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
                throw FormatError(line_no, "mask must be lowercase hexadecimal");
        std::uint64_t mask = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), mask, 16);
        if (ec != std::errc{} || ptr != text.data() + text.size()) throw FormatError(line_no, "mask out of range");
        if (mask & ~full_mask(n)) throw FormatError(line_no, "mask has bits beyond the ground set");
        if (!masks.empty() && masks.back() >= mask) throw FormatError(line_no, "masks must be strictly increasing");
        masks.push_back(mask);
    }
    if (n < 0) throw FormatError(line_no, "missing header 'n=<int>'");
    return SetFamily::from_sorted_masks(n, std::move(masks));
}

inline SetFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    return read_family(in);
}

inline SetFamily load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open family file " + path);
    return read_family(in);
}

inline void save_family(const std::string& path, const SetFamily& family) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write family file " + path);
    write_family(out, family);
}

}  // namespace achain
