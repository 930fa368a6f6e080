#include "rsclust/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace rsclust {

namespace {

bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#';
    }
    return true;
}

}  // namespace

Dataset load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::vector<double> coords;
    std::size_t n = 0;
    std::size_t d = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank_or_comment(line)) continue;

        std::size_t row_dim = 0;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            if (std::isspace(static_cast<unsigned char>(*p)) || *p == ',') {
                ++p;
                continue;
            }
            double value = 0.0;
            const auto [next, ec] = std::from_chars(p, end, value);
            if (ec != std::errc{} || next == p) {
                throw FormatError("unparseable token at line " + std::to_string(line_no) +
                                      ": '" + std::string(p, end) + "'",
                                  line_no);
            }
            if (!std::isfinite(value)) {
                throw FormatError("non-finite value at line " + std::to_string(line_no),
                                  line_no);
            }
            coords.push_back(value);
            ++row_dim;
            p = next;
        }
        if (d == 0) {
            d = row_dim;
        } else if (row_dim != d) {
            throw FormatError("ragged row at line " + std::to_string(line_no) +
                                  ": expected " + std::to_string(d) + " values, got " +
                                  std::to_string(row_dim),
                              line_no);
        }
        ++n;
    }
    if (n == 0) throw FormatError("no data rows in '" + path + "'");
    return Dataset(n, d, std::move(coords));
}

}  // namespace rsclust
