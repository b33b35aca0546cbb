#include "segproc/format.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace segproc {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const CsvDoc& doc) {
    for (const auto& c : doc.comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        if (i) os << ',';
        os << doc.columns[i];
    }
    os << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
}

std::string describe_generator() { return "pcg64-xsl-rr-128-64"; }

}  // namespace segproc
