#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace segproc {

// Shortest decimal string that round-trips to the same double
// (std::to_chars).  Used everywhere a double lands in a CSV cell so output
// is byte-stable across platforms and runs.
std::string format_double(double x);

// CSV conventions shared by all emitters: '#'-prefixed comment lines for
// seed / config / generator, one header row, LF line endings.
struct CsvDoc {
    std::vector<std::string> comments;   // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const CsvDoc& doc);

std::string describe_generator();  // fixed id string for the rng in use

}  // namespace segproc
