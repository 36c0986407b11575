#ifndef CLIPPPO_CSV_HPP_
#define CLIPPPO_CSV_HPP_

#include <string>
#include <vector>

namespace clipppo {

// Shortest round-trip decimal form of a double (via std::to_chars), so CSV
// output is byte-reproducible and parses back to the identical value.
std::string format_double(double value);

// Minimal CSV reading for the harness's own files: returns rows of cells,
// skipping '#' comment lines.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace clipppo

#endif  // CLIPPPO_CSV_HPP_
