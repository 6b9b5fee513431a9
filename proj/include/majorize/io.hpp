#ifndef MAJORIZE_IO_HPP
#define MAJORIZE_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "majorize/matrix.hpp"
#include "majorize/spider.hpp"
#include "majorize/tree.hpp"

namespace majorize::io {

std::string read_file(const std::string& path);

// One finite decimal per line; blank lines and '#' comment lines ignored.
std::vector<double> parse_vector(std::string_view text);
std::vector<double> read_vector_file(const std::string& path);

// One edge per line as two whitespace-separated labels; '#' comments ignored.
// A file holding a single one-label line describes the one-vertex tree.
Tree parse_edge_list(std::string_view text);
Tree read_edge_list_file(const std::string& path);

// {"K": int, "atoms": [{"leg": int, "r": number, "w": number}, ...]}
SpiderMeasure parse_measure_json(std::string_view text);
SpiderMeasure read_measure_file(const std::string& path);

// %.17g
std::string format_real(double v);
// One row per line, comma separated, 17 significant digits.
std::string format_matrix_csv(const Matrix& m);

}  // namespace majorize::io

#endif
