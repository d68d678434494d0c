#pragma once

#include "nogam/types.hpp"

#include <iosfwd>
#include <string>

namespace nogam {

/// Headerless numeric CSV -> matrix. Throws ParseError naming the offending
/// 1-based row/column on malformed input; all rows must have equal width.
Matrix read_csv_matrix(std::istream& in);
Matrix read_csv_matrix_string(const std::string& text);
Matrix read_csv_matrix_file(const std::string& path);

/// Full double precision ("%.17g"), one row per line, comma separated.
std::string write_csv_matrix(const Matrix& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nogam
