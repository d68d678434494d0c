#include "nogam/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace nogam {

namespace {

double parse_cell(const std::string& cell, int row, int col) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    // allow surrounding whitespace only
    while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
    if (end == begin || (end && *end != '\0'))
        throw ParseError("csv: non-numeric cell at row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    return value;
}

}  // namespace

Matrix read_csv_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        int col = 0;
        while (std::getline(ls, cell, ',')) {
            ++col;
            row.push_back(parse_cell(cell, lineno, col));
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw ParseError("csv: row " + std::to_string(lineno) + " has " +
                             std::to_string(row.size()) + " cells, expected " +
                             std::to_string(width));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("csv: no data rows");

    Matrix m(rows.size(), width);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
    if (!m.allFinite()) throw ParseError("csv: non-finite value in data");
    return m;
}

Matrix read_csv_matrix_string(const std::string& text) {
    std::istringstream in(text);
    return read_csv_matrix(in);
}

Matrix read_csv_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return read_csv_matrix(in);
}

std::string write_csv_matrix(const Matrix& m) {
    std::string out;
    out.reserve(static_cast<size_t>(m.size()) * 20);
    char buf[40];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
            if (c) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

}  // namespace nogam
