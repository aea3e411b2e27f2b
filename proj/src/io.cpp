#include "blockpu/io.hpp"

#include "blockpu/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace blockpu {
namespace {

// Splits on whitespace and commas and parses every field as a double.
bool parse_row(const std::string& line, std::vector<double>& out)
{
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',') ++j;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
        if (ec != std::errc() || ptr != line.data() + j) return false;
        out.push_back(v);
        i = j;
    }
    return true;
}

bool is_skippable(const std::string& line)
{
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return in;
}

std::string format_double(double v)
{
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

} // namespace

PointSet read_points(std::istream& in, int dim)
{
    PointSet pts(dim);
    std::vector<double> coords;
    std::vector<double> values;
    std::vector<double> row;
    std::string line;
    std::size_t columns = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        if (!parse_row(line, row)) throw IoError("line " + std::to_string(line_no) + ": not a number");
        if (columns == 0) {
            columns = row.size();
            if (columns != static_cast<std::size_t>(dim) && columns != static_cast<std::size_t>(dim) + 1) {
                throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                              " or " + std::to_string(dim + 1) + " columns, got " + std::to_string(columns));
            }
        } else if (row.size() != columns) {
            throw IoError("line " + std::to_string(line_no) + ": inconsistent column count");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw IoError("line " + std::to_string(line_no) + ": non-finite value");
        }
        coords.insert(coords.end(), row.begin(), row.begin() + dim);
        if (columns == static_cast<std::size_t>(dim) + 1) values.push_back(row.back());
    }
    return PointSet(dim, std::move(coords), std::move(values));
}

PointSet read_points(const std::filesystem::path& path, int dim)
{
    auto in = open_in(path);
    return read_points(in, dim);
}

void write_points(std::ostream& out, const PointSet& pts)
{
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto p = pts[i];
        for (int m = 0; m < pts.dim(); ++m) {
            if (m > 0) out << ' ';
            out << format_double(p[m]);
        }
        if (pts.has_values()) out << ' ' << format_double(pts.values()[i]);
        out << '\n';
    }
}

void write_points(const std::filesystem::path& path, const PointSet& pts)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_points(out, pts);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_values(const std::filesystem::path& path, const PointSet& pts, std::span<const double> values)
{
    if (values.size() != pts.size()) throw LengthMismatch("values vs points");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "#";
    for (int m = 0; m < pts.dim(); ++m) out << " x" << (m + 1);
    out << " value\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int m = 0; m < pts.dim(); ++m) out << format_double(pts.coord(i, m)) << ' ';
        out << format_double(values[i]) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace blockpu
