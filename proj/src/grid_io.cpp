// Copyright 2026 The logcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "logcon/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace logcon {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void write_csv(std::ostream& os, const Mat& grid)
{
    char buf[32];
    for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        for (Eigen::Index j = 0; j < grid.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", grid(i, j));
            if (j) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

Mat read_csv(std::istream& is)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            const std::string cell = trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                throw GridFormatError("line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
            row.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw GridFormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(rows.front().size()) +
                                  " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw GridFormatError("empty grid");
    Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

unsigned char grey_level(double v)
{
    if (!(v >= 0.0 && v <= 1.0)) throw GridFormatError("grid value " + std::to_string(v) + " lies outside [0, 1]");
    return static_cast<unsigned char>(std::lround(255.0 * (1.0 - v)));
}

void write_pgm(std::ostream& os, const Mat& grid)
{
    std::vector<char> bytes;
    bytes.reserve(static_cast<std::size_t>(grid.size()));
    for (Eigen::Index i = 0; i < grid.rows(); ++i)
        for (Eigen::Index j = 0; j < grid.cols(); ++j) bytes.push_back(static_cast<char>(grey_level(grid(i, j))));
    os << "P5\n" << grid.cols() << ' ' << grid.rows() << "\n255\n";
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_csv_file(const std::string& path, const Mat& grid)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(os, grid);
    if (!os) throw std::runtime_error("failed writing " + path);
}

Mat read_csv_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_csv(is);
}

void write_pgm_file(const std::string& path, const Mat& grid)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_pgm(os, grid);
    if (!os) throw std::runtime_error("failed writing " + path);
}

}  // namespace logcon
