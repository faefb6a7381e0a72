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


#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "logcon/geometry.hpp"

namespace logcon {

class GridFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Row-major comma-separated values; the first row is the top of the image.
void write_csv(std::ostream& os, const Mat& grid);
Mat read_csv(std::istream& is);

/// Binary P5 greymap with v -> round(255 (1 - v)), so 1 renders dark.
/// Throws GridFormatError for values outside [0, 1].
void write_pgm(std::ostream& os, const Mat& grid);

unsigned char grey_level(double v);

void write_csv_file(const std::string& path, const Mat& grid);
Mat read_csv_file(const std::string& path);
void write_pgm_file(const std::string& path, const Mat& grid);

}  // namespace logcon
