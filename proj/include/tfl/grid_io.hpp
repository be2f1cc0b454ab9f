#pragma once

#include <string>

#include "tfl/gridmin.hpp"

namespace tfl {

// Binary block: "TFL1", little-endian u32 width and height, f64 h, row-major
// label bytes (row iy = 0 first), then the domain and frozen planes packed
// eight cells per byte, least significant bit first.
std::string encode_tfl1(const LabelGrid& g);
LabelGrid decode_tfl1(const std::string& bytes);

// Portable graymap text (P2), top row first. Values 0-2 are labels, 3-5 are
// frozen labels 0-2 and 255 marks cells outside the domain. An optional
// "# h=<size>" comment sets the cell size (default 1 / width).
std::string encode_pgm(const LabelGrid& g);
LabelGrid decode_pgm(const std::string& text);

// Chooses the format from the first bytes. Throws InvalidInput on I/O or
// format errors; the grid is validated.
LabelGrid load_grid(const std::string& path);
// ".pgm" writes P2 text, anything else TFL1.
void save_grid(const LabelGrid& g, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tfl
