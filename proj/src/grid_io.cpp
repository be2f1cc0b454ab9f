#include "tfl/grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "tfl/error.hpp"

namespace tfl {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((bits >> (8 * k)) & 0xff));
}

std::uint64_t get_le(const std::string& in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int k = 0; k < bytes; ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + k])) << (8 * k);
  return v;
}

void put_plane(std::string& out, const std::vector<std::uint8_t>& plane) {
  for (std::size_t b = 0; b < (plane.size() + 7) / 8; ++b) {
    unsigned char byte = 0;
    for (std::size_t k = 0; k < 8 && 8 * b + k < plane.size(); ++k) {
      if (plane[8 * b + k]) byte |= static_cast<unsigned char>(1u << k);
    }
    out.push_back(static_cast<char>(byte));
  }
}

void get_plane(const std::string& in, std::size_t at, std::vector<std::uint8_t>& plane) {
  for (std::size_t c = 0; c < plane.size(); ++c) {
    plane[c] = (static_cast<unsigned char>(in[at + c / 8]) >> (c % 8)) & 1u;
  }
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

}  // namespace

std::string encode_tfl1(const LabelGrid& g) {
  std::string out = "TFL1";
  put_u32(out, static_cast<std::uint32_t>(g.width));
  put_u32(out, static_cast<std::uint32_t>(g.height));
  put_f64(out, g.h);
  out.append(g.labels.begin(), g.labels.end());
  put_plane(out, g.domain);
  put_plane(out, g.frozen);
  return out;
}

LabelGrid decode_tfl1(const std::string& bytes) {
  if (bytes.size() < 20 || bytes.compare(0, 4, "TFL1") != 0) bad("not a TFL1 grid");
  const auto w = get_le(bytes, 4, 4), ht = get_le(bytes, 8, 4);
  const double h = std::bit_cast<double>(get_le(bytes, 12, 8));
  if (w == 0 || ht == 0 || w > 65536 || ht > 65536) bad("TFL1 grid has invalid dimensions");
  if (!(h > 0.0) || !std::isfinite(h)) bad("TFL1 grid has invalid cell size");
  const std::size_t n = w * ht, plane = (n + 7) / 8;
  if (bytes.size() != 20 + n + 2 * plane) bad("TFL1 grid has the wrong length");
  LabelGrid g(static_cast<int>(w), static_cast<int>(ht), h);
  std::memcpy(g.labels.data(), bytes.data() + 20, n);
  get_plane(bytes, 20 + n, g.domain);
  get_plane(bytes, 20 + n + plane, g.frozen);
  for (std::size_t c = 0; c < n; ++c) {
    if (!g.domain[c]) g.labels[c] = 0;
  }
  g.validate();
  return g;
}

std::string encode_pgm(const LabelGrid& g) {
  std::ostringstream os;
  os.precision(17);
  os << "P2\n# h=" << g.h << "\n" << g.width << " " << g.height << "\n255\n";
  for (int iy = g.height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const int c = g.index(ix, iy);
      const int v = !g.domain[c] ? 255 : g.labels[c] + (g.frozen[c] ? 3 : 0);
      os << v << (ix + 1 < g.width ? " " : "\n");
    }
  }
  return os.str();
}

LabelGrid decode_pgm(const std::string& text) {
  // Strip comments, remembering "# h=".
  std::string body;
  double h = -1.0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      const std::string comment = line.substr(hash + 1);
      const auto key = comment.find("h=");
      if (key != std::string::npos) {
        try {
          h = std::stod(comment.substr(key + 2));
        } catch (const std::exception&) {
          bad("unreadable h in graymap comment");
        }
      }
      line.erase(hash);
    }
    body += line + "\n";
  }
  std::istringstream in(body);
  std::string magic;
  long w = 0, ht = 0, maxval = 0;
  if (!(in >> magic) || magic != "P2") bad("not a P2 graymap");
  if (!(in >> w >> ht >> maxval) || w <= 0 || ht <= 0 || w > 65536 || ht > 65536) bad("bad graymap header");
  if (h < 0.0) h = 1.0 / static_cast<double>(w);
  if (!(h > 0.0) || !std::isfinite(h)) bad("graymap cell size must be positive");
  LabelGrid g(static_cast<int>(w), static_cast<int>(ht), h);
  for (long row = 0; row < ht; ++row) {
    for (long ix = 0; ix < w; ++ix) {
      long v;
      if (!(in >> v)) bad("graymap ends early");
      const int c = g.index(static_cast<int>(ix), static_cast<int>(ht - 1 - row));
      if (v == 255) {
        g.domain[c] = 0;
      } else if (v >= 0 && v <= 5) {
        g.domain[c] = 1;
        g.labels[c] = static_cast<std::uint8_t>(v % 3);
        g.frozen[c] = v >= 3;
      } else {
        bad("graymap value " + std::to_string(v) + " is not a label (0-5) or 255");
      }
    }
  }
  long extra;
  if (in >> extra) bad("graymap has trailing values");
  g.validate();
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(contents.data(), static_cast<std::streamsize>(contents.size()))) bad("cannot write " + path);
}

LabelGrid load_grid(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.compare(0, 4, "TFL1") == 0) return decode_tfl1(bytes);
  return decode_pgm(bytes);
}

void save_grid(const LabelGrid& g, const std::string& path) {
  const bool pgm = path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0;
  write_file(path, pgm ? encode_pgm(g) : encode_tfl1(g));
}

}  // namespace tfl
