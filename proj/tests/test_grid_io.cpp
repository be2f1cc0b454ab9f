#include <doctest.h>

#include <filesystem>
#include <random>

#include "tfl/error.hpp"
#include "tfl/grid_io.hpp"
#include "tfl/scenarios.hpp"

using namespace tfl;

namespace {

LabelGrid random_grid(int w, int hgt, std::uint64_t seed) {
  LabelGrid g(w, hgt, 0.125);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < w * hgt; ++k) {
    g.labels[k] = static_cast<std::uint8_t>(rng() % 3);
    g.frozen[k] = rng() % 4 == 0;
  }
  // Knock out a corner so the domain plane is not trivial.
  g.domain[0] = 0, g.frozen[0] = 0, g.labels[0] = 0;
  return g;
}

void same(const LabelGrid& a, const LabelGrid& b) {
  CHECK(a.width == b.width);
  CHECK(a.height == b.height);
  CHECK(a.h == b.h);
  CHECK(a.labels == b.labels);
  CHECK(a.domain == b.domain);
  CHECK(a.frozen == b.frozen);
}

}  // namespace

TEST_CASE("binary round trip") {
  for (auto [w, h] : {std::pair{2, 1}, std::pair{7, 3}, std::pair{16, 16}, std::pair{33, 9}}) {
    const LabelGrid g = random_grid(w, h, 5 + w);
    const std::string bytes = encode_tfl1(g);
    CHECK(bytes.substr(0, 4) == "TFL1");
    CHECK(bytes.size() == 4 + 8 + 8 + size_t(w * h) + 2 * size_t((w * h + 7) / 8));
    same(decode_tfl1(bytes), g);
  }
  const LabelGrid j = junction_grid(64, SurfaceTensions(3, 4, 5), 8);
  same(decode_tfl1(encode_tfl1(j)), j);
}

TEST_CASE("binary decoding rejects damage") {
  const std::string good = encode_tfl1(random_grid(8, 8, 1));
  CHECK_THROWS_AS(decode_tfl1(good.substr(0, good.size() - 1)), Error);
  CHECK_THROWS_AS(decode_tfl1(good + "x"), Error);
  CHECK_THROWS_AS(decode_tfl1("TFL2" + good.substr(4)), Error);
  std::string bad_label = good;
  bad_label[21] = 7;
  CHECK_THROWS_AS(decode_tfl1(bad_label), Error);
}

TEST_CASE("graymap round trip") {
  const LabelGrid g = random_grid(9, 5, 3);
  const std::string text = encode_pgm(g);
  CHECK(text.rfind("P2", 0) == 0);
  same(decode_pgm(text), g);
  const LabelGrid d = speck_grid(32, 8);
  same(decode_pgm(encode_pgm(d)), d);

  // Hand-written file: top row first, 255 outside, default h = 1/width.
  const LabelGrid m = decode_pgm("P2\n3 2\n255\n255 1 2\n0 3 5\n");
  CHECK(m.h == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(m.domain[m.index(0, 1)]);
  CHECK(m.labels[m.index(1, 1)] == 1);
  CHECK(m.labels[m.index(1, 0)] == 0);
  CHECK(m.frozen[m.index(1, 0)]);
  CHECK(m.labels[m.index(2, 0)] == 2);
  CHECK(m.frozen[m.index(2, 0)]);
  CHECK(decode_pgm("P2\n# h=0.5\n1 1\n255\n1\n").h == 0.5);
}

TEST_CASE("graymap decoding rejects damage") {
  CHECK_THROWS_AS(decode_pgm("P5\n1 1\n255\n0\n"), Error);
  CHECK_THROWS_AS(decode_pgm("P2\n2 1\n255\n0\n"), Error);
  CHECK_THROWS_AS(decode_pgm("P2\n1 1\n255\n7\n"), Error);
  CHECK_THROWS_AS(decode_pgm("P2\n1 1\n255\n255\n"), Error);  // empty domain
}

TEST_CASE("files pick their format") {
  const auto dir = std::filesystem::temp_directory_path() / "tfl_grid_io_test";
  std::filesystem::create_directories(dir);
  const LabelGrid g = split_grid(24, 8);
  save_grid(g, (dir / "a.pgm").string());
  save_grid(g, (dir / "a.tfl").string());
  CHECK(read_file((dir / "a.pgm").string()).rfind("P2", 0) == 0);
  same(load_grid((dir / "a.pgm").string()), g);
  same(load_grid((dir / "a.tfl").string()), g);
  CHECK_THROWS_AS(load_grid((dir / "missing.tfl").string()), Error);
  std::filesystem::remove_all(dir);
}
