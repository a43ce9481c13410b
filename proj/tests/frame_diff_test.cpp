#include "bgsub/frame_diff.hpp"

#include <gtest/gtest.h>

#include <random>

namespace bgsub {
namespace {

GrayFrame random_gray(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> byte(0, 255);
  GrayFrame g(w, h);
  for (auto& p : g.pixels()) p = static_cast<std::uint8_t>(byte(rng));
  return g;
}

std::size_t count(const ClassMask& m, PixelClass c) {
  return static_cast<std::size_t>(std::count(m.pixels().begin(), m.pixels().end(), c));
}

TEST(FrameDiff, IdenticalFramesAreBackground) {
  std::mt19937 rng(3);
  const GrayFrame f = random_gray(rng, 16, 9);
  for (int th : {0, 25, 255}) {
    const auto m = frame_difference(f, f, {static_cast<std::uint8_t>(th)});
    EXPECT_EQ(count(m, PixelClass::Background), f.size());
  }
}

TEST(FrameDiff, StrictThreshold) {
  const GrayFrame prev(1, 1, 100);
  EXPECT_EQ(frame_difference(prev, GrayFrame(1, 1, 130), {25})[0], PixelClass::Foreground);
  EXPECT_EQ(frame_difference(prev, GrayFrame(1, 1, 125), {25})[0], PixelClass::Background);
  EXPECT_EQ(frame_difference(prev, GrayFrame(1, 1, 75), {25})[0], PixelClass::Background);
  EXPECT_EQ(frame_difference(prev, GrayFrame(1, 1, 74), {25})[0], PixelClass::Foreground);
}

TEST(FrameDiff, DimensionMismatchThrows) {
  EXPECT_THROW(frame_difference(GrayFrame(2, 2), GrayFrame(2, 3), {10}), std::invalid_argument);
}

TEST(FrameDiff, SequenceCounting) {
  const std::vector<GrayFrame> one{GrayFrame(4, 4, 7)};
  EXPECT_THROW(run_frame_diff(one, {10}), std::invalid_argument);

  const std::vector<GrayFrame> two(2, GrayFrame(4, 4, 7));
  EXPECT_EQ(run_frame_diff(two, {10}).size(), 1u);

  const std::vector<GrayFrame> same(6, GrayFrame(5, 3, 42));
  const auto masks = run_frame_diff(same, {0});
  ASSERT_EQ(masks.size(), 5u);
  for (const auto& m : masks) EXPECT_EQ(count(m, PixelClass::Foreground), 0u);
}

TEST(FrameDiff, MaskKComparesFrameKPlusOne) {
  std::vector<GrayFrame> seq(3, GrayFrame(1, 1, 10));
  seq[2] = GrayFrame(1, 1, 200);
  const auto masks = run_frame_diff(seq, {25});
  EXPECT_EQ(masks[0][0], PixelClass::Background);
  EXPECT_EQ(masks[1][0], PixelClass::Foreground);
}

TEST(FrameDiff, UniformMoverLeavesInteriorHole) {
  const int w = 80, h = 20, rect_w = 12, d = 3, x0 = 2;
  const std::uint8_t bg = 40, fg = 200;
  std::vector<GrayFrame> seq;
  for (int k = 0; k < 15; ++k) {
    GrayFrame g(w, h, bg);
    for (int y = 5; y < 15; ++y) {
      for (int x = x0 + d * k; x < x0 + d * k + rect_w; ++x) g.at(x, y) = fg;
    }
    seq.push_back(g);
  }
  const FrameDiffParams p{25};
  const auto masks = run_frame_diff(seq, p);
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const int prev_x = x0 + d * static_cast<int>(m);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        // Brute force straight from the inequality.
        const int diff = std::abs(int(seq[m + 1].at(x, y)) - int(seq[m].at(x, y)));
        const bool brute = diff > p.threshold;
        const bool in_rows = y >= 5 && y < 15;
        const bool trailing = x >= prev_x && x < prev_x + d;
        const bool leading = x >= prev_x + rect_w && x < prev_x + rect_w + d;
        ASSERT_EQ(brute, in_rows && (trailing || leading)) << "x=" << x << " y=" << y;
        ASSERT_EQ(masks[m].at(x, y) == PixelClass::Foreground, brute);
      }
    }
  }
}

TEST(FrameDiff, Properties) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int trial = 0; trial < 50; ++trial) {
    const GrayFrame a = random_gray(rng, 11, 7);
    const GrayFrame b = random_gray(rng, 11, 7);
    const auto lo = static_cast<std::uint8_t>(byte(rng));
    const auto hi = static_cast<std::uint8_t>(std::max<int>(lo, byte(rng)));

    EXPECT_EQ(frame_difference(a, b, {lo}), frame_difference(b, a, {lo}));

    const auto m_lo = frame_difference(a, b, {lo});
    const auto m_hi = frame_difference(a, b, {hi});
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (m_hi[i] == PixelClass::Foreground) EXPECT_EQ(m_lo[i], PixelClass::Foreground);
      EXPECT_NE(m_lo[i], PixelClass::Shadow);
      EXPECT_NE(m_lo[i], PixelClass::Highlight);
    }

    EXPECT_EQ(count(frame_difference(a, b, {255}), PixelClass::Foreground), 0u);
    const auto m0 = frame_difference(a, b, {0});
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(m0[i] == PixelClass::Foreground, a[i] != b[i]);
    }
  }
}

}  // namespace
}  // namespace bgsub
