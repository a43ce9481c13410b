#include "bgsub/frame_diff.hpp"

#include <stdexcept>

namespace bgsub {

ClassMask frame_difference(const GrayFrame& prev, const GrayFrame& cur,
                           const FrameDiffParams& params) {
  if (!prev.same_shape(cur)) throw std::invalid_argument("frame_difference: dimension mismatch");
  ClassMask mask(cur.width(), cur.height());
  const auto a = prev.pixels();
  const auto b = cur.pixels();
  auto out = mask.pixels();
  const int th = params.threshold;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(b[i]) - static_cast<int>(a[i]);
    out[i] = (d > th || -d > th) ? PixelClass::Foreground : PixelClass::Background;
  }
  return mask;
}

std::vector<ClassMask> run_frame_diff(std::span<const GrayFrame> sequence,
                                      const FrameDiffParams& params) {
  if (sequence.size() < 2) throw std::invalid_argument("run_frame_diff: need at least 2 frames");
  std::vector<ClassMask> masks;
  masks.reserve(sequence.size() - 1);
  for (std::size_t k = 1; k < sequence.size(); ++k) {
    masks.push_back(frame_difference(sequence[k - 1], sequence[k], params));
  }
  return masks;
}

}  // namespace bgsub
