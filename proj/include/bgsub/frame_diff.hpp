#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bgsub/imaging.hpp"

namespace bgsub {

/// Consecutive-frame differencing. The background estimate is simply the
/// previous frame, so anything that stops moving vanishes from the mask
/// after one frame and uniformly colored interiors of movers are missed.
struct FrameDiffParams {
  /// A pixel is foreground when |cur - prev| is strictly greater.
  std::uint8_t threshold = 25;
};

ClassMask frame_difference(const GrayFrame& prev, const GrayFrame& cur,
                           const FrameDiffParams& params);

/// Mask k compares frame k+1 against frame k and belongs to frame k+1.
std::vector<ClassMask> run_frame_diff(std::span<const GrayFrame> sequence,
                                      const FrameDiffParams& params);

}  // namespace bgsub
