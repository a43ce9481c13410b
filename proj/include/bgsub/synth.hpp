#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bgsub/imaging.hpp"

namespace bgsub {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool contains(int px, int py) const { return px >= x && px < x + w && py >= y && py < y + h; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr int kNever = std::numeric_limits<int>::max();

/// Straight-line motion of a rectangle: rect at frame 0 plus velocity per
/// frame, frozen from `halt_frame` on. Visible on [appear_frame, disappear_frame].
struct Track {
  Rect rect;
  int dx = 0;
  int dy = 0;
  int appear_frame = 0;
  int disappear_frame = kNever;
  int halt_frame = kNever;

  Rect rect_at(int frame) const;
  bool visible(int frame) const { return frame >= appear_frame && frame <= disappear_frame; }
  friend bool operator==(const Track&, const Track&) = default;
};

struct ObjectSpec {
  Track track;
  Rgb8 fill{255, 255, 255};
  /// Nonzero amplitude adds a per-object texture that moves with the object.
  int texture_amplitude = 0;
  std::uint64_t texture_seed = 0;

  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

struct ShadowSpec {
  Track track;
  double multiplier = 0.6;  // in (0, 1)

  friend bool operator==(const ShadowSpec&, const ShadowSpec&) = default;
};

struct SceneSpec {
  std::string name = "scene";
  int width = 320;
  int height = 240;
  int frame_count = 1;
  Rgb8 background{128, 128, 128};
  /// Zero means a flat background; otherwise each channel is offset by a
  /// hashed value in [-amplitude, amplitude].
  int background_texture_amplitude = 0;
  std::uint64_t background_texture_seed = 0;
  /// Global multiplier, linear from start (frame 0) to end (last frame).
  double illumination_start = 1.0;
  double illumination_end = 1.0;
  std::vector<ObjectSpec> objects;
  std::vector<ShadowSpec> shadows;
  double noise_sigma = 0.0;
  std::uint64_t rng_seed = 0;

  double illumination(int frame) const;
  /// Throws std::invalid_argument, e.g. for an object leaving the frame.
  void validate() const;

  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

struct Sequence {
  std::vector<Frame> frames;
  std::vector<ClassMask> truth;
};

/// Composition per frame: background, illumination, shadows, objects, noise,
/// then rounding and clamping. Objects are never dimmed. Truth marks object
/// pixels Foreground and remaining shadow pixels Shadow.
Sequence generate(const SceneSpec& spec);

/// Un-composited background color at (x, y), before illumination.
Rgb8 background_at(const SceneSpec& spec, int x, int y);

/// uniform_mover, stationary_intruder, shadow_cast, illumination_ramp, noisy_static.
std::vector<SceneSpec> standard_suite();
/// Throws std::invalid_argument for unknown names.
SceneSpec suite_scene(const std::string& name);

}  // namespace bgsub
