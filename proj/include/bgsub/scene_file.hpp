#pragma once

#include <filesystem>
#include <string>

#include "bgsub/synth.hpp"

namespace bgsub {

// Flat text scene description, one `key = value` per line, '#' comments.
//
//   name = stationary_intruder
//   width = 320
//   height = 240
//   frame_count = 100
//   background = 90 90 90
//   background_texture_amplitude = 20
//   background_texture_seed = 7
//   illumination_start = 1.0
//   illumination_end = 1.0
//   noise_sigma = 0
//   rng_seed = 202
//   object.0.rect = -30 100 40 40        # x y w h at frame 0
//   object.0.velocity = 5 0              # dx dy per frame
//   object.0.fill = 230 230 40
//   object.0.texture_amplitude = 0
//   object.0.texture_seed = 0
//   object.0.appear = 10
//   object.0.disappear = 99              # optional, default: never
//   object.0.halt = 50                   # optional, default: never
//   shadow.0.rect / velocity / appear / disappear / halt   as for objects
//   shadow.0.multiplier = 0.6
//
// Indices must be contiguous from 0. Unknown keys are errors.

SceneSpec parse_scene(const std::string& text);
std::string format_scene(const SceneSpec& spec);

SceneSpec load_scene(const std::filesystem::path& path);
void save_scene(const SceneSpec& spec, const std::filesystem::path& path);

}  // namespace bgsub
