#include "bgsub/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bgsub {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stateless per-position texture offset in [-amplitude, amplitude].
int texture_offset(std::uint64_t seed, int x, int y, int channel, int amplitude) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)) << 20));
  h = splitmix64(h ^ static_cast<std::uint64_t>(channel));
  const auto span = static_cast<std::uint64_t>(2 * amplitude + 1);
  return static_cast<int>(h % span) - amplitude;
}

Rgb8 textured(Rgb8 base, std::uint64_t seed, int x, int y, int amplitude) {
  if (amplitude <= 0) return base;
  auto ch = [&](std::uint8_t v, int c) {
    return clamp_to_u8(static_cast<double>(v) + texture_offset(seed, x, y, c, amplitude));
  };
  return {ch(base.r, 0), ch(base.g, 1), ch(base.b, 2)};
}

// Standard normal deviates by the Box-Muller transform over 53-bit uniforms
// drawn from std::mt19937_64, whose output sequence is fixed by the standard.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void check_track(const Track& t, const SceneSpec& spec, const std::string& what) {
  if (t.rect.w < 1 || t.rect.h < 1) throw std::invalid_argument(what + ": empty rectangle");
  if (t.appear_frame > t.disappear_frame) {
    throw std::invalid_argument(what + ": appear frame after disappear frame");
  }
  const int first = std::max(0, t.appear_frame);
  const int last = std::min(spec.frame_count - 1, t.disappear_frame);
  for (int k = first; k <= last; ++k) {
    const Rect r = t.rect_at(k);
    if (r.x < 0 || r.y < 0 || r.x + r.w > spec.width || r.y + r.h > spec.height) {
      throw std::invalid_argument(what + ": leaves the frame at frame " + std::to_string(k));
    }
  }
}

}  // namespace

Rect Track::rect_at(int frame) const {
  const int steps = std::min(frame, halt_frame);
  return {rect.x + dx * steps, rect.y + dy * steps, rect.w, rect.h};
}

double SceneSpec::illumination(int frame) const {
  if (frame_count <= 1) return illumination_start;
  const double t = static_cast<double>(frame) / static_cast<double>(frame_count - 1);
  return illumination_start + (illumination_end - illumination_start) * t;
}

void SceneSpec::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("scene dimensions must be positive");
  if (frame_count < 1) throw std::invalid_argument("frame_count must be >= 1");
  if (background_texture_amplitude < 0 || background_texture_amplitude > 255) {
    throw std::invalid_argument("background texture amplitude must be in [0, 255]");
  }
  if (!(illumination_start > 0.0) || !(illumination_end > 0.0)) {
    throw std::invalid_argument("illumination must be > 0");
  }
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be >= 0");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    if (o.texture_amplitude < 0 || o.texture_amplitude > 255) {
      throw std::invalid_argument("object texture amplitude must be in [0, 255]");
    }
    check_track(o.track, *this, "object " + std::to_string(i));
  }
  for (std::size_t i = 0; i < shadows.size(); ++i) {
    const auto& s = shadows[i];
    if (!(s.multiplier > 0.0 && s.multiplier < 1.0)) {
      throw std::invalid_argument("shadow multiplier must be in (0, 1)");
    }
    check_track(s.track, *this, "shadow " + std::to_string(i));
  }
}

Rgb8 background_at(const SceneSpec& spec, int x, int y) {
  return textured(spec.background, spec.background_texture_seed, x, y,
                  spec.background_texture_amplitude);
}

Sequence generate(const SceneSpec& spec) {
  spec.validate();
  const int w = spec.width;
  const int h = spec.height;
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);

  std::vector<Vec3> base(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      base[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] =
          to_vec3(background_at(spec, x, y));
    }
  }

  Sequence seq;
  seq.frames.reserve(static_cast<std::size_t>(spec.frame_count));
  seq.truth.reserve(static_cast<std::size_t>(spec.frame_count));
  std::vector<Vec3> canvas(n);

  for (int k = 0; k < spec.frame_count; ++k) {
    const double illum = spec.illumination(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) canvas[i][c] = base[i][c] * illum;
    }
    ClassMask truth(w, h);

    for (const auto& s : spec.shadows) {
      if (!s.track.visible(k)) continue;
      const Rect r = s.track.rect_at(k);
      for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
          const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                         static_cast<std::size_t>(x);
          for (int c = 0; c < 3; ++c) canvas[i][c] *= s.multiplier;
          truth[i] = PixelClass::Shadow;
        }
      }
    }

    for (const auto& o : spec.objects) {
      if (!o.track.visible(k)) continue;
      const Rect r = o.track.rect_at(k);
      for (int y = r.y; y < r.y + r.h; ++y) {
        for (int x = r.x; x < r.x + r.w; ++x) {
          const auto i = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                         static_cast<std::size_t>(x);
          canvas[i] = to_vec3(textured(o.fill, o.texture_seed, x - r.x, y - r.y,
                                       o.texture_amplitude));
          truth[i] = PixelClass::Foreground;
        }
      }
    }

    if (spec.noise_sigma > 0.0) {
      NormalSource noise(splitmix64(spec.rng_seed ^ splitmix64(static_cast<std::uint64_t>(k))));
      for (auto& px : canvas) {
        for (double& c : px) c += spec.noise_sigma * noise.next();
      }
    }

    Frame frame(w, h);
    for (std::size_t i = 0; i < n; ++i) {
      frame[i] = {clamp_to_u8(canvas[i][0]), clamp_to_u8(canvas[i][1]), clamp_to_u8(canvas[i][2])};
    }
    seq.frames.push_back(std::move(frame));
    seq.truth.push_back(std::move(truth));
  }
  return seq;
}

std::vector<SceneSpec> standard_suite() {
  std::vector<SceneSpec> suite;

  {
    // Uniform block sliding right; exposes the frame-difference interior hole.
    SceneSpec s;
    s.name = "uniform_mover";
    s.frame_count = 56;
    s.background = {90, 90, 90};
    s.rng_seed = 101;
    ObjectSpec o;
    o.track.rect = {0, 100, 40, 40};
    o.track.dx = 5;
    o.fill = {220, 220, 40};
    s.objects.push_back(o);
    suite.push_back(s);
  }
  {
    // Enters at frame 10, slides right and halts at frame 50 for the rest.
    SceneSpec s;
    s.name = "stationary_intruder";
    s.frame_count = 100;
    s.background = {90, 90, 90};
    s.rng_seed = 202;
    ObjectSpec o;
    o.track.rect = {-30, 100, 40, 40};
    o.track.dx = 5;
    o.track.appear_frame = 10;
    o.track.halt_frame = 50;
    o.fill = {230, 230, 40};
    s.objects.push_back(o);
    suite.push_back(s);
  }
  {
    // Walker with a shadow strip at its feet; frames 0-9 are an empty scene.
    SceneSpec s;
    s.name = "shadow_cast";
    s.frame_count = 60;
    s.background = {150, 130, 110};
    s.background_texture_amplitude = 30;
    s.background_texture_seed = 11;
    s.rng_seed = 303;
    ObjectSpec o;
    o.track.rect = {-10, 80, 30, 60};
    o.track.dx = 3;
    o.track.appear_frame = 10;
    o.fill = {40, 60, 200};
    o.texture_amplitude = 15;
    o.texture_seed = 5;
    s.objects.push_back(o);
    ShadowSpec sh;
    sh.track.rect = {-10, 140, 50, 20};
    sh.track.dx = 3;
    sh.track.appear_frame = 10;
    sh.multiplier = 0.6;
    s.shadows.push_back(sh);
    suite.push_back(s);
  }
  {
    // Slow global brightening with a slow mover.
    SceneSpec s;
    s.name = "illumination_ramp";
    s.frame_count = 100;
    s.background = {110, 110, 110};
    s.background_texture_amplitude = 25;
    s.background_texture_seed = 13;
    s.illumination_start = 1.0;
    s.illumination_end = 1.25;
    s.rng_seed = 404;
    ObjectSpec o;
    o.track.rect = {30, 120, 20, 30};
    o.track.dx = 1;
    o.track.appear_frame = 10;
    o.fill = {200, 40, 40};
    s.objects.push_back(o);
    suite.push_back(s);
  }
  {
    SceneSpec s;
    s.name = "noisy_static";
    s.frame_count = 60;
    s.background = {120, 100, 80};
    s.background_texture_amplitude = 30;
    s.background_texture_seed = 17;
    s.noise_sigma = 4.0;
    s.rng_seed = 505;
    suite.push_back(s);
  }
  return suite;
}

SceneSpec suite_scene(const std::string& name) {
  for (auto& s : standard_suite()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown suite scene '" + name + "'");
}

}  // namespace bgsub
