#include "bgsub/scene_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bgsub {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw std::invalid_argument("scene key '" + key + "': " + why);
}

template <typename T>
std::vector<T> numbers(const std::string& key, const std::string& value, std::size_t count) {
  std::istringstream in(value);
  std::vector<T> out;
  T v;
  while (in >> v) out.push_back(v);
  if (!in.eof() || out.size() != count) {
    fail(key, "expected " + std::to_string(count) + " numeric value(s), got '" + value + "'");
  }
  return out;
}

template <typename T>
T number(const std::string& key, const std::string& value) {
  return numbers<T>(key, value, 1).front();
}

Rgb8 color(const std::string& key, const std::string& value) {
  const auto v = numbers<int>(key, value, 3);
  for (int c : v) {
    if (c < 0 || c > 255) fail(key, "color channel outside [0,255]");
  }
  return {static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
          static_cast<std::uint8_t>(v[2])};
}

bool track_key(Track& t, const std::string& field, const std::string& key,
               const std::string& value) {
  if (field == "rect") {
    const auto v = numbers<int>(key, value, 4);
    t.rect = {v[0], v[1], v[2], v[3]};
  } else if (field == "velocity") {
    const auto v = numbers<int>(key, value, 2);
    t.dx = v[0];
    t.dy = v[1];
  } else if (field == "appear") {
    t.appear_frame = number<int>(key, value);
  } else if (field == "disappear") {
    t.disappear_frame = number<int>(key, value);
  } else if (field == "halt") {
    t.halt_frame = number<int>(key, value);
  } else {
    return false;
  }
  return true;
}

void write_track(std::ostream& out, const std::string& prefix, const Track& t) {
  out << prefix << "rect = " << t.rect.x << ' ' << t.rect.y << ' ' << t.rect.w << ' '
      << t.rect.h << '\n';
  out << prefix << "velocity = " << t.dx << ' ' << t.dy << '\n';
  out << prefix << "appear = " << t.appear_frame << '\n';
  if (t.disappear_frame != kNever) out << prefix << "disappear = " << t.disappear_frame << '\n';
  if (t.halt_frame != kNever) out << prefix << "halt = " << t.halt_frame << '\n';
}

std::string rgb(Rgb8 c) {
  return std::to_string(c.r) + ' ' + std::to_string(c.g) + ' ' + std::to_string(c.b);
}

}  // namespace

SceneSpec parse_scene(const std::string& text) {
  SceneSpec spec;
  std::map<int, ObjectSpec> objects;
  std::map<int, ShadowSpec> shadows;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scene line " + std::to_string(line_no) + ": missing '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "name") {
      spec.name = value;
    } else if (key == "width") {
      spec.width = number<int>(key, value);
    } else if (key == "height") {
      spec.height = number<int>(key, value);
    } else if (key == "frame_count") {
      spec.frame_count = number<int>(key, value);
    } else if (key == "background") {
      spec.background = color(key, value);
    } else if (key == "background_texture_amplitude") {
      spec.background_texture_amplitude = number<int>(key, value);
    } else if (key == "background_texture_seed") {
      spec.background_texture_seed = number<std::uint64_t>(key, value);
    } else if (key == "illumination_start") {
      spec.illumination_start = number<double>(key, value);
    } else if (key == "illumination_end") {
      spec.illumination_end = number<double>(key, value);
    } else if (key == "noise_sigma") {
      spec.noise_sigma = number<double>(key, value);
    } else if (key == "rng_seed") {
      spec.rng_seed = number<std::uint64_t>(key, value);
    } else if (key.rfind("object.", 0) == 0 || key.rfind("shadow.", 0) == 0) {
      const bool is_object = key[0] == 'o';
      const auto first = key.find('.');
      const auto second = key.find('.', first + 1);
      if (second == std::string::npos) fail(key, "expected <kind>.<index>.<field>");
      const int idx = number<int>(key, key.substr(first + 1, second - first - 1));
      if (idx < 0) fail(key, "negative index");
      const std::string field = key.substr(second + 1);
      if (is_object) {
        auto& o = objects[idx];
        if (track_key(o.track, field, key, value)) continue;
        if (field == "fill") {
          o.fill = color(key, value);
        } else if (field == "texture_amplitude") {
          o.texture_amplitude = number<int>(key, value);
        } else if (field == "texture_seed") {
          o.texture_seed = number<std::uint64_t>(key, value);
        } else {
          fail(key, "unknown object field");
        }
      } else {
        auto& s = shadows[idx];
        if (track_key(s.track, field, key, value)) continue;
        if (field == "multiplier") {
          s.multiplier = number<double>(key, value);
        } else {
          fail(key, "unknown shadow field");
        }
      }
    } else {
      fail(key, "unknown key");
    }
  }

  auto collect = [](auto& indexed, auto& out, const char* kind) {
    int expected = 0;
    for (auto& [idx, item] : indexed) {
      if (idx != expected++) {
        throw std::invalid_argument(std::string(kind) + " indices must be contiguous from 0");
      }
      out.push_back(item);
    }
  };
  collect(objects, spec.objects, "object");
  collect(shadows, spec.shadows, "shadow");
  spec.validate();
  return spec;
}

namespace {

// Shortest text that parses back to the same double.
std::string real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_scene(const SceneSpec& spec) {
  std::ostringstream out;
  out << "name = " << spec.name << '\n';
  out << "width = " << spec.width << '\n';
  out << "height = " << spec.height << '\n';
  out << "frame_count = " << spec.frame_count << '\n';
  out << "background = " << rgb(spec.background) << '\n';
  out << "background_texture_amplitude = " << spec.background_texture_amplitude << '\n';
  out << "background_texture_seed = " << spec.background_texture_seed << '\n';
  out << "illumination_start = " << real(spec.illumination_start) << '\n';
  out << "illumination_end = " << real(spec.illumination_end) << '\n';
  out << "noise_sigma = " << real(spec.noise_sigma) << '\n';
  out << "rng_seed = " << spec.rng_seed << '\n';
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    const auto& o = spec.objects[i];
    const std::string p = "object." + std::to_string(i) + ".";
    write_track(out, p, o.track);
    out << p << "fill = " << rgb(o.fill) << '\n';
    out << p << "texture_amplitude = " << o.texture_amplitude << '\n';
    out << p << "texture_seed = " << o.texture_seed << '\n';
  }
  for (std::size_t i = 0; i < spec.shadows.size(); ++i) {
    const auto& s = spec.shadows[i];
    const std::string p = "shadow." + std::to_string(i) + ".";
    write_track(out, p, s.track);
    out << p << "multiplier = " << real(s.multiplier) << '\n';
  }
  return out.str();
}

SceneSpec load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path.string() + ": cannot open scene file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene(text.str());
}

void save_scene(const SceneSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::invalid_argument(path.string() + ": cannot open for writing");
  out << format_scene(spec);
}

}  // namespace bgsub
