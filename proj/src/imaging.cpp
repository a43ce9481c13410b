#include "bgsub/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

namespace bgsub {

namespace fs = std::filesystem;

const char* to_string(PixelClass c) {
  switch (c) {
    case PixelClass::Background: return "background";
    case PixelClass::Shadow: return "shadow";
    case PixelClass::Highlight: return "highlight";
    case PixelClass::Foreground: return "foreground";
  }
  return "unknown";
}

std::uint8_t clamp_to_u8(double v) {
  const double r = std::round(v);
  if (!(r > 0.0)) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

std::uint8_t luminance(Rgb8 p) {
  // Exact round(0.299 R + 0.587 G + 0.114 B) in integer arithmetic; the sum
  // is non-negative so +500 then truncation rounds halves away from zero.
  const unsigned scaled = 299u * p.r + 587u * p.g + 114u * p.b;
  return static_cast<std::uint8_t>((scaled + 500u) / 1000u);
}

GrayFrame to_grayscale(const Frame& frame) {
  GrayFrame out(frame.width(), frame.height());
  const auto src = frame.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = luminance(src[i]);
  return out;
}

std::vector<GrayFrame> to_grayscale(std::span<const Frame> frames) {
  std::vector<GrayFrame> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(to_grayscale(f));
  return out;
}

std::uint8_t encode_class(PixelClass c) {
  return static_cast<std::uint8_t>(static_cast<unsigned>(c) * 85u);
}

PixelClass decode_class(std::uint8_t byte) {
  switch (byte) {
    case 0: return PixelClass::Background;
    case 85: return PixelClass::Shadow;
    case 170: return PixelClass::Highlight;
    case 255: return PixelClass::Foreground;
    default:
      throw ImageError("mask byte " + std::to_string(byte) + " is not a class code");
  }
}

namespace {

struct NetpbmHeader {
  int width = 0;
  int height = 0;
};

// Reads one whitespace-delimited token, skipping '#' comments.
std::string read_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_header_int(std::istream& in, const fs::path& path, const char* what) {
  const std::string tok = read_token(in);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    throw ImageError(path.string() + ": malformed header (" + what + ")");
  }
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw ImageError(path.string() + ": malformed header (" + what + ")");
  }
}

// Leaves the stream positioned at the first raster byte.
NetpbmHeader read_header(std::istream& in, const fs::path& path, const char* magic) {
  if (read_token(in) != magic) {
    throw ImageError(path.string() + ": malformed header (expected " + magic + ")");
  }
  NetpbmHeader h;
  h.width = parse_header_int(in, path, "width");
  h.height = parse_header_int(in, path, "height");
  const int maxval = parse_header_int(in, path, "maxval");
  if (h.width < 1 || h.height < 1) {
    throw ImageError(path.string() + ": malformed header (dimensions)");
  }
  if (maxval != 255) {
    throw ImageError(path.string() + ": unsupported maxval " + std::to_string(maxval));
  }
  return h;
}

std::vector<std::uint8_t> read_raster(std::istream& in, const fs::path& path,
                                      std::size_t n) {
  std::vector<std::uint8_t> bytes(n);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw ImageError(path.string() + ": truncated pixel data");
  }
  return bytes;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError(path.string() + ": cannot open file");
  return in;
}

void write_file(const fs::path& path, const std::string& header,
                std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageError(path.string() + ": cannot open for writing");
  out << header;
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageError(path.string() + ": write failed");
}

std::string header_for(const char* magic, int w, int h) {
  return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

}  // namespace

Frame load_ppm(const fs::path& path) {
  auto in = open_in(path);
  const auto h = read_header(in, path, "P6");
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  const auto bytes = read_raster(in, path, n * 3);
  std::vector<Rgb8> px(n);
  for (std::size_t i = 0; i < n; ++i) px[i] = {bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]};
  return Frame(h.width, h.height, std::move(px));
}

void save_ppm(const Frame& frame, const fs::path& path) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(frame.size() * 3);
  for (const auto& p : frame.pixels()) {
    bytes.push_back(p.r);
    bytes.push_back(p.g);
    bytes.push_back(p.b);
  }
  write_file(path, header_for("P6", frame.width(), frame.height()), bytes);
}

GrayFrame load_pgm(const fs::path& path) {
  auto in = open_in(path);
  const auto h = read_header(in, path, "P5");
  const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  return GrayFrame(h.width, h.height, read_raster(in, path, n));
}

void save_pgm(const GrayFrame& gray, const fs::path& path) {
  write_file(path, header_for("P5", gray.width(), gray.height()), gray.pixels());
}

void save_pgm(const ClassMask& mask, const fs::path& path) {
  std::vector<std::uint8_t> bytes(mask.size());
  std::transform(mask.pixels().begin(), mask.pixels().end(), bytes.begin(), encode_class);
  write_file(path, header_for("P5", mask.width(), mask.height()), bytes);
}

ClassMask load_mask_pgm(const fs::path& path) {
  const GrayFrame g = load_pgm(path);
  std::vector<PixelClass> labels(g.size());
  try {
    std::transform(g.pixels().begin(), g.pixels().end(), labels.begin(), decode_class);
  } catch (const ImageError& e) {
    throw ImageError(path.string() + ": " + e.what());
  }
  return ClassMask(g.width(), g.height(), std::move(labels));
}

std::string sequence_file_name(const std::string& prefix, std::size_t index,
                               const std::string& extension) {
  char digits[32];
  std::snprintf(digits, sizeof digits, "%06zu", index + 1);
  return prefix + "_" + digits + "." + extension;
}

std::vector<fs::path> list_sequence(const fs::path& dir, const std::string& extension) {
  if (!fs::is_directory(dir)) throw ImageError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == "." + extension) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return files;
}

std::vector<Frame> load_frame_sequence(const fs::path& dir) {
  std::vector<Frame> frames;
  for (const auto& p : list_sequence(dir, "ppm")) frames.push_back(load_ppm(p));
  return frames;
}

std::vector<ClassMask> load_mask_sequence(const fs::path& dir) {
  std::vector<ClassMask> masks;
  for (const auto& p : list_sequence(dir, "pgm")) masks.push_back(load_mask_pgm(p));
  return masks;
}

}  // namespace bgsub
