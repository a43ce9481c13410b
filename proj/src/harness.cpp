#include "bgsub/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bgsub {

std::string_view algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::FrameDiff: return "framediff";
    case Algorithm::Statistical: return "statistical";
    case Algorithm::Mog: return "mog";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view id) {
  for (auto a : kAllAlgorithms) {
    if (algorithm_id(a) == id) return a;
  }
  throw std::invalid_argument("unknown algorithm id '" + std::string(id) + "'");
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& r : counts) {
    for (auto v : r) t += v;
  }
  return t;
}

std::uint64_t ConfusionMatrix::row(PixelClass c) const {
  std::uint64_t t = 0;
  for (auto v : counts[static_cast<std::size_t>(c)]) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::column(PixelClass c) const {
  std::uint64_t t = 0;
  for (const auto& r : counts) t += r[static_cast<std::size_t>(c)];
  return t;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

// A class absent from both truth and prediction has no scores. Otherwise an
// empty denominator scores 0, and F1 = 2TP / (2TP + FP + FN), which equals the
// harmonic mean of precision and recall whenever that is defined.
ClassScores scores_from(std::uint64_t tp, std::uint64_t predicted, std::uint64_t actual) {
  ClassScores s;
  if (predicted == 0 && actual == 0) return s;
  s.precision = ratio(tp, predicted).value_or(0.0);
  s.recall = ratio(tp, actual).value_or(0.0);
  s.f1 = static_cast<double>(2 * tp) / static_cast<double>(predicted + actual);
  return s;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SpeedMetrics summarize(std::vector<double> per_mask_ms) {
  if (per_mask_ms.size() > 1) per_mask_ms.erase(per_mask_ms.begin());
  SpeedMetrics s;
  s.frames_timed = per_mask_ms.size();
  double total = 0.0;
  for (double ms : per_mask_ms) {
    total += ms;
    s.per_frame_ms_max = std::max(s.per_frame_ms_max, ms);
  }
  s.per_frame_ms_mean = per_mask_ms.empty() ? 0.0 : total / static_cast<double>(per_mask_ms.size());
  // Clock resolution floor so a completed run never reports zero throughput.
  const double seconds = std::max(total, 1e-6) / 1000.0;
  s.fps = static_cast<double>(per_mask_ms.size()) / seconds;
  return s;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv: bad number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

AccuracyMetrics evaluate(std::span<const ClassMask> predicted, std::span<const ClassMask> truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("evaluate: predicted and truth sequence lengths differ");
  }
  AccuracyMetrics m;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    if (!predicted[k].same_shape(truth[k])) {
      throw std::invalid_argument("evaluate: mask dimensions differ at index " + std::to_string(k));
    }
    const auto p = predicted[k].pixels();
    const auto t = truth[k].pixels();
    for (std::size_t i = 0; i < p.size(); ++i) m.confusion.add(t[i], p[i]);
  }
  for (std::size_t c = 0; c < kPixelClassCount; ++c) {
    const auto cls = static_cast<PixelClass>(c);
    m.per_class[c] =
        scores_from(m.confusion.diagonal(cls), m.confusion.column(cls), m.confusion.row(cls));
  }
  const auto fg = PixelClass::Foreground;
  m.binary_foreground =
      scores_from(m.confusion.diagonal(fg), m.confusion.column(fg), m.confusion.row(fg));
  return m;
}

std::uint64_t model_memory_bytes(Algorithm a, int width, int height, const AlgorithmConfig& cfg) {
  const auto pixels = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  constexpr std::uint64_t real = sizeof(double);
  switch (a) {
    case Algorithm::FrameDiff: return pixels;
    case Algorithm::Statistical: return pixels * 3 * real;
    case Algorithm::Mog:
      return pixels * static_cast<std::uint64_t>(cfg.mog.components) * 5 * real;
  }
  throw std::invalid_argument("unknown algorithm");
}

std::size_t first_mask_frame(Algorithm a, const AlgorithmConfig& cfg) {
  return a == Algorithm::Statistical ? static_cast<std::size_t>(cfg.train_frames) : 1;
}

AlgorithmRun run_algorithm(Algorithm a, std::span<const Frame> frames, const AlgorithmConfig& cfg) {
  if (frames.size() < 2) throw std::invalid_argument("benchmark: need at least 2 frames");
  AlgorithmRun run;
  run.algorithm = a;
  run.first_frame = first_mask_frame(a, cfg);
  std::vector<double> times;

  switch (a) {
    case Algorithm::FrameDiff: {
      GrayFrame prev = to_grayscale(frames.front());
      for (std::size_t k = 1; k < frames.size(); ++k) {
        const auto start = Clock::now();
        GrayFrame cur = to_grayscale(frames[k]);
        run.masks.push_back(frame_difference(prev, cur, cfg.frame_diff));
        times.push_back(elapsed_ms(start));
        prev = std::move(cur);
      }
      break;
    }
    case Algorithm::Statistical: {
      cfg.statistical.validate();
      if (cfg.train_frames < 1 || static_cast<std::size_t>(cfg.train_frames) >= frames.size()) {
        throw std::invalid_argument("statistical: train frames must be in [1, frame count)");
      }
      const auto split = static_cast<std::size_t>(cfg.train_frames);
      const StatBackgroundModel model = train(frames.first(split));
      for (std::size_t k = split; k < frames.size(); ++k) {
        const auto start = Clock::now();
        run.masks.push_back(classify_frame(model, frames[k], cfg.statistical));
        times.push_back(elapsed_ms(start));
      }
      break;
    }
    case Algorithm::Mog: {
      MogModel model = init_model(frames.front(), cfg.mog);
      for (std::size_t k = 1; k < frames.size(); ++k) {
        const auto start = Clock::now();
        run.masks.push_back(process_frame(model, frames[k]));
        times.push_back(elapsed_ms(start));
      }
      break;
    }
  }

  run.speed = summarize(std::move(times));
  run.speed.model_memory_bytes =
      model_memory_bytes(a, frames.front().width(), frames.front().height(), cfg);
  return run;
}

SpeedMetrics benchmark(Algorithm a, std::span<const Frame> frames, const AlgorithmConfig& cfg) {
  return run_algorithm(a, frames, cfg).speed;
}

ReportRow score_run(const AlgorithmRun& run, std::span<const ClassMask> truth) {
  if (run.first_frame + run.masks.size() != truth.size()) {
    throw std::invalid_argument("score: ground truth length does not cover the masks");
  }
  ReportRow row;
  row.algorithm = run.algorithm;
  row.first_frame = run.first_frame;
  row.frames_evaluated = run.masks.size();
  row.accuracy = evaluate(run.masks, truth.subspan(run.first_frame));
  row.speed = run.speed;
  return row;
}

Report compare(const std::string& scene, std::span<const Frame> frames,
               std::span<const ClassMask> truth, const AlgorithmConfig& cfg) {
  if (frames.size() != truth.size()) {
    throw std::invalid_argument("compare: frame and ground truth counts differ");
  }
  if (frames.empty()) throw std::invalid_argument("compare: empty sequence");
  Report report;
  report.scene = scene;
  report.width = frames.front().width();
  report.height = frames.front().height();
  for (auto a : kAllAlgorithms) report.rows.push_back(score_run(run_algorithm(a, frames, cfg), truth));
  return report;
}

Report compare(const SceneSpec& spec, const AlgorithmConfig& cfg) {
  const Sequence seq = generate(spec);
  return compare(spec.name, seq.frames, seq.truth, cfg);
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& row : report.rows) {
    auto line = [&](std::string_view cls, const ClassScores& s) {
      out << algorithm_id(row.algorithm) << ',' << cls << ',' << format_optional(s.precision) << ','
          << format_optional(s.recall) << ',' << format_optional(s.f1) << ','
          << format_number(row.speed.fps) << ',' << format_number(row.speed.per_frame_ms_mean)
          << ',' << format_number(row.speed.per_frame_ms_max) << ','
          << row.speed.model_memory_bytes << '\n';
    };
    for (std::size_t c = 0; c < kPixelClassCount; ++c) {
      line(to_string(static_cast<PixelClass>(c)), row.accuracy.per_class[c]);
    }
    line("binary_foreground", row.accuracy.binary_foreground);
  }
  return out.str();
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  out << "scene: " << report.scene << " (" << report.width << "x" << report.height << ")\n";
  out << "alignment: framediff and mog masks start at frame 1, statistical masks start after "
         "its training frames; each algorithm is scored only on frames it produced masks for\n\n";
  auto cell = [](const std::optional<double>& v) {
    std::ostringstream s;
    if (v) {
      s << std::fixed << std::setprecision(4) << *v;
    } else {
      s << "-";
    }
    return s.str();
  };
  out << std::left << std::setw(12) << "algo" << std::right << std::setw(8) << "first"
      << std::setw(8) << "frames" << std::setw(10) << "fg_prec" << std::setw(10) << "fg_rec"
      << std::setw(10) << "fg_f1" << std::setw(12) << "fps" << std::setw(10) << "ms_mean"
      << std::setw(10) << "ms_max" << std::setw(14) << "memory_bytes" << '\n';
  for (const auto& row : report.rows) {
    const auto& fg = row.accuracy.binary_foreground;
    out << std::left << std::setw(12) << algorithm_id(row.algorithm) << std::right
        << std::setw(8) << row.first_frame << std::setw(8) << row.frames_evaluated
        << std::setw(10) << cell(fg.precision) << std::setw(10) << cell(fg.recall)
        << std::setw(10) << cell(fg.f1) << std::setw(12) << std::fixed << std::setprecision(1)
        << row.speed.fps << std::setw(10) << std::setprecision(3) << row.speed.per_frame_ms_mean
        << std::setw(10) << row.speed.per_frame_ms_max << std::setw(14)
        << row.speed.model_memory_bytes << '\n';
  }
  return out.str();
}

std::vector<CsvRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<CsvRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 9) throw std::invalid_argument("csv: expected 9 columns: " + line);
    CsvRecord r;
    r.algo = cells[0];
    r.cls = cells[1];
    r.precision = parse_optional(cells[2]);
    r.recall = parse_optional(cells[3]);
    r.f1 = parse_optional(cells[4]);
    r.fps = parse_double(cells[5]);
    r.per_frame_ms_mean = parse_double(cells[6]);
    r.per_frame_ms_max = parse_double(cells[7]);
    std::uint64_t mem = 0;
    const auto& m = cells[8];
    const auto res = std::from_chars(m.data(), m.data() + m.size(), mem);
    if (res.ec != std::errc{} || res.ptr != m.data() + m.size()) {
      throw std::invalid_argument("csv: bad memory value '" + m + "'");
    }
    r.model_memory_bytes = mem;
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace bgsub
