#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bgsub/frame_diff.hpp"
#include "bgsub/imaging.hpp"
#include "bgsub/mog.hpp"
#include "bgsub/statistical_shadow.hpp"
#include "bgsub/synth.hpp"

namespace bgsub {

enum class Algorithm { FrameDiff, Statistical, Mog };

inline constexpr std::array<Algorithm, 3> kAllAlgorithms{Algorithm::FrameDiff,
                                                         Algorithm::Statistical, Algorithm::Mog};

std::string_view algorithm_id(Algorithm a);
/// Accepts "framediff", "statistical", "mog"; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view id);

/// counts[truth][predicted], indexed by PixelClass.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kPixelClassCount>, kPixelClassCount> counts{};

  void add(PixelClass truth, PixelClass predicted) {
    ++counts[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted)];
  }
  std::uint64_t total() const;
  std::uint64_t row(PixelClass c) const;
  std::uint64_t column(PixelClass c) const;
  std::uint64_t diagonal(PixelClass c) const {
    return counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
  }
};

/// Empty for a class that appears in neither the truth nor the prediction.
struct ClassScores {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

struct AccuracyMetrics {
  ConfusionMatrix confusion;
  std::array<ClassScores, kPixelClassCount> per_class;
  /// Foreground scores after folding Shadow and Highlight into Background.
  ClassScores binary_foreground;

  const ClassScores& scores(PixelClass c) const { return per_class[static_cast<std::size_t>(c)]; }
};

AccuracyMetrics evaluate(std::span<const ClassMask> predicted, std::span<const ClassMask> truth);

struct SpeedMetrics {
  double fps = 0.0;
  double per_frame_ms_mean = 0.0;
  double per_frame_ms_max = 0.0;
  std::size_t frames_timed = 0;
  std::uint64_t model_memory_bytes = 0;
};

struct AlgorithmConfig {
  FrameDiffParams frame_diff;
  StatParams statistical;
  int train_frames = 10;
  MogParams mog;
};

/// Analytic model size with 8-byte reals: framediff keeps one gray frame,
/// statistical keeps 3 reals per pixel, mog keeps K * (weight + 3 mean + variance).
std::uint64_t model_memory_bytes(Algorithm a, int width, int height, const AlgorithmConfig& cfg);

struct AlgorithmRun {
  Algorithm algorithm = Algorithm::FrameDiff;
  std::vector<ClassMask> masks;
  /// Sequence index of the frame that masks[0] belongs to.
  std::size_t first_frame = 0;
  SpeedMetrics speed;
};

/// Index of the first frame an algorithm emits a mask for: 1 for framediff
/// and mog (frame 0 seeds the model), train_frames for statistical.
std::size_t first_mask_frame(Algorithm a, const AlgorithmConfig& cfg);

/// Produces masks and times them. Only mask production is timed; the first
/// timed mask is a warm-up and is dropped when more than one mask exists.
AlgorithmRun run_algorithm(Algorithm a, std::span<const Frame> frames, const AlgorithmConfig& cfg);

SpeedMetrics benchmark(Algorithm a, std::span<const Frame> frames, const AlgorithmConfig& cfg);

struct ReportRow {
  Algorithm algorithm = Algorithm::FrameDiff;
  std::size_t first_frame = 0;
  std::size_t frames_evaluated = 0;
  AccuracyMetrics accuracy;
  SpeedMetrics speed;
};

struct Report {
  std::string scene;
  int width = 0;
  int height = 0;
  std::vector<ReportRow> rows;
};

/// Evaluates one run against full-length ground truth, aligning by first_frame.
ReportRow score_run(const AlgorithmRun& run, std::span<const ClassMask> truth);

Report compare(const std::string& scene, std::span<const Frame> frames,
               std::span<const ClassMask> truth, const AlgorithmConfig& cfg);
Report compare(const SceneSpec& spec, const AlgorithmConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "algo,class,precision,recall,f1,fps,per_frame_ms_mean,per_frame_ms_max,model_memory_bytes";

/// Five lines per algorithm: the four classes, then "binary_foreground".
std::string to_csv(const Report& report);
std::string to_text(const Report& report);

struct CsvRecord {
  std::string algo;
  std::string cls;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  double fps = 0.0;
  double per_frame_ms_mean = 0.0;
  double per_frame_ms_max = 0.0;
  std::uint64_t model_memory_bytes = 0;
};

std::vector<CsvRecord> parse_csv(const std::string& text);

}  // namespace bgsub
