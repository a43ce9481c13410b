// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bgsub/frame_diff.hpp"
#include "bgsub/harness.hpp"
#include "bgsub/imaging.hpp"
#include "bgsub/mog.hpp"
#include "bgsub/statistical_shadow.hpp"
#include "bgsub/synth.hpp"
#include "mog_oracle.hpp"

using namespace bgsub;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t count_class(const ClassMask& m, PixelClass c) {
  return static_cast<std::size_t>(std::count(m.pixels().begin(), m.pixels().end(), c));
}

Outcome interior_hole() {
  const SceneSpec spec = suite_scene("uniform_mover");
  const Sequence seq = generate(spec);
  const auto gray = to_grayscale(seq.frames);
  const auto masks = run_frame_diff(gray, FrameDiffParams{25});

  const Rect r0 = spec.objects.at(0).track.rect;
  const int dx = spec.objects.at(0).track.dx;
  std::size_t mismatched_frames = 0;
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const int k = static_cast<int>(m) + 1;
    const int prev_x = r0.x + dx * (k - 1);
    const int cur_x = r0.x + dx * k;
    bool ok = true;
    for (int y = 0; y < spec.height && ok; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const bool rows = y >= r0.y && y < r0.y + r0.h;
        const bool trailing = x >= prev_x && x < cur_x;
        const bool leading = x >= prev_x + r0.w && x < cur_x + r0.w;
        const bool want_fg = rows && (trailing || leading);
        if ((masks[m].at(x, y) == PixelClass::Foreground) != want_fg) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) ++mismatched_frames;
  }

  // Timing on a 100-frame QVGA sequence, grayscale conversion included.
  const Sequence long_seq = generate(suite_scene("stationary_intruder"));
  const auto t0 = Clock::now();
  const auto long_gray = to_grayscale(long_seq.frames);
  const auto long_masks = run_frame_diff(long_gray, FrameDiffParams{25});
  const double secs = seconds_since(t0);

  std::ostringstream d;
  d << masks.size() << " masks, " << mismatched_frames << " mismatched; " << long_seq.frames.size()
    << " QVGA frames in " << secs << " s";
  return {mismatched_frames == 0 && !masks.empty() && long_masks.size() == 99 && secs < 1.0,
          d.str()};
}

Outcome stationarity_absorption() {
  const SceneSpec spec = suite_scene("stationary_intruder");
  const Sequence seq = generate(spec);
  const auto masks = run_frame_diff(to_grayscale(seq.frames), FrameDiffParams{25});
  std::size_t fg = 0;
  std::size_t checked = 0;
  for (std::size_t k = 52; k < seq.frames.size(); ++k) {
    fg += count_class(masks[k - 1], PixelClass::Foreground);
    ++checked;
  }
  // The object must actually be moving before the halt for this to mean anything.
  const std::size_t moving_fg = count_class(masks[49 - 1], PixelClass::Foreground);
  std::ostringstream d;
  d << "halt at frame " << spec.objects.at(0).track.halt_frame << ", " << checked
    << " masks from frame 52 hold " << fg << " foreground pixels (frame 49 holds " << moving_fg
    << ")";
  return {fg == 0 && checked > 0 && moving_fg > 0, d.str()};
}

Outcome shadow_classification() {
  const SceneSpec spec = suite_scene("shadow_cast");
  const Sequence seq = generate(spec);
  const int train_frames = 10;
  const StatBackgroundModel model =
      train(std::span<const Frame>(seq.frames).first(static_cast<std::size_t>(train_frames)));
  const auto masks = run_statistical(
      model, std::span<const Frame>(seq.frames).subspan(static_cast<std::size_t>(train_frames)),
      StatParams{});

  std::size_t shadow_total = 0;
  std::size_t shadow_hit = 0;
  std::size_t bg_total = 0;
  std::size_t bg_hit = 0;
  for (std::size_t m = 0; m < masks.size(); ++m) {
    const auto truth = seq.truth[m + static_cast<std::size_t>(train_frames)].pixels();
    const auto pred = masks[m].pixels();
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (truth[i] == PixelClass::Shadow) {
        ++shadow_total;
        shadow_hit += pred[i] == PixelClass::Shadow;
      } else if (truth[i] == PixelClass::Background) {
        ++bg_total;
        bg_hit += pred[i] == PixelClass::Background;
      }
    }
  }
  std::ostringstream d;
  d << "shadow " << shadow_hit << "/" << shadow_total << ", background " << bg_hit << "/"
    << bg_total;
  return {shadow_total > 0 && shadow_hit == shadow_total && bg_hit == bg_total, d.str()};
}

double phi(const Vec3& a, const Vec3& b, double g) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += (b[c] - g * a[c]) * (b[c] - g * a[c]);
  return s;
}

// Nested uniform grids, each refining around the previous best point.
double grid_min_gamma(const Vec3& a, const Vec3& b) {
  double na = 0.0;
  double nb = 0.0;
  for (int c = 0; c < 3; ++c) {
    na += a[c] * a[c];
    nb += b[c] * b[c];
  }
  double lo = 0.0;
  double hi = std::sqrt(nb / na) + 1.0;
  double best = lo;
  for (int level = 0; level < 4; ++level) {
    const int steps = 1000;
    const double h = (hi - lo) / steps;
    double best_val = phi(a, b, lo);
    best = lo;
    for (int i = 1; i <= steps; ++i) {
      const double g = lo + h * i;
      const double v = phi(a, b, g);
      if (v < best_val) {
        best_val = v;
        best = g;
      }
    }
    lo = std::max(0.0, best - h);
    hi = best + h;
  }
  return best;
}

Outcome distortion_math() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> chan(0.0, 255.0);
  double worst_gamma = 0.0;
  double worst_identity = 0.0;
  for (int n = 0; n < 1000; ++n) {
    Vec3 a{chan(rng), chan(rng), chan(rng)};
    const Vec3 b{chan(rng), chan(rng), chan(rng)};
    if (a[0] + a[1] + a[2] < 1.0) a[0] += 1.0;
    const Distortion dist = decompose(a, b);
    worst_gamma = std::max(worst_gamma, std::abs(dist.gamma - grid_min_gamma(a, b)));

    double na = 0.0;
    double nb = 0.0;
    for (int c = 0; c < 3; ++c) {
      na += a[c] * a[c];
      nb += b[c] * b[c];
    }
    const double rhs = dist.gamma * dist.gamma * na + dist.delta * dist.delta;
    const double rel = nb > 0.0 ? std::abs(nb - rhs) / nb : std::abs(rhs);
    worst_identity = std::max(worst_identity, rel);
  }
  std::ostringstream d;
  d << "1000 pairs, max |gamma - grid| = " << worst_gamma
    << ", max identity relative error = " << worst_identity;
  return {worst_gamma <= 1e-3 && worst_identity <= 1e-6, d.str()};
}

Outcome weight_simplex() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> chan(0.0, 255.0);
  std::normal_distribution<double> jitter(0.0, 5.0);
  std::uniform_int_distribution<int> coin(0, 3);

  double worst = 0.0;
  bool size_ok = true;
  int steps = 0;
  for (int K = 3; K <= 5; ++K) {
    MogParams p;
    p.components = K;
    std::vector<GaussianComponent> mix(static_cast<std::size_t>(K),
                                       GaussianComponent{0.0, {128.0, 128.0, 128.0}, p.init_variance});
    mix[0].weight = 1.0;
    std::vector<Vec3> palette;
    for (int i = 0; i < 4; ++i) palette.push_back({chan(rng), chan(rng), chan(rng)});
    const int budget = K == 5 ? 10000 - 2 * 3334 : 3334;
    for (int s = 0; s < budget; ++s, ++steps) {
      Vec3 x;
      if (coin(rng) == 0) {
        x = {chan(rng), chan(rng), chan(rng)};
      } else {
        const Vec3& c = palette[static_cast<std::size_t>(coin(rng))];
        for (int ch = 0; ch < 3; ++ch) x[ch] = std::clamp(c[ch] + jitter(rng), 0.0, 255.0);
      }
      update_pixel(mix, x, p);
      double sum = 0.0;
      for (const auto& g : mix) sum += g.weight;
      worst = std::max(worst, std::abs(sum - 1.0));
      size_ok = size_ok && mix.size() == static_cast<std::size_t>(K);
    }
  }
  std::ostringstream d;
  d << steps << " updates over K in {3,4,5}, max |sum(w) - 1| = " << worst
    << (size_ok ? ", K constant" : ", K changed");
  return {steps == 10000 && worst <= 1e-9 && size_ok, d.str()};
}

Outcome pdf_normalization() {
  std::ostringstream d;
  bool ok = true;
  const Vec3 mean{10.0, -3.0, 7.0};
  for (double var : {1.0, 4.0, 25.0}) {
    const double sigma = std::sqrt(var);
    const int n = 80;
    const double half = 6.0 * sigma;
    const double h = 2.0 * half / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const Vec3 x{mean[0] - half + (i + 0.5) * h, mean[1] - half + (j + 0.5) * h,
                       mean[2] - half + (k + 0.5) * h};
          total += gaussian_pdf(x, mean, var);
        }
      }
    }
    total *= h * h * h;
    ok = ok && std::abs(total - 1.0) <= 1e-3;
    d << "var " << var << ": " << total << "  ";
  }
  return {ok, d.str()};
}

Outcome mog_absorption() {
  const SceneSpec spec = suite_scene("stationary_intruder");
  const Sequence seq = generate(spec);
  const int frames = spec.frame_count;
  const Rect final_rect = spec.objects.at(0).track.rect_at(frames - 1);
  const Rgb8 fill = spec.objects.at(0).fill;
  const testing::Rgb intruder{double(fill.r), double(fill.g), double(fill.b)};

  // Oracle predictions first, from the scene description alone.
  std::vector<int> covered_at;
  std::vector<int> predicted;
  int region_predicted = -1;
  bool never_predicted = false;
  for (int y = final_rect.y; y < final_rect.y + final_rect.h; ++y) {
    for (int x = final_rect.x; x < final_rect.x + final_rect.w; ++x) {
      int covered = -1;
      for (int k = 0; k < frames && covered < 0; ++k) {
        const Rect r = spec.objects[0].track.rect_at(k);
        if (spec.objects[0].track.visible(k) && x >= r.x && x < r.x + r.w && y >= r.y &&
            y < r.y + r.h) {
          covered = k;
        }
      }
      const Rgb8 bg = background_at(spec, x, y);
      const int t = testing::absorption_frame({double(bg.r), double(bg.g), double(bg.b)}, intruder,
                                              covered, frames);
      covered_at.push_back(covered);
      predicted.push_back(t);
      if (t < 0) never_predicted = true;
      region_predicted = std::max(region_predicted, t);
    }
  }

  const auto masks = run_mog(seq.frames, MogParams{});
  std::size_t mismatches = 0;
  int region_observed = -1;
  bool never_observed = false;
  std::size_t idx = 0;
  for (int y = final_rect.y; y < final_rect.y + final_rect.h; ++y) {
    for (int x = final_rect.x; x < final_rect.x + final_rect.w; ++x, ++idx) {
      int flipped = -1;
      for (int k = std::max(1, covered_at[idx]); k < frames; ++k) {
        if (masks[static_cast<std::size_t>(k - 1)].at(x, y) == PixelClass::Background) {
          flipped = k;
          break;
        }
      }
      if (flipped != predicted[idx]) ++mismatches;
      if (flipped < 0) never_observed = true;
      region_observed = std::max(region_observed, flipped);
    }
  }
  // The whole region reads Background from the predicted frame on.
  bool region_clean = !never_observed && region_observed > 0;
  for (int k = std::max(region_observed, 1); region_clean && k < frames; ++k) {
    const auto& m = masks[static_cast<std::size_t>(k - 1)];
    for (int y = final_rect.y; y < final_rect.y + final_rect.h && region_clean; ++y) {
      for (int x = final_rect.x; x < final_rect.x + final_rect.w; ++x) {
        if (m.at(x, y) != PixelClass::Background) {
          region_clean = false;
          break;
        }
      }
    }
  }

  std::ostringstream d;
  d << predicted.size() << " pixels, " << mismatches << " disagree with the oracle; region "
    << "predicted fully background at frame " << region_predicted << ", observed "
    << region_observed;
  return {mismatches == 0 && !never_predicted && region_predicted > 0 &&
              region_predicted == region_observed && region_clean,
          d.str()};
}

Outcome speed_ordering() {
  const auto t0 = Clock::now();
  const Sequence seq = generate(suite_scene("stationary_intruder"));
  const AlgorithmConfig cfg;
  std::vector<double> mean_fps;
  for (Algorithm a : kAllAlgorithms) {
    double sum = 0.0;
    for (int run = 0; run < 3; ++run) sum += benchmark(a, seq.frames, cfg).fps;
    mean_fps.push_back(sum / 3.0);
  }
  const double secs = seconds_since(t0);
  const double gap1 = mean_fps[0] / mean_fps[1];
  const double gap2 = mean_fps[1] / mean_fps[2];
  std::ostringstream d;
  d << "fps framediff " << mean_fps[0] << ", statistical " << mean_fps[1] << ", mog "
    << mean_fps[2] << "; gaps " << gap1 << "x, " << gap2 << "x; " << secs << " s total";
  return {gap1 >= 1.2 && gap2 >= 1.2 && secs < 120.0, d.str()};
}

Outcome memory_ordering() {
  const AlgorithmConfig cfg;
  const auto fd = model_memory_bytes(Algorithm::FrameDiff, 320, 240, cfg);
  const auto st = model_memory_bytes(Algorithm::Statistical, 320, 240, cfg);
  const auto mg = model_memory_bytes(Algorithm::Mog, 320, 240, cfg);
  std::ostringstream d;
  d << fd << " < " << st << " < " << mg;
  return {fd == 76800 && st == 1843200 && mg == 9216000 && fd < st && st < mg, d.str()};
}

std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i >= 5 && i <= 7) continue;
      out << cells[i] << (i + 1 < cells.size() ? "," : "");
    }
    out << '\n';
  }
  return out.str();
}

Outcome determinism() {
  const AlgorithmConfig cfg;
  std::size_t scenes = 0;
  std::size_t differing = 0;
  std::size_t lines = 0;
  for (const auto& spec : standard_suite()) {
    const std::string first = strip_timing(to_csv(compare(spec, cfg)));
    const std::string second = strip_timing(to_csv(compare(spec, cfg)));
    ++scenes;
    if (first != second) ++differing;
    lines += static_cast<std::size_t>(std::count(first.begin(), first.end(), '\n'));
  }
  std::ostringstream d;
  d << scenes << " scenes compared twice, " << differing << " differ (" << lines
    << " csv lines per run)";
  return {differing == 0 && scenes > 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"frame-diff interior hole", interior_hole},
      {"frame-diff stationarity absorption", stationarity_absorption},
      {"shadow classification", shadow_classification},
      {"distortion math", distortion_math},
      {"mixture weight simplex", weight_simplex},
      {"mixture pdf normalization", pdf_normalization},
      {"mixture absorption matches oracle", mog_absorption},
      {"speed ordering", speed_ordering},
      {"memory ordering", memory_ordering},
      {"compare determinism", determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
