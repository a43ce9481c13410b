// Command-line front end: run, synth, suite, bench, compare.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bgsub/harness.hpp"
#include "bgsub/imaging.hpp"
#include "bgsub/scene_file.hpp"
#include "bgsub/synth.hpp"

namespace fs = std::filesystem;
using namespace bgsub;

namespace {

struct AlgoFlags {
  std::string algo;
  std::optional<int> threshold;
  int train_frames = 10;
  StatParams stat;
  MogParams mog;
};

void add_algo_flags(CLI::App* cmd, AlgoFlags& f, bool threshold_has_default) {
  auto* th = cmd->add_option("--threshold", f.threshold, "framediff threshold T_h (0-255)")
                 ->check(CLI::Range(0, 255));
  if (threshold_has_default) {
    f.threshold = 25;
    th->capture_default_str();
  }
  cmd->add_option("--train-frames", f.train_frames, "statistical: leading frames used for training")
      ->capture_default_str();
  cmd->add_option("--tau-delta", f.stat.tau_delta, "statistical: chromaticity threshold")
      ->capture_default_str();
  cmd->add_option("--gamma-lo", f.stat.tau_gamma_lo, "statistical: lower brightness bound")
      ->capture_default_str();
  cmd->add_option("--gamma-hi", f.stat.tau_gamma_hi, "statistical: upper brightness bound")
      ->capture_default_str();
  cmd->add_option("--gamma-min", f.stat.gamma_min, "statistical: darkest brightness still shadow")
      ->capture_default_str();
  cmd->add_option("--k", f.mog.components, "mog: components per pixel (3-5)")->capture_default_str();
  cmd->add_option("--learning-rate", f.mog.learning_rate, "mog: learning rate")
      ->capture_default_str();
  cmd->add_option("--bg-portion", f.mog.background_portion, "mog: background weight portion T")
      ->capture_default_str();
  cmd->add_option("--init-variance", f.mog.init_variance, "mog: variance of re-seeded components")
      ->capture_default_str();
  cmd->add_option("--init-weight", f.mog.init_weight, "mog: weight of re-seeded components")
      ->capture_default_str();
}

AlgorithmConfig to_config(const AlgoFlags& f, std::optional<Algorithm> algo) {
  AlgorithmConfig cfg;
  if (algo == Algorithm::FrameDiff && !f.threshold) {
    throw std::invalid_argument("framediff requires --threshold");
  }
  if (f.threshold) cfg.frame_diff.threshold = static_cast<std::uint8_t>(*f.threshold);
  cfg.train_frames = f.train_frames;
  cfg.statistical = f.stat;
  cfg.statistical.validate();
  cfg.mog = f.mog;
  cfg.mog.validate();
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
}

void write_sequence(const Sequence& seq, const fs::path& dir) {
  fs::create_directories(dir / "frames");
  fs::create_directories(dir / "truth");
  for (std::size_t k = 0; k < seq.frames.size(); ++k) {
    save_ppm(seq.frames[k], dir / "frames" / sequence_file_name("frame", k, "ppm"));
    save_pgm(seq.truth[k], dir / "truth" / sequence_file_name("truth", k, "pgm"));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Background subtraction toolkit: frame differencing, statistical shadow "
               "detection and adaptive Gaussian mixtures"};
  app.require_subcommand(1);

  AlgoFlags run_flags;
  std::string run_input, run_output;
  auto* run = app.add_subcommand("run", "Segment a directory of PPM frames into PGM masks");
  run->add_option("--algo", run_flags.algo, "framediff | statistical | mog")->required();
  run->add_option("--input", run_input, "directory of frame_*.ppm")->required();
  run->add_option("--output", run_output, "directory for mask_*.pgm")->required();
  add_algo_flags(run, run_flags, false);

  std::string synth_spec, synth_scene, synth_out;
  auto* synth = app.add_subcommand("synth", "Render a scene to frames/ and truth/");
  auto* spec_opt = synth->add_option("--spec", synth_spec, "scene file");
  synth->add_option("--scene", synth_scene, "standard suite scene name")->excludes(spec_opt);
  synth->add_option("--out", synth_out, "output directory")->required();

  std::string suite_out;
  auto* suite = app.add_subcommand("suite", "Write the standard suite scene files");
  suite->add_option("--out", suite_out, "output directory")->required();

  AlgoFlags bench_flags;
  std::string bench_input, bench_truth, bench_report;
  auto* bench = app.add_subcommand("bench", "Score and time one algorithm against ground truth");
  bench->add_option("--algo", bench_flags.algo, "framediff | statistical | mog")->required();
  bench->add_option("--input", bench_input, "directory of frame_*.ppm")->required();
  bench->add_option("--truth", bench_truth, "directory of ground-truth PGM masks")->required();
  bench->add_option("--report", bench_report, "CSV output path")->required();
  add_algo_flags(bench, bench_flags, false);

  AlgoFlags cmp_flags;
  std::string cmp_spec, cmp_report;
  auto* cmp = app.add_subcommand("compare", "Run all three algorithms on a scene");
  cmp->add_option("--spec", cmp_spec, "scene file")->required();
  cmp->add_option("--report", cmp_report, "CSV output path")->required();
  add_algo_flags(cmp, cmp_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      const Algorithm algo = parse_algorithm(run_flags.algo);
      const AlgorithmConfig cfg = to_config(run_flags, algo);
      const auto frames = load_frame_sequence(run_input);
      if (frames.empty()) throw std::runtime_error(run_input + ": no .ppm frames found");
      const AlgorithmRun result = run_algorithm(algo, frames, cfg);
      fs::create_directories(run_output);
      for (std::size_t m = 0; m < result.masks.size(); ++m) {
        save_pgm(result.masks[m],
                 fs::path(run_output) / sequence_file_name("mask", result.first_frame + m, "pgm"));
      }
      std::cout << "wrote " << result.masks.size() << " masks to " << run_output << '\n';
    } else if (*synth) {
      if (synth_spec.empty() && synth_scene.empty()) {
        throw std::invalid_argument("synth requires --spec or --scene");
      }
      const SceneSpec spec = synth_spec.empty() ? suite_scene(synth_scene) : load_scene(synth_spec);
      write_sequence(generate(spec), synth_out);
      std::cout << "wrote " << spec.frame_count << " frames of '" << spec.name << "' to "
                << synth_out << '\n';
    } else if (*suite) {
      fs::create_directories(suite_out);
      for (const auto& s : standard_suite()) {
        save_scene(s, fs::path(suite_out) / (s.name + ".scene"));
      }
      std::cout << "wrote " << standard_suite().size() << " scene files to " << suite_out << '\n';
    } else if (*bench) {
      const Algorithm algo = parse_algorithm(bench_flags.algo);
      const AlgorithmConfig cfg = to_config(bench_flags, algo);
      const auto frames = load_frame_sequence(bench_input);
      const auto truth = load_mask_sequence(bench_truth);
      if (frames.empty()) throw std::runtime_error(bench_input + ": no .ppm frames found");
      Report report;
      report.scene = fs::path(bench_input).filename().string();
      report.width = frames.front().width();
      report.height = frames.front().height();
      report.rows.push_back(score_run(run_algorithm(algo, frames, cfg), truth));
      write_text(bench_report, to_csv(report));
      std::cout << to_text(report);
    } else if (*cmp) {
      const AlgorithmConfig cfg = to_config(cmp_flags, std::nullopt);
      const Report report = compare(load_scene(cmp_spec), cfg);
      write_text(cmp_report, to_csv(report));
      std::cout << to_text(report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
