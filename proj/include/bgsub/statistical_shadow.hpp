#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "bgsub/imaging.hpp"

namespace bgsub {

/// Per-pixel expected background color, learned once from an empty scene.
class StatBackgroundModel {
 public:
  StatBackgroundModel(int width, int height, std::vector<Vec3> alpha);

  int width() const { return width_; }
  int height() const { return height_; }
  const Vec3& expected(std::size_t i) const { return alpha_[i]; }
  std::span<const Vec3> alpha() const { return alpha_; }

 private:
  int width_;
  int height_;
  std::vector<Vec3> alpha_;
};

/// Classification thresholds. Must satisfy
/// 0 <= gamma_min < tau_gamma_lo < 1 < tau_gamma_hi and tau_delta >= 0.
struct StatParams {
  double tau_delta = 10.0;
  double tau_gamma_lo = 0.8;
  double tau_gamma_hi = 1.2;
  double gamma_min = 0.3;

  void validate() const;
};

struct Distortion {
  double gamma = 1.0;  // brightness scale of alpha that best explains beta
  double delta = 0.0;  // residual color distance after that scaling
};

/// Thrown when alpha is black and brightness is undefined.
class ZeroAlphaError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Per-pixel per-channel mean over the training frames.
StatBackgroundModel train(std::span<const Frame> frames);

/// Minimizer of |beta - g * alpha|^2 over g, i.e. (beta . alpha) / (alpha . alpha).
double brightness_distortion(const Vec3& alpha, const Vec3& beta);
double chromaticity_distortion(const Vec3& alpha, const Vec3& beta, double gamma);
Distortion decompose(const Vec3& alpha, const Vec3& beta);

PixelClass classify_pixel(const Vec3& alpha, const Vec3& beta, const StatParams& params);

ClassMask classify_frame(const StatBackgroundModel& model, const Frame& frame,
                         const StatParams& params);
std::vector<ClassMask> run_statistical(const StatBackgroundModel& model,
                                       std::span<const Frame> frames,
                                       const StatParams& params);

}  // namespace bgsub
