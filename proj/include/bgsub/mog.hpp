#pragma once

#include <span>
#include <vector>

#include "bgsub/imaging.hpp"

namespace bgsub {

/// One isotropic Gaussian (covariance = variance * I) inside a pixel mixture.
struct GaussianComponent {
  double weight = 0.0;
  Vec3 mean{0.0, 0.0, 0.0};
  double variance = 1.0;

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

/// Exactly K components. Weights sum to one after every update.
using PixelMixture = std::vector<GaussianComponent>;

struct MogParams {
  int components = 3;             // K, in [3, 5]
  double learning_rate = 0.05;    // blend factor of the weight update
  double match_sigmas = 2.5;      // match radius in standard deviations
  double background_portion = 0.7;
  double init_variance = 900.0;   // variance given to a freshly replaced component
  double init_weight = 0.05;      // weight given to a freshly replaced component
  double min_variance = 1e-6;     // floor keeping variance strictly positive

  void validate() const;
};

/// Trivariate isotropic normal density. Throws std::domain_error if variance <= 0.
double gaussian_pdf(const Vec3& x, const Vec3& mean, double variance);

/// Inclusive match: |x - mean| <= match_sigmas * sqrt(variance).
bool matches(const Vec3& x, const GaussianComponent& g, double match_sigmas);

/// Indices of the background components: sort by weight / sqrt(variance)
/// descending (stable, so ties keep the lower index first) and keep the
/// shortest prefix whose cumulative weight exceeds `portion`.
std::vector<std::size_t> background_distributions(std::span<const GaussianComponent> mixture,
                                                  double portion);

/// Moves a matched component toward x with blend factor rho:
/// mean' = (1 - rho) mean + rho x, variance' = (1 - rho) variance + rho |x - mean'|^2,
/// floored at min_variance.
void apply_match_update(GaussianComponent& g, const Vec3& x, double rho, double min_variance);

/// Outcome of a single online update, exposed for tests and diagnostics.
struct PixelUpdate {
  PixelClass label = PixelClass::Background;
  int matched = -1;   // index of the component that absorbed x, -1 if none
  int replaced = -1;  // index of the component re-seeded at x, -1 if none
};

/// Advances one pixel's mixture by one observation, in place.
///
/// Only the best matching component (smallest normalized distance among
/// components with nonzero weight) counts as matched. Every weight is
/// blended toward its 0/1 match indicator with the learning rate; the matched
/// component's mean and variance move with
/// rho = min(1, learning_rate * pdf(x | old mean, old variance)). With no match
/// the component of lowest weight / sigma is re-seeded at x. Weights are then
/// renormalized. The label is Background only if the matched component is
/// among the background distributions of the updated mixture.
PixelUpdate update_pixel(std::span<GaussianComponent> mixture, const Vec3& x,
                         const MogParams& params);

/// Frame-shaped collection of per-pixel mixtures, stored contiguously.
class MogModel {
 public:
  MogModel(int width, int height, const MogParams& params);

  int width() const { return width_; }
  int height() const { return height_; }
  const MogParams& params() const { return params_; }

  std::span<GaussianComponent> mixture(std::size_t pixel);
  std::span<const GaussianComponent> mixture(std::size_t pixel) const;

  friend bool operator==(const MogModel& a, const MogModel& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.components_ == b.components_;
  }

 private:
  int width_;
  int height_;
  MogParams params_;
  std::vector<GaussianComponent> components_;
};

/// Component 0 takes the pixel's value with weight 1; the rest sit at the
/// same mean with weight 0 until a no-match event re-seeds them.
MogModel init_model(const Frame& first_frame, const MogParams& params);

/// Runs update_pixel over every pixel; the mask holds only Background and
/// Foreground labels.
ClassMask process_frame(MogModel& model, const Frame& frame);

/// Initializes on frames[0] and returns masks for frames[1..].
std::vector<ClassMask> run_mog(std::span<const Frame> frames, const MogParams& params);

}  // namespace bgsub
