#include "bgsub/statistical_shadow.hpp"

#include <cmath>
#include <string>

namespace bgsub {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool is_zero(const Vec3& a) { return a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0; }

}  // namespace

StatBackgroundModel::StatBackgroundModel(int width, int height, std::vector<Vec3> alpha)
    : width_(width), height_(height), alpha_(std::move(alpha)) {
  if (width < 1 || height < 1) throw std::invalid_argument("model dimensions must be positive");
  if (alpha_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("alpha length does not match dimensions");
  }
  for (const auto& a : alpha_) {
    for (double c : a) {
      if (!(c >= 0.0 && c <= 255.0)) throw std::invalid_argument("alpha channel outside [0,255]");
    }
  }
}

void StatParams::validate() const {
  if (!(tau_delta >= 0.0)) throw std::invalid_argument("tau_delta must be >= 0");
  if (!(gamma_min >= 0.0 && gamma_min < tau_gamma_lo && tau_gamma_lo < 1.0 &&
        tau_gamma_hi > 1.0)) {
    throw std::invalid_argument(
        "thresholds must satisfy 0 <= gamma_min < gamma_lo < 1 < gamma_hi");
  }
}

StatBackgroundModel train(std::span<const Frame> frames) {
  if (frames.empty()) throw std::invalid_argument("train: empty training sequence");
  const int w = frames.front().width();
  const int h = frames.front().height();
  std::vector<Vec3> sum(frames.front().size(), Vec3{0.0, 0.0, 0.0});
  for (const auto& f : frames) {
    if (!f.same_shape(w, h)) throw std::invalid_argument("train: dimension mismatch");
    const auto px = f.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
      sum[i][0] += px[i].r;
      sum[i][1] += px[i].g;
      sum[i][2] += px[i].b;
    }
  }
  const double n = static_cast<double>(frames.size());
  for (auto& s : sum) {
    for (double& c : s) c /= n;
  }
  return StatBackgroundModel(w, h, std::move(sum));
}

double brightness_distortion(const Vec3& alpha, const Vec3& beta) {
  if (is_zero(alpha)) throw ZeroAlphaError("brightness undefined for black expected color");
  return dot(beta, alpha) / dot(alpha, alpha);
}

double chromaticity_distortion(const Vec3& alpha, const Vec3& beta, double gamma) {
  const double r0 = beta[0] - gamma * alpha[0];
  const double r1 = beta[1] - gamma * alpha[1];
  const double r2 = beta[2] - gamma * alpha[2];
  return std::sqrt(r0 * r0 + r1 * r1 + r2 * r2);
}

Distortion decompose(const Vec3& alpha, const Vec3& beta) {
  const double gamma = brightness_distortion(alpha, beta);
  return {gamma, chromaticity_distortion(alpha, beta, gamma)};
}

PixelClass classify_pixel(const Vec3& alpha, const Vec3& beta, const StatParams& params) {
  if (is_zero(alpha)) {
    return std::sqrt(dot(beta, beta)) <= params.tau_delta ? PixelClass::Background
                                                          : PixelClass::Foreground;
  }
  const auto [gamma, delta] = decompose(alpha, beta);
  if (delta > params.tau_delta) return PixelClass::Foreground;
  if (gamma >= params.tau_gamma_lo && gamma <= params.tau_gamma_hi) return PixelClass::Background;
  if (gamma >= params.gamma_min && gamma < params.tau_gamma_lo) return PixelClass::Shadow;
  if (gamma > params.tau_gamma_hi) return PixelClass::Highlight;
  // Too dark to be a shadow, or NaN thresholds.
  return PixelClass::Foreground;
}

ClassMask classify_frame(const StatBackgroundModel& model, const Frame& frame,
                         const StatParams& params) {
  if (!frame.same_shape(model.width(), model.height())) {
    throw std::invalid_argument("statistical: frame dimensions do not match model");
  }
  ClassMask mask(frame.width(), frame.height());
  const auto px = frame.pixels();
  const auto alpha = model.alpha();
  auto out = mask.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    out[i] = classify_pixel(alpha[i], to_vec3(px[i]), params);
  }
  return mask;
}

std::vector<ClassMask> run_statistical(const StatBackgroundModel& model,
                                       std::span<const Frame> frames,
                                       const StatParams& params) {
  std::vector<ClassMask> masks;
  masks.reserve(frames.size());
  for (const auto& f : frames) masks.push_back(classify_frame(model, f, params));
  return masks;
}

}  // namespace bgsub
