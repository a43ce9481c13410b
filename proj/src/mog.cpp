#include "bgsub/mog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace bgsub {

namespace {

double squared_distance(const Vec3& a, const Vec3& b) {
  const double d0 = a[0] - b[0];
  const double d1 = a[1] - b[1];
  const double d2 = a[2] - b[2];
  return d0 * d0 + d1 * d1 + d2 * d2;
}

double fitness(const GaussianComponent& g) { return g.weight / std::sqrt(g.variance); }

// (2*pi)^(-3/2)
const double kNormalization3 = 1.0 / std::pow(2.0 * std::numbers::pi, 1.5);

}  // namespace

void MogParams::validate() const {
  if (components < 3 || components > 5) throw std::invalid_argument("K must be in [3, 5]");
  if (!(learning_rate > 0.0 && learning_rate < 1.0)) {
    throw std::invalid_argument("learning rate must be in (0, 1)");
  }
  if (!(match_sigmas > 0.0)) throw std::invalid_argument("match sigmas must be > 0");
  if (!(background_portion > 0.0 && background_portion < 1.0)) {
    throw std::invalid_argument("background portion must be in (0, 1)");
  }
  if (!(init_variance > 0.0)) throw std::invalid_argument("initial variance must be > 0");
  if (!(init_weight > 0.0 && init_weight < 1.0)) {
    throw std::invalid_argument("initial weight must be in (0, 1)");
  }
  if (!(min_variance > 0.0)) throw std::invalid_argument("minimum variance must be > 0");
}

double gaussian_pdf(const Vec3& x, const Vec3& mean, double variance) {
  if (!(variance > 0.0)) throw std::domain_error("gaussian_pdf: variance must be positive");
  const double d2 = squared_distance(x, mean);
  return kNormalization3 / (variance * std::sqrt(variance)) * std::exp(-0.5 * d2 / variance);
}

bool matches(const Vec3& x, const GaussianComponent& g, double match_sigmas) {
  // Compare squared quantities so the boundary is exact for integer inputs.
  return squared_distance(x, g.mean) <= match_sigmas * match_sigmas * g.variance;
}

namespace {

constexpr std::size_t kMaxComponents = 5;

// Writes the background prefix into `order` and returns its length.
std::size_t background_prefix(std::span<const GaussianComponent> mixture, double portion,
                              std::span<std::size_t> order) {
  const std::size_t k = mixture.size();
  std::iota(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), std::size_t{0});
  // Insertion sort: stable and allocation free for K <= 5.
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t idx = order[i];
    const double f = fitness(mixture[idx]);
    std::size_t j = i;
    while (j > 0 && fitness(mixture[order[j - 1]]) < f) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = idx;
  }
  double cumulative = 0.0;
  for (std::size_t n = 0; n < k; ++n) {
    cumulative += mixture[order[n]].weight;
    if (cumulative > portion) return n + 1;
  }
  return k;
}

}  // namespace

std::vector<std::size_t> background_distributions(std::span<const GaussianComponent> mixture,
                                                  double portion) {
  std::vector<std::size_t> order(mixture.size());
  order.resize(background_prefix(mixture, portion, order));
  return order;
}

void apply_match_update(GaussianComponent& g, const Vec3& x, double rho, double min_variance) {
  for (int c = 0; c < 3; ++c) g.mean[c] = (1.0 - rho) * g.mean[c] + rho * x[c];
  g.variance = std::max(min_variance, (1.0 - rho) * g.variance + rho * squared_distance(x, g.mean));
}

PixelUpdate update_pixel(std::span<GaussianComponent> mixture, const Vec3& x,
                         const MogParams& params) {
  PixelUpdate result;

  double best_score = 0.0;
  for (std::size_t j = 0; j < mixture.size(); ++j) {
    const auto& g = mixture[j];
    if (g.weight <= 0.0 || !matches(x, g, params.match_sigmas)) continue;
    const double score = squared_distance(x, g.mean) / g.variance;
    if (result.matched < 0 || score < best_score) {
      result.matched = static_cast<int>(j);
      best_score = score;
    }
  }

  const double lr = params.learning_rate;
  for (std::size_t j = 0; j < mixture.size(); ++j) {
    const double hit = static_cast<int>(j) == result.matched ? 1.0 : 0.0;
    mixture[j].weight = (1.0 - lr) * mixture[j].weight + lr * hit;
  }

  if (result.matched >= 0) {
    auto& g = mixture[static_cast<std::size_t>(result.matched)];
    const double rho = std::min(1.0, lr * gaussian_pdf(x, g.mean, g.variance));
    apply_match_update(g, x, rho, params.min_variance);
  } else {
    std::size_t weakest = 0;
    for (std::size_t j = 1; j < mixture.size(); ++j) {
      if (fitness(mixture[j]) < fitness(mixture[weakest])) weakest = j;
    }
    mixture[weakest] = {params.init_weight, x, params.init_variance};
    result.replaced = static_cast<int>(weakest);
  }

  double total = 0.0;
  for (const auto& g : mixture) total += g.weight;
  for (auto& g : mixture) g.weight /= total;

  if (result.matched < 0) {
    result.label = PixelClass::Foreground;
  } else {
    std::array<std::size_t, kMaxComponents> order{};
    const auto n = background_prefix(mixture, params.background_portion,
                                     std::span<std::size_t>(order.data(), mixture.size()));
    const auto end = order.begin() + static_cast<std::ptrdiff_t>(n);
    const bool in_bg =
        std::find(order.begin(), end, static_cast<std::size_t>(result.matched)) != end;
    result.label = in_bg ? PixelClass::Background : PixelClass::Foreground;
  }
  return result;
}

MogModel::MogModel(int width, int height, const MogParams& params)
    : width_(width), height_(height), params_(params) {
  params_.validate();
  if (width < 1 || height < 1) throw std::invalid_argument("model dimensions must be positive");
  components_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                     static_cast<std::size_t>(params_.components));
}

std::span<GaussianComponent> MogModel::mixture(std::size_t pixel) {
  const auto k = static_cast<std::size_t>(params_.components);
  return std::span<GaussianComponent>(components_).subspan(pixel * k, k);
}

std::span<const GaussianComponent> MogModel::mixture(std::size_t pixel) const {
  const auto k = static_cast<std::size_t>(params_.components);
  return std::span<const GaussianComponent>(components_).subspan(pixel * k, k);
}

MogModel init_model(const Frame& first_frame, const MogParams& params) {
  MogModel model(first_frame.width(), first_frame.height(), params);
  const auto px = first_frame.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const Vec3 v = to_vec3(px[i]);
    auto mix = model.mixture(i);
    for (std::size_t j = 0; j < mix.size(); ++j) {
      mix[j] = {j == 0 ? 1.0 : 0.0, v, params.init_variance};
    }
  }
  return model;
}

ClassMask process_frame(MogModel& model, const Frame& frame) {
  if (!frame.same_shape(model.width(), model.height())) {
    throw std::invalid_argument("mog: frame dimensions do not match model");
  }
  ClassMask mask(frame.width(), frame.height());
  const auto px = frame.pixels();
  auto out = mask.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    out[i] = update_pixel(model.mixture(i), to_vec3(px[i]), model.params()).label;
  }
  return mask;
}

std::vector<ClassMask> run_mog(std::span<const Frame> frames, const MogParams& params) {
  if (frames.size() < 2) throw std::invalid_argument("run_mog: need at least 2 frames");
  MogModel model = init_model(frames.front(), params);
  std::vector<ClassMask> masks;
  masks.reserve(frames.size() - 1);
  for (std::size_t k = 1; k < frames.size(); ++k) masks.push_back(process_frame(model, frames[k]));
  return masks;
}

}  // namespace bgsub
