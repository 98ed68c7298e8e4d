#pragma once

#include "hhgeom/random.hpp"
#include "hhgeom/triangulation.hpp"

namespace hhgeom {

/// Uniform sampler over a polytope of positive volume: a simplex is chosen
/// with probability proportional to its volume, then a flat Dirichlet
/// barycentric point inside it.
class UniformSampler {
 public:
  explicit UniformSampler(const Polytope& p) : body_(p), data_(&body_.data()) {
    simplices_ = detail::local_simplices(*data_);
    require(!simplices_.empty(), "sample_uniform: body has zero volume");
    double acc = 0.0;
    for (const auto& s : simplices_) {
      acc += detail::local_simplex_volume(s);
      cumulative_.push_back(acc);
    }
    require(acc > 0, "sample_uniform: body has zero volume");
  }

  Vector operator()(Rng& rng) const {
    const double pick = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), pick);
    if (it == cumulative_.end()) --it;
    const Matrix& s = simplices_[static_cast<std::size_t>(it - cumulative_.begin())];
    Vector w(s.cols());
    for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = rng.exponential();
    w /= w.sum();
    return detail::lift(*data_, s * w);
  }

  double volume() const { return cumulative_.back(); }

 private:
  Polytope body_;
  const detail::PolytopeData* data_;
  std::vector<Matrix> simplices_;
  std::vector<double> cumulative_;
};

/// `count` i.i.d. uniform points of P, deterministic in `seed` and independent
/// of the worker count.
inline PointList sample_uniform(const Polytope& p, std::size_t count, std::uint64_t seed) {
  PointList out(count);
  if (count == 0) return out;
  const UniformSampler sampler(p);
  for_each_shard(shard_count(count), [&](std::size_t shard) {
    Rng rng(stream_seed(seed, shard));
    const std::size_t end = std::min(count, (shard + 1) * kShardSize);
    for (std::size_t j = shard * kShardSize; j < end; ++j) out[j] = sampler(rng);
  });
  return out;
}

}  // namespace hhgeom
