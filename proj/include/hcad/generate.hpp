#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hcad/types.hpp"

namespace hcad {

/// Deterministic synthetic dataset description. Generation is pinned to
/// mt19937_64 with explicit uniform and Box-Muller transforms, so the same
/// spec yields bit-identical data on every platform.
struct GeneratorSpec {
  enum class Kind { blobs, rings, uniform };
  Kind kind = Kind::uniform;
  int n = 0;
  int d = 2;
  std::uint64_t seed = 0;
  // blobs
  int blob_count = 3;
  double blob_sigma = 1.0;
  double blob_separation = 16.0;  // in units of sigma, >= 6 by construction
  // rings (d = 2 only)
  std::vector<double> ring_radii{1.0, 2.0};
  double ring_thickness = 0.1;
  // uniform
  double extent = 1.0;
};

namespace detail {

/// Uniform in [0, 1) from the top 53 bits; independent of the standard
/// library's unspecified distribution algorithms.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller.
inline double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1], keeps log finite
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

inline Dataset generate(const GeneratorSpec& spec) {
  if (spec.kind == GeneratorSpec::Kind::rings && spec.d != 2)
    throw UnsupportedDimension("rings generator requires d = 2");
  if (spec.n < 0 || spec.d < 1)
    throw EmptyInput("generator spec: n must be >= 0 and d >= 1");

  std::mt19937_64 rng(spec.seed);
  Eigen::MatrixXd coords(spec.n, spec.d);

  switch (spec.kind) {
    case GeneratorSpec::Kind::uniform:
      for (int i = 0; i < spec.n; ++i)
        for (int c = 0; c < spec.d; ++c)
          coords(i, c) = spec.extent * detail::uniform01(rng);
      break;

    case GeneratorSpec::Kind::blobs: {
      // Centers sit on the first axis, separation * sigma apart; points are
      // assigned round-robin so every blob gets n/k points up to remainder.
      const double spacing = spec.blob_separation * spec.blob_sigma;
      for (int i = 0; i < spec.n; ++i) {
        const int blob = i % spec.blob_count;
        for (int c = 0; c < spec.d; ++c) {
          const double center = (c == 0) ? blob * spacing : 0.0;
          coords(i, c) = center + spec.blob_sigma * detail::gaussian(rng);
        }
      }
      break;
    }

    case GeneratorSpec::Kind::rings: {
      const int k = static_cast<int>(spec.ring_radii.size());
      for (int i = 0; i < spec.n; ++i) {
        const double radius = spec.ring_radii[static_cast<std::size_t>(i % k)];
        const double angle = 2.0 * std::numbers::pi * detail::uniform01(rng);
        const double r =
            radius + spec.ring_thickness * (detail::uniform01(rng) - 0.5);
        coords(i, 0) = r * std::cos(angle);
        coords(i, 1) = r * std::sin(angle);
      }
      break;
    }
  }
  return Dataset(std::move(coords));
}

}  // namespace hcad
