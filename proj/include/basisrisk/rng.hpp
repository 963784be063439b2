#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "basisrisk/errors.hpp"
#include "basisrisk/types.hpp"

namespace basisrisk {

/// Seedable random stream with portable output.
///
/// The engine is std::mt19937_64 (fully specified by the standard) and all
/// distributions are derived here from raw 64-bit draws, so a given
/// (seed, stream) pair produces the same sequence on every platform and
/// standard library. Streams are addressed either by integer id or by label,
/// which lets parallel work derive independent, order-free substreams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix(seed, stream)) {}

  Rng(std::uint64_t seed, std::string_view label)
      : engine_(mix(seed, fnv1a(label))) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; the cosine branch only, so exactly one
  /// pair of uniforms is consumed per draw.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mu, double sd) { return mu + sd * normal(); }

  /// Uniform integer in [0, n) by rejection, bias-free.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::size, "uniform_int: empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  /// m distinct indices from [0, n), partial Fisher-Yates, ascending output.
  std::vector<Index> sample_without_replacement(Index n, Index m) {
    if (m < 0 || m > n)
      throw Error(ErrorKind::size, "sample size exceeds population");
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < m; ++i) {
      const auto j = i + static_cast<Index>(
                             uniform_int(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)],
                pool[static_cast<std::size_t>(j)]);
    }
    std::vector<Index> out(pool.begin(), pool.begin() + m);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Unit vector drawn uniformly from the N-sphere.
  Vector<double> unit_sphere(Index n) {
    Vector<double> v(n);
    double norm2 = 0.0;
    do {
      for (Index i = 0; i < n; ++i) v[i] = normal();
      norm2 = v.squaredNorm();
    } while (norm2 == 0.0);
    return v / std::sqrt(norm2);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  // splitmix64 finalizer; decorrelates (seed, stream) pairs before seeding.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace basisrisk
