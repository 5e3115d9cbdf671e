#ifndef ECIBO_RNG_HPP
#define ECIBO_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

namespace ecibo {

/// splitmix64 finalizer, used for seed mixing and stream derivation.
constexpr std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Identical seed + identical call sequence give
/// identical outputs on every platform: mt19937_64 output is fully specified
/// by the standard, and all derived values below avoid the std::*_distribution
/// classes, whose mappings are implementation-defined.
///
/// Child streams are addressed by a tag path, e.g.
/// RngStream::derive(root, {kTagDoe, run_index}); streams with distinct paths
/// are statistically independent for our purposes.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  static RngStream derive(std::uint64_t root,
                          std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix_seed(root);
    for (std::uint64_t tag : path) {
      s = mix_seed(s ^ mix_seed(tag));
    }
    return RngStream(s);
  }

  std::uint64_t u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n), unbiased (Lemire rejection).
  std::size_t index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::index: n must be > 0");
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    unsigned __int128 m =
        static_cast<unsigned __int128>(u64()) * static_cast<unsigned __int128>(range);
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < range) {
      const std::uint64_t threshold = (0ull - range) % range;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(u64()) *
            static_cast<unsigned __int128>(range);
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::size_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ecibo

#endif
