#pragma once

#include <cmath>
#include <cstdint>

namespace fnc {

// SplitMix64: counter-based generator (state advances by a fixed odd gamma,
// output is a bijective finalizer of the counter). Machine-independent and
// cheap to split: substreams are derived by mixing the master seed with
// stream labels, so replicate-level work can run on any number of workers
// and still produce identical results.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1) with 53 bits of resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased integer in [0, bound) via 128-bit multiply-shift
  std::uint64_t bounded(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // standard normal via the polar method; second variate is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic substream seed from a master seed and up to three labels
// (stage tag, scenario id, replicate index). Every Monte-Carlo loop in the
// project derives its per-item seed this way.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = detail::mix64(master ^ 0xA0761D6478BD642FULL);
  h = detail::mix64(h ^ (a + 0xE7037ED1A0B428DBULL));
  h = detail::mix64(h ^ (b + 0x8EBC6AF09C88C6E3ULL));
  h = detail::mix64(h ^ (c + 0x589965CC75374CC3ULL));
  return h;
}

// stage tags for substream derivation
inline constexpr std::uint64_t kStreamCvFolds = 1;
inline constexpr std::uint64_t kStreamNullCalib = 2;
inline constexpr std::uint64_t kStreamErGraph = 3;
inline constexpr std::uint64_t kStreamDesign = 4;
inline constexpr std::uint64_t kStreamResponse = 5;

}  // namespace fnc
