// Deterministic random draws for simulation.
//
// Distributions are implemented on top of the raw mt19937_64 stream instead
// of std::uniform_real_distribution, whose output is implementation-defined;
// traces must be reproducible bit-for-bit from a seed.

#pragma once

#include <cstdint>
#include <random>

namespace s3e {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [-1, 1).
  double uniform_sym() { return 2.0 * uniform01() - 1.0; }

  /// Uniform on [-s, s).
  double uniform_sym(double s) { return s * uniform_sym(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives independent substreams from a master seed; the stream index keeps
/// noise, attack, and input draws decoupled from each other.
inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(seed * 0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
}

}  // namespace s3e
