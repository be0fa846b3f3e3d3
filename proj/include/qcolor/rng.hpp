#pragma once

#include <cstdint>
#include <random>

namespace qcolor {

// Deterministic 64-bit generator used wherever results must be reproducible.
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard; the bit-to-value conversions below are explicit, so identical
// seeds give identical streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in {0, ..., n-1}, unbiased (rejection on the top residue band).
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (-n) % n;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

  // Uniform in {lo, ..., hi}, inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(
                    uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // splitmix64 finalizer over (base, stream); derives independent
  // sub-stream seeds from one run seed.
  static std::uint64_t mix(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qcolor
