#pragma once

#include <cstdint>

namespace socm {

// Stable 64-bit finalizer (splitmix64). All seed/stream derivation goes
// through this so independently derived sub-seeds never share state.
std::uint64_t mix64(std::uint64_t z);

// Seed for one run of an ensemble, derived from (master seed, cell, run).
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t cell_index,
                              std::uint64_t run_index);

// One substream per consumer role. New consumers get new ids appended at the
// end; existing ids never change, so outputs stay regression-stable.
enum class Stream : std::uint64_t {
  rewiring = 0,
  population = 1,
  drive = 2,
  pricing_noise = 3,
  random_price = 4,
  omega_noise = 5,
};

// Deterministic, seedable random source: xoshiro256++ seeded via splitmix64
// from (seed, stream id). Identical (seed, stream) gives an identical draw
// sequence on every platform; distinct streams share no state.
//
// Single-owner: never share one source between concurrently running tasks.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream_id);
  RandomSource(std::uint64_t seed, Stream stream)
      : RandomSource(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64();

  // Uniform real on [lo, hi). lo == hi returns lo; lo > hi throws.
  double uniform(double lo, double hi);

  // Uniform integer on [lo, hi], both endpoints included, each equiprobable.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Normal deviate via the Marsaglia polar transform; the transform produces
  // deviates in pairs and the second one is cached for the next call.
  // stdev == 0 returns mean exactly; stdev < 0 throws.
  double normal(double mean, double stdev);

 private:
  double unit_double();  // 53-bit uniform on [0, 1)

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t state_[4] = {};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace socm
