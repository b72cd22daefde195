#include "socm/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace socm {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t cell_index,
                              std::uint64_t run_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ mix64(cell_index + 0xD1B54A32D192ED03ULL));
  h = mix64(h ^ mix64(run_index + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id) {
  std::uint64_t sm = mix64(seed) ^ mix64(stream_id + 0xA24BAED4963EE407ULL);
  for (auto& word : state_) word = splitmix_next(sm);
  // splitmix64 output is never all-zero across four words in practice; guard anyway
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomSource::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomSource::unit_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("RandomSource::uniform: lo > hi");
  const double u = unit_double();
  double v = lo + u * (hi - lo);
  if (v >= hi && lo < hi) v = std::nextafter(hi, lo);  // rounding guard at the top end
  return v;
}

std::int64_t RandomSource::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("RandomSource::uniform_int: lo > hi");
  const std::uint64_t range =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit span
  const std::uint64_t mask = std::bit_ceil(range) - 1;
  std::uint64_t draw;
  do {
    draw = next_u64() & mask;
  } while (draw >= range);
  return lo + static_cast<std::int64_t>(draw);
}

double RandomSource::normal(double mean, double stdev) {
  if (stdev < 0) throw std::invalid_argument("RandomSource::normal: stdev < 0");
  if (has_spare_) {
    has_spare_ = false;
    return mean + stdev * spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * unit_double() - 1.0;
    v = 2.0 * unit_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return mean + stdev * (u * f);
}

}  // namespace socm
