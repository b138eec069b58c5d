#include "pacon/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace pacon {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  const std::uint64_t s0 = splitmix64(seed ^ splitmix64(stream_id ^ 0x1D872B41EA438D96ull));
  const std::uint64_t s1 = splitmix64(s0);
  std::seed_seq seq{static_cast<std::uint32_t>(s0), static_cast<std::uint32_t>(s0 >> 32),
                    static_cast<std::uint32_t>(s1), static_cast<std::uint32_t>(s1 >> 32)};
  engine_.seed(seq);
}

RngStream RngStream::child(std::uint64_t tag) const {
  return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(tag)));
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> tags) const {
  std::uint64_t id = stream_id_;
  for (std::uint64_t tag : tags) id = splitmix64(id ^ splitmix64(tag));
  return RngStream(seed_, id);
}

std::uint64_t RngStream::next() { return engine_(); }

std::uint64_t RngStream::below(std::uint64_t bound) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  // 2^64 mod bound; reject the top partial block to stay exactly uniform.
  const std::uint64_t overflow = (kMax % bound + 1) % bound;
  std::uint64_t x = next();
  if (overflow != 0) {
    while (x > kMax - overflow) x = next();
  }
  return x % bound;
}

double RngStream::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace pacon
