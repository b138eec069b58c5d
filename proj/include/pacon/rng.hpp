#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pacon {

/// Seeded random stream addressed by (seed, stream_id). Child streams are
/// derived by hashing tags into the id, so any tree of streams reproduces
/// identically regardless of construction order or thread assignment.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  RngStream child(std::uint64_t tag) const;
  RngStream child(std::initializer_list<std::uint64_t> tags) const;

  std::uint64_t next();
  /// Uniform integer in [0, bound), unbiased (rejection sampling). bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform real in [0, 1).
  double uniform();
  /// Standard normal draw. Consumes exactly two uniforms (Box-Muller, no
  /// cached second value), so draw counts are stable across call sites.
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Purpose tags for child-stream derivation. Values are arbitrary but fixed;
/// changing them changes every downstream draw.
namespace stream_tag {
inline constexpr std::uint64_t kInitialBelief = 1;
inline constexpr std::uint64_t kTree = 2;
inline constexpr std::uint64_t kRootStates = 3;
inline constexpr std::uint64_t kPolicyMain = 4;
inline constexpr std::uint64_t kPolicyAlt = 5;
inline constexpr std::uint64_t kGroundTruth = 6;
inline constexpr std::uint64_t kObservationNoise = 7;
inline constexpr std::uint64_t kFilter = 8;
inline constexpr std::uint64_t kSubsample = 9;
inline constexpr std::uint64_t kChild = 10;
inline constexpr std::uint64_t kBranchCap = 11;
inline constexpr std::uint64_t kSimplifyRoot = 12;
inline constexpr std::uint64_t kReplicate = 13;
inline constexpr std::uint64_t kLevel = 14;
inline constexpr std::uint64_t kProbe = 15;
inline constexpr std::uint64_t kSimplifiedPhase = 16;
}  // namespace stream_tag

}  // namespace pacon
