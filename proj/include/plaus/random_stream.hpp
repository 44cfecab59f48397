#pragma once

#include <cstdint>

namespace plaus {

// Identifies an independent substream: which experiment, which length, which
// instance (or repetition), and a lane separating uses inside one instance
// (e.g. drawing the instance vs. the forecaster's private coins).
struct StreamPath {
  std::uint64_t experiment = 0;
  std::uint64_t length = 0;
  std::uint64_t index = 0;
  std::uint64_t lane = 0;
};

// Counter-based random stream. The state is derived purely from
// (seed, path), so any substream can be reproduced without replaying the
// others, independent of evaluation order or thread count.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, const StreamPath& path);

  std::uint64_t seed() const noexcept { return seed_; }
  const StreamPath& path() const noexcept { return path_; }

  std::uint64_t next_u64() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double next_unit() noexcept;
  // Uniform on [lo, hi] inclusive; unbiased (rejection sampling).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  // A sibling stream on the same seed with a different lane.
  RandomStream fork(std::uint64_t lane) const;

 private:
  std::uint64_t seed_;
  StreamPath path_;
  std::uint64_t state_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace plaus
