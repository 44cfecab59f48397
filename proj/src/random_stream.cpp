#include "plaus/random_stream.hpp"

#include "plaus/errors.hpp"

namespace plaus {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, const StreamPath& path)
    : seed_(seed), path_(path) {
  std::uint64_t key = mix64(seed + kGolden);
  for (std::uint64_t part :
       {path.experiment, path.length, path.index, path.lane}) {
    key = mix64(key ^ mix64(part + kGolden));
  }
  state_ = key;
}

std::uint64_t RandomStream::next_u64() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw InvalidArgument("uniform: empty range");
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return next_u64();
  const std::uint64_t range = span + 1;
  // 2^64 mod range; draws at or above it cover whole multiples of range.
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw < threshold);
  return lo + draw % range;
}

RandomStream RandomStream::fork(std::uint64_t lane) const {
  StreamPath p = path_;
  p.lane = lane;
  return RandomStream(seed_, p);
}

}  // namespace plaus
