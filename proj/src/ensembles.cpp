#include "plaus/ensembles.hpp"

#include "plaus/errors.hpp"

namespace plaus {

namespace {

void guard_enumerable(const Ensemble& e, unsigned n) {
  if (n > e.enumerable_bound()) {
    throw ResourceGuardError(e.name() + ": length " + std::to_string(n) +
                             " exceeds enumerable bound " +
                             std::to_string(e.enumerable_bound()) +
                             "; use monte-carlo mode");
  }
}

class UniformBits final : public Ensemble {
 public:
  std::string name() const override { return "uniform-bits"; }
  std::string support_kind() const override { return "all bit strings of length n"; }
  unsigned enumerable_bound() const override { return 20; }

  Instance sample(unsigned n, RandomStream& stream) const override {
    if (n == 0 || n > Instance::kMaxLength) {
      throw DomainError("uniform-bits: unsupported length " + std::to_string(n));
    }
    std::uint64_t bits = stream.next_u64();
    if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
    return Instance(bits, n);
  }

  std::vector<WeightedInstance> enumerate(unsigned n) const override {
    if (n == 0) throw DomainError("uniform-bits: unsupported length 0");
    guard_enumerable(*this, n);
    const std::uint64_t count = std::uint64_t{1} << n;
    const double p = 1.0 / static_cast<double>(count);
    std::vector<WeightedInstance> out;
    out.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) out.push_back({Instance(v, n), p});
    return out;
  }
};

class UniformOdd final : public Ensemble {
 public:
  std::string name() const override { return "uniform-odd"; }
  std::string support_kind() const override { return "odd n-bit integers with top bit set"; }
  unsigned enumerable_bound() const override { return 22; }

  Instance sample(unsigned n, RandomStream& stream) const override {
    check_length(n);
    const std::uint64_t half = n == 2 ? 0 : stream.uniform(0, (std::uint64_t{1} << (n - 2)) - 1);
    return Instance(top(n) | (half << 1) | 1U, n);
  }

  std::vector<WeightedInstance> enumerate(unsigned n) const override {
    check_length(n);
    guard_enumerable(*this, n);
    const std::uint64_t count = std::uint64_t{1} << (n - 2);
    const double p = 1.0 / static_cast<double>(count);
    std::vector<WeightedInstance> out;
    out.reserve(count);
    for (std::uint64_t h = 0; h < count; ++h) out.push_back({Instance(top(n) | (h << 1) | 1U, n), p});
    return out;
  }

 private:
  static std::uint64_t top(unsigned n) { return std::uint64_t{1} << (n - 1); }
  static void check_length(unsigned n) {
    if (n < 2 || n > Instance::kMaxLength) {
      throw DomainError("uniform-odd: unsupported length " + std::to_string(n) +
                        " (need 2 <= n <= 64)");
    }
  }
};

class IndexRange final : public Ensemble {
 public:
  static constexpr std::uint64_t kMaxSupport = std::uint64_t{1} << 22;

  IndexRange(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
    if (lo == 0 || lo > hi) {
      throw InvalidArgument("index-range needs 1 <= lo <= hi, got lo=" + std::to_string(lo) +
                            " hi=" + std::to_string(hi));
    }
  }
  std::string name() const override {
    return "index-range:lo=" + std::to_string(lo_) + ",hi=" + std::to_string(hi_);
  }
  std::string support_kind() const override { return "integers lo..hi, length-independent"; }
  unsigned enumerable_bound() const override { return Instance::kMaxLength; }

  Instance sample(unsigned n, RandomStream& stream) const override {
    if (n == 0) throw DomainError("index-range: unsupported length 0");
    return Instance::from_integer(stream.uniform(lo_, hi_));
  }

  std::vector<WeightedInstance> enumerate(unsigned n) const override {
    if (n == 0) throw DomainError("index-range: unsupported length 0");
    const std::uint64_t count = hi_ - lo_ + 1;
    if (count > kMaxSupport || count == 0) {
      throw ResourceGuardError("index-range: support too large to enumerate; use monte-carlo mode");
    }
    const double p = 1.0 / static_cast<double>(count);
    std::vector<WeightedInstance> out;
    out.reserve(count);
    for (std::uint64_t m = lo_; m <= hi_; ++m) out.push_back({Instance::from_integer(m), p});
    return out;
  }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
};

}  // namespace

EnsemblePtr make_uniform_bits() { return std::make_shared<UniformBits>(); }
EnsemblePtr make_uniform_odd() { return std::make_shared<UniformOdd>(); }
EnsemblePtr make_index_range(std::uint64_t lo, std::uint64_t hi) {
  return std::make_shared<IndexRange>(lo, hi);
}

}  // namespace plaus
