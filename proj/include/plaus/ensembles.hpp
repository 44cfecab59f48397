#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "plaus/instance.hpp"
#include "plaus/random_stream.hpp"

namespace plaus {

struct WeightedInstance {
  Instance instance;
  double probability = 0.0;
};

// A per-length input distribution D_n with a seeded sampler and, for small n,
// an exact enumeration of its support.
class Ensemble {
 public:
  virtual ~Ensemble() = default;

  virtual std::string name() const = 0;
  // Human-readable description of the per-length support.
  virtual std::string support_kind() const = 0;
  virtual unsigned enumerable_bound() const = 0;

  // Throws DomainError for lengths the ensemble does not support.
  virtual Instance sample(unsigned n, RandomStream& stream) const = 0;
  // Complete support with exact probabilities. Throws ResourceGuardError
  // above enumerable_bound().
  virtual std::vector<WeightedInstance> enumerate(unsigned n) const = 0;
};

using EnsemblePtr = std::shared_ptr<const Ensemble>;

// Uniform over {0,1}^n.
EnsemblePtr make_uniform_bits();
// Uniform over odd n-bit integers with the top bit set (n >= 2).
EnsemblePtr make_uniform_odd();
// Uniform over the integers lo..hi, encoded canonically. The length argument
// is ignored: the whole family is one length class.
EnsemblePtr make_index_range(std::uint64_t lo, std::uint64_t hi);

}  // namespace plaus
