#include "bsps/random.hpp"

#include "bsps/normal.hpp"

namespace bsps {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

double uniform_open(Rng& rng) {
  // 53 random bits mapped to the midpoints of a 2^-53 grid.
  const std::uint64_t bits = rng() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double standard_normal(Rng& rng) { return normal::quantile(uniform_open(rng)); }

}  // namespace bsps
