#pragma once

#include <cstdint>
#include <random>

namespace bsps {

using Rng = std::mt19937_64;

/// Seed used by the command-line tool when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20130917;

/// Independent, reproducible substream `stream` of the master `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Uniform draw on the open interval (0, 1).
double uniform_open(Rng& rng);

/// Standard normal draw by inversion.
double standard_normal(Rng& rng);

}  // namespace bsps
