#pragma once

#include <cstdint>
#include <random>

namespace kthprice {

using Engine = std::mt19937_64;

/// Generator for stream `stream` of a seeded family. seed_seq and
/// mt19937_64 are fully specified by the standard, so streams are
/// reproducible across platforms.
inline Engine make_stream(std::uint64_t seed, std::uint64_t stream = 0)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

/// Uniform on [0, 1) from the top 53 bits. std::uniform_real_distribution is
/// not bit-identical across standard libraries, this is.
inline double uniform01(Engine &gen)
{
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace kthprice
