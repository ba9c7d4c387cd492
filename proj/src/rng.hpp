#pragma once

#include <random>

#include "common.hpp"

namespace ik {

// Every randomized suite draws from its own stream: generator seeded with
// (config seed xor suite index), so adding a suite never perturbs another
// suite's draws and identical configs reproduce byte-identical reports.
inline std::mt19937_64 suite_stream(std::uint64_t seed,
                                    std::uint64_t suite_index) {
  return std::mt19937_64(seed ^ suite_index);
}

inline double uniform_real(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Cplx uniform_complex(std::mt19937_64& g, double box = 1.0) {
  const double re = uniform_real(g, -box, box);
  const double im = uniform_real(g, -box, box);
  return Cplx{re, im};
}

}  // namespace ik
