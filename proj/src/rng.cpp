#include "patricia_lab/rng.hpp"

namespace patricia_lab {

__extension__ using u128 = unsigned __int128;

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  // bound == 0 is treated as 2^64.
  if (bound == 0) return (*this)();
  u128 m = static_cast<u128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace patricia_lab
