#include "patricia_lab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "patricia_lab/error.hpp"

namespace patricia_lab::bounds {

double chernoff_enk(std::uint64_t n, std::uint64_t k, double eps) {
  require(n >= 1, "chernoff: n must be >= 1");
  require(k >= 1, "chernoff: k must be >= 1");
  require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, "chernoff: eps must lie in (0, 1)");
  const double log_value = static_cast<double>(k) * std::numbers::ln2 - eps * static_cast<double>(n) / 2.0;
  return std::min(1.0, std::exp(log_value));
}

FlaggedBound okamoto(std::uint64_t n, double alpha_n) {
  require(n >= 1, "okamoto: n must be >= 1");
  require(std::isfinite(alpha_n) && alpha_n > 0.0, "okamoto: alpha_n must be positive");
  return {std::exp(-static_cast<double>(n) / (2.0 * alpha_n)), alpha_n >= 8.0};
}

double devroye_tail(std::uint64_t n, double t) {
  require(n >= 1, "devroye: n must be >= 1");
  require(std::isfinite(t) && t >= 0.0, "devroye: t must be >= 0");
  return std::exp(-t * t / (2.0 * static_cast<double>(n)));
}

FlaggedBound distinct_lower(std::uint64_t n, std::uint64_t support_root) {
  require(n >= 1, "distinct: n must be >= 1");
  require(support_root >= 1, "distinct: N must be >= 1");
  const auto nd = static_cast<double>(n);
  const auto big = static_cast<double>(support_root);
  return {nd - nd * nd / (2.0 * big * big), n <= support_root};
}

double mixture_height_floor(std::uint64_t n, double alpha_n) {
  require(n >= 1, "mixture floor: n must be >= 1");
  require(std::isfinite(alpha_n) && alpha_n > 0.0, "mixture floor: alpha_n must be positive");
  return static_cast<double>(n) / alpha_n;
}

}  // namespace patricia_lab::bounds
