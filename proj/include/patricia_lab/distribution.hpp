#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "patricia_lab/alpha.hpp"

namespace patricia_lab {

enum class Law { bernoulli, mu_n, mixture, nu };

inline constexpr std::uint64_t kDefaultACap = std::uint64_t{1} << 20;
/// mu_N draws T from {1..N^2}; N is capped so that N^2 fits in 64 bits.
inline constexpr std::uint64_t kMaxSupportRoot = std::uint64_t{1} << 31;
/// G is read off one 64-bit word of fair coins.
inline constexpr unsigned kMaxGeometricDraws = 64;

/// Independent bits, P(bit = 1) = p.
struct BernoulliLaw {
  double p;
};

/// First one at T ~ Uniform{1..N^2}, zeros before it, fair coins after.
struct MuNLaw {
  std::uint64_t n;
};

/// First one at G ~ Geometric(1/2), then a mu_{inner(G)} string, where
/// inner(G) = max(1, min(A(G), a_cap)) and A is the generalized inverse of beta
/// for `alpha`. `inner_n[g]` caches inner(g) for g = 1..64.
struct MixtureLaw {
  AlphaSpec alpha;
  std::uint64_t a_cap;
  std::array<std::uint64_t, kMaxGeometricDraws + 1> inner_n;
};

/// The mixture over alpha'_n = max(1, log2 alpha_n); `alpha` is the sequence
/// the caller asked to beat, `mixture` is what actually gets sampled.
struct NuLaw {
  AlphaSpec alpha;
  MixtureLaw mixture;
};

/// Immutable description of one diffuse string law. Cheap to copy.
class DistributionSpec {
 public:
  using Params = std::variant<BernoulliLaw, MuNLaw, MixtureLaw, NuLaw>;

  static DistributionSpec bernoulli(double p);
  static DistributionSpec mu_n(std::uint64_t n);
  static DistributionSpec mixture(const AlphaSpec& alpha, std::uint64_t a_cap = kDefaultACap);
  static DistributionSpec nu(const AlphaSpec& alpha, std::uint64_t a_cap = kDefaultACap);

  Law law() const noexcept { return static_cast<Law>(params_->index()); }
  const Params& params() const noexcept { return *params_; }

  /// The mixture actually sampled for mixture and nu laws; null otherwise.
  const MixtureLaw* mixing() const noexcept;

  /// "bernoulli", "mu_n", "mixture", "nu".
  std::string name() const;
  /// Comma-free parameter string for CSV cells, e.g. "N=1000".
  std::string params_string() const;

 private:
  explicit DistributionSpec(Params p) : params_(std::make_shared<const Params>(std::move(p))) {}
  std::shared_ptr<const Params> params_;
};

/// The mixture a nu law samples from: BadMixture over log2 alpha.
DistributionSpec nu_spec(const AlphaSpec& alpha, std::uint64_t a_cap = kDefaultACap);

/// inner(g) for a mixture; g beyond the cached range is computed on demand.
std::uint64_t mixture_inner_n(const MixtureLaw& m, std::uint64_t g);

}  // namespace patricia_lab
