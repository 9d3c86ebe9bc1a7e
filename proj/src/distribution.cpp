#include "patricia_lab/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "patricia_lab/error.hpp"
#include "patricia_lab/format.hpp"

namespace patricia_lab {

namespace {

MixtureLaw make_mixture(const AlphaSpec& alpha, std::uint64_t a_cap) {
  require(a_cap >= 2, "a_cap must be at least 2");
  require(a_cap <= kMaxSupportRoot, "a_cap must be at most 2^31");
  MixtureLaw m{alpha, a_cap, {}};
  m.inner_n[0] = 0;
  for (std::uint64_t g = 1; g <= kMaxGeometricDraws; ++g) {
    m.inner_n[g] = std::clamp<std::uint64_t>(a_of(alpha, g), 1, a_cap);
  }
  return m;
}

// Rejects sequences whose logarithm stays bounded over the a_of search range.
void require_log_divergent(const AlphaSpec& alpha) {
  const AlphaSpec transformed = AlphaSpec::log2_of(alpha);
  require(transformed.log2_value(kAOfSaturation) > transformed.log2_value(1),
          "nu needs log(alpha_n) to diverge");
}

}  // namespace

DistributionSpec DistributionSpec::bernoulli(double p) {
  require(std::isfinite(p) && p > 0.0 && p < 1.0, "bernoulli needs 0 < p < 1");
  return DistributionSpec(BernoulliLaw{p});
}

DistributionSpec DistributionSpec::mu_n(std::uint64_t n) {
  require(n >= 1, "mu_n needs N >= 1");
  require(n <= kMaxSupportRoot, "mu_n needs N <= 2^31");
  return DistributionSpec(MuNLaw{n});
}

DistributionSpec DistributionSpec::mixture(const AlphaSpec& alpha, std::uint64_t a_cap) {
  return DistributionSpec(make_mixture(alpha, a_cap));
}

DistributionSpec DistributionSpec::nu(const AlphaSpec& alpha, std::uint64_t a_cap) {
  require_log_divergent(alpha);
  return DistributionSpec(NuLaw{alpha, make_mixture(AlphaSpec::log2_of(alpha), a_cap)});
}

DistributionSpec nu_spec(const AlphaSpec& alpha, std::uint64_t a_cap) {
  require_log_divergent(alpha);
  return DistributionSpec::mixture(AlphaSpec::log2_of(alpha), a_cap);
}

const MixtureLaw* DistributionSpec::mixing() const noexcept {
  if (auto* m = std::get_if<MixtureLaw>(params_.get())) return m;
  if (auto* nu = std::get_if<NuLaw>(params_.get())) return &nu->mixture;
  return nullptr;
}

std::string DistributionSpec::name() const {
  switch (law()) {
    case Law::bernoulli: return "bernoulli";
    case Law::mu_n: return "mu_n";
    case Law::mixture: return "mixture";
    case Law::nu: return "nu";
  }
  return "?";
}

std::string DistributionSpec::params_string() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BernoulliLaw>) {
          return "p=" + format_double(p.p);
        } else if constexpr (std::is_same_v<T, MuNLaw>) {
          return "N=" + std::to_string(p.n);
        } else if constexpr (std::is_same_v<T, MixtureLaw>) {
          return "alpha=" + p.alpha.describe() + ";a_cap=" + std::to_string(p.a_cap);
        } else {
          return "alpha=" + p.alpha.describe() + ";a_cap=" + std::to_string(p.mixture.a_cap);
        }
      },
      *params_);
}

std::uint64_t mixture_inner_n(const MixtureLaw& m, std::uint64_t g) {
  require(g >= 1, "geometric index starts at 1");
  if (g <= kMaxGeometricDraws) return m.inner_n[g];
  return std::clamp<std::uint64_t>(a_of(m.alpha, g), 1, m.a_cap);
}

}  // namespace patricia_lab
