#include "patricia_lab/prefix_probability.hpp"

#include <cmath>
#include <string>

#include "patricia_lab/bitstring.hpp"
#include "patricia_lab/error.hpp"

namespace patricia_lab {

namespace {

void check_bits(std::string_view v) {
  for (char c : v) require(c == '0' || c == '1', "prefix must consist of '0' and '1'");
}

// P(mu_N string starts with v); v may be empty.
double mu_n_prefix(std::uint64_t n, std::string_view v) {
  const auto support = static_cast<double>(n) * static_cast<double>(n);
  const std::size_t t = v.find('1');
  const auto k = static_cast<double>(v.size());
  if (t == std::string_view::npos) return std::max(0.0, support - k) / support;
  const auto first_one = static_cast<double>(t + 1);
  if (first_one > support) return 0.0;
  // T fixed at t+1, then one fair coin per remaining bit.
  return std::ldexp(1.0 / support, -static_cast<int>(v.size() - (t + 1)));
}

double mixture_prefix(const MixtureLaw& m, std::string_view v) {
  const std::size_t t = v.find('1');
  if (t == std::string_view::npos) return std::ldexp(1.0, -static_cast<int>(v.size()));
  const std::uint64_t g = t + 1;
  return std::ldexp(mu_n_prefix(mixture_inner_n(m, g), v.substr(g)), -static_cast<int>(g));
}

double bernoulli_prefix(double p, std::string_view v) {
  double out = 1.0;
  for (char c : v) out *= c == '1' ? p : 1.0 - p;
  return out;
}

void max_search(const DistributionSpec& spec, std::string& prefix, unsigned k, double& best) {
  const double p = prefix.empty() ? 1.0 : prefix_probability(spec, prefix);
  if (p <= best) return;
  if (prefix.size() == k) {
    best = p;
    return;
  }
  for (char c : {'0', '1'}) {
    prefix.push_back(c);
    max_search(spec, prefix, k, best);
    prefix.pop_back();
  }
}

}  // namespace

double prefix_probability(const DistributionSpec& spec, std::string_view v) {
  require(!v.empty(), "prefix must be nonempty");
  check_bits(v);
  if (auto* b = std::get_if<BernoulliLaw>(&spec.params())) return bernoulli_prefix(b->p, v);
  if (auto* mu = std::get_if<MuNLaw>(&spec.params())) return mu_n_prefix(mu->n, v);
  return mixture_prefix(*spec.mixing(), v);
}

double max_prefix_probability(const DistributionSpec& spec, unsigned k) {
  require(k >= 1, "k must be positive");
  require(k <= kMaxEnumerationDepth, "k too large for enumeration (max 24)");
  std::string prefix;
  prefix.reserve(k);
  double best = 0.0;
  max_search(spec, prefix, k, best);
  return best;
}

std::optional<unsigned> diffuseness_level(const DistributionSpec& spec, double eps, unsigned max_k) {
  require(eps > 0.0, "eps must be positive");
  require(max_k <= kMaxEnumerationDepth, "max_k too large for enumeration (max 24)");
  for (unsigned k = 1; k <= max_k; ++k) {
    if (max_prefix_probability(spec, k) < eps) return k;
  }
  return std::nullopt;
}

double prefix_frequency(const DistributionSpec& spec, std::string_view v, std::uint64_t samples,
                        std::uint64_t seed) {
  require(!v.empty(), "prefix must be nonempty");
  require(samples >= 1, "need at least one sample");
  check_bits(v);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto s = LazyBitString::sample(spec, mix_key({seed, i}), 0);
    bool match = true;
    for (std::size_t j = 0; j < v.size() && match; ++j) match = s.bit_at(j + 1) == (v[j] == '1');
    hits += match;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace patricia_lab
