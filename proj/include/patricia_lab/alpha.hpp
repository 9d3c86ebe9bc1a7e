#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace patricia_lab {

/// A nondecreasing, divergent growth sequence (alpha_n), n >= 1.
///
/// Values are carried in log2 form so that fast families such as 2^(n^eps)
/// stay finite: log2_value() is the primary accessor and value() is derived.
/// Instances are immutable once built; the factories reject anything that is
/// not nondecreasing or not divergent.
class AlphaSpec {
 public:
  enum class Family { power, log_power, exp2_power, table, log2_of };

  /// alpha_n = n^eps, 0 < eps <= 1.
  static AlphaSpec power(double eps);
  /// alpha_n = c * log2(n + 1), c > 0.
  static AlphaSpec log_power(double c);
  /// alpha_n = 2^(n^eps), 0 < eps <= 1.
  static AlphaSpec exp2_power(double eps);
  /// alpha_1..alpha_L from `values`, then `continuation` for n > L. The
  /// continuation is mandatory (a finite table cannot diverge) and must be a
  /// parametric family that does not dip below the last table entry.
  static AlphaSpec table(std::vector<double> values, std::optional<AlphaSpec> continuation);
  /// alpha'_n = max(1, log2 alpha_n).
  static AlphaSpec log2_of(const AlphaSpec& inner);

  Family family() const noexcept { return family_; }
  /// eps for power/exp2_power, c for log_power, 0 otherwise.
  double parameter() const noexcept { return param_; }
  const std::vector<double>& table_values() const noexcept { return values_; }
  /// Table continuation or log2_of argument; null for parametric families.
  const AlphaSpec* nested() const noexcept { return nested_.get(); }

  double log2_value(std::uint64_t n) const;
  double value(std::uint64_t n) const;

  /// Compact, comma-free description, e.g. "power(eps=0.5)".
  std::string describe() const;

 private:
  AlphaSpec(Family family, double param) : family_(family), param_(param) {}

  Family family_;
  double param_ = 0.0;
  std::vector<double> values_;
  std::shared_ptr<const AlphaSpec> nested_;
};

/// Saturation point of a_of(): results are exact below it.
inline constexpr std::uint64_t kAOfSaturation = std::uint64_t{1} << 62;

/// beta_n = max(1, floor(log2 alpha_n) - 2).
std::uint64_t beta_of(const AlphaSpec& alpha, std::uint64_t n);

/// A(k) = max{ m >= 1 : beta_m <= k }, found by exponential then binary
/// search. Returns 0 when beta_1 > k (empty set) and kAOfSaturation when the
/// set reaches that far. Throws if the search observes beta decreasing.
std::uint64_t a_of(const AlphaSpec& alpha, std::uint64_t k);

}  // namespace patricia_lab
