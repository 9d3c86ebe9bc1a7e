#include "patricia_lab/alpha.hpp"

#include <algorithm>
#include <cmath>

#include "patricia_lab/error.hpp"
#include "patricia_lab/format.hpp"

namespace patricia_lab {

AlphaSpec AlphaSpec::power(double eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps <= 1.0, "power alpha needs 0 < eps <= 1");
  return AlphaSpec(Family::power, eps);
}

AlphaSpec AlphaSpec::log_power(double c) {
  require(std::isfinite(c) && c > 0.0, "log_power alpha needs c > 0");
  return AlphaSpec(Family::log_power, c);
}

AlphaSpec AlphaSpec::exp2_power(double eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps <= 1.0, "exp2_power alpha needs 0 < eps <= 1");
  return AlphaSpec(Family::exp2_power, eps);
}

AlphaSpec AlphaSpec::table(std::vector<double> values, std::optional<AlphaSpec> continuation) {
  require(!values.empty(), "alpha table is empty");
  require(continuation.has_value(),
          "alpha table needs a divergent parametric continuation");
  const Family cf = continuation->family();
  require(cf == Family::power || cf == Family::log_power || cf == Family::exp2_power,
          "alpha table continuation must be a parametric family");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i]) && values[i] > 0.0, "alpha table values must be positive");
    require(i == 0 || values[i] >= values[i - 1], "alpha table must be nondecreasing");
  }
  require(continuation->log2_value(values.size() + 1) >= std::log2(values.back()),
          "alpha table continuation drops below the last table value");
  AlphaSpec out(Family::table, 0.0);
  out.values_ = std::move(values);
  out.nested_ = std::make_shared<const AlphaSpec>(*continuation);
  return out;
}

AlphaSpec AlphaSpec::log2_of(const AlphaSpec& inner) {
  AlphaSpec out(Family::log2_of, 0.0);
  out.nested_ = std::make_shared<const AlphaSpec>(inner);
  return out;
}

double AlphaSpec::log2_value(std::uint64_t n) const {
  require(n >= 1, "alpha is indexed from 1");
  const double x = static_cast<double>(n);
  switch (family_) {
    case Family::power:
      return param_ * std::log2(x);
    case Family::log_power:
      return std::log2(param_ * std::log2(x + 1.0));
    case Family::exp2_power:
      return std::pow(x, param_);
    case Family::table:
      if (n <= values_.size()) return std::log2(values_[n - 1]);
      return nested_->log2_value(n);
    case Family::log2_of:
      return std::log2(std::max(1.0, nested_->log2_value(n)));
  }
  fail(ErrorCode::internal, "unknown alpha family");
}

double AlphaSpec::value(std::uint64_t n) const { return std::exp2(log2_value(n)); }

std::string AlphaSpec::describe() const {
  switch (family_) {
    case Family::power:
      return "power(eps=" + format_double(param_) + ")";
    case Family::log_power:
      return "log_power(c=" + format_double(param_) + ")";
    case Family::exp2_power:
      return "exp2_power(eps=" + format_double(param_) + ")";
    case Family::table: {
      std::string s = "table(";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ' ';
        s += format_double(values_[i]);
      }
      return s + ";then=" + nested_->describe() + ")";
    }
    case Family::log2_of:
      return "log2(" + nested_->describe() + ")";
  }
  return "?";
}

std::uint64_t beta_of(const AlphaSpec& alpha, std::uint64_t n) {
  const double fl = std::floor(alpha.log2_value(n));
  if (!(fl - 2.0 >= 1.0)) return 1;  // also catches NaN and -inf
  if (fl - 2.0 >= static_cast<double>(kAOfSaturation)) return kAOfSaturation;
  return static_cast<std::uint64_t>(fl) - 2;
}

std::uint64_t a_of(const AlphaSpec& alpha, std::uint64_t k) {
  if (beta_of(alpha, 1) > k) return 0;
  // Invariant: beta(lo) <= k.
  std::uint64_t lo = 1;
  std::uint64_t beta_lo = beta_of(alpha, 1);
  std::uint64_t hi = 2;
  std::uint64_t beta_hi = 0;
  for (;;) {
    beta_hi = beta_of(alpha, hi);
    if (beta_hi < beta_lo) fail(ErrorCode::invalid_argument, "alpha is not monotone (beta decreased)");
    if (beta_hi > k) break;
    lo = hi;
    beta_lo = beta_hi;
    if (hi == kAOfSaturation) return kAOfSaturation;
    hi = std::min(hi * 2, kAOfSaturation);
  }
  // Invariant: beta(lo) <= k < beta(hi).
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const std::uint64_t b = beta_of(alpha, mid);
    if (b < beta_lo || b > beta_hi) fail(ErrorCode::invalid_argument, "alpha is not monotone (beta out of order)");
    if (b <= k) {
      lo = mid;
      beta_lo = b;
    } else {
      hi = mid;
      beta_hi = b;
    }
  }
  return lo;
}

}  // namespace patricia_lab
