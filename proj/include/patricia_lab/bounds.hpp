#pragma once

#include <cstdint>

namespace patricia_lab::bounds {

/// A bound value plus whether the inputs sit in the regime where the bound
/// was proven. Out-of-regime values are still computed.
struct FlaggedBound {
  double value;
  bool in_regime;
};

/// P(some k-prefix class holds >= 2*eps*n of n strings) <= 2^k e^{-eps n / 2},
/// valid when every k-prefix has probability < eps. Clamped to 1.
double chernoff_enk(std::uint64_t n, std::uint64_t k, double eps);

/// P(X_n < 2n/alpha_n) <= exp(-n / (2 alpha_n)); in regime for alpha_n >= 8.
FlaggedBound okamoto(std::uint64_t n, double alpha_n);

/// P(H_n <= E[H_n] - t) <= exp(-t^2 / (2n)) for any diffuse law.
double devroye_tail(std::uint64_t n, double t);

/// E[#distinct first-one positions] >= n - n^2 / (2 N^2) under mu_N; the
/// further step to >= n - 1 needs n <= N, reported as in_regime.
FlaggedBound distinct_lower(std::uint64_t n, std::uint64_t support_root);

/// n / alpha_n, the floor on the mean height of the mixture law for all
/// sufficiently large n. Whether n is large enough is the caller's call.
double mixture_height_floor(std::uint64_t n, double alpha_n);

}  // namespace patricia_lab::bounds
