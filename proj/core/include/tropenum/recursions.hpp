#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropenum/rational.hpp"

namespace tropenum {

// Tangency orders to a fixed line L: alpha[i] points of order i + 1 at fixed points of L,
// beta[i] of order i + 1 at free points. Trailing zeros are trimmed so equal profiles
// compare equal.
struct TangencyProfile {
  std::vector<std::int64_t> alpha;
  std::vector<std::int64_t> beta;

  TangencyProfile() = default;
  TangencyProfile(std::vector<std::int64_t> a, std::vector<std::int64_t> b);

  // Linear weight I eps = sum (i+1) eps[i].
  static std::int64_t weight(const std::vector<std::int64_t>& eps);
  // Multiplicative weight I^eps = prod (i+1)^eps[i].
  static BigInt power_weight(const std::vector<std::int64_t>& eps);
  static std::int64_t length(const std::vector<std::int64_t>& eps);

  friend bool operator==(const TangencyProfile&, const TangencyProfile&) = default;
  friend auto operator<=>(const TangencyProfile&, const TangencyProfile&) = default;
};

// Number of rational plane curves of degree d through 3d - 1 general points. Rejects d < 1.
BigInt kontsevich(std::int64_t d);

// N^{d,delta}(alpha, beta): delta-nodal degree d curves with the given tangency to L through
// 3d + g - 1 - I alpha - (I beta - |beta|) general points, g = (d-1)(d-2)/2 - delta.
// Throws InconsistentProfile unless I alpha + I beta = d, InvalidArgument for d < 1 or
// negative entries. memoize = false evaluates the recursion without any cache.
BigInt caporaso_harris(std::int64_t d, std::int64_t delta, const TangencyProfile& profile, bool memoize = true);

// caporaso_harris with alpha = 0 and beta = d points of order 1.
BigInt severi_degree(std::int64_t d, std::int64_t delta);

enum class TableFormat { Tsv, Json };

// Rows (d, N(d)) for d = 1..max_d.
std::string kontsevich_table(std::int64_t max_d, TableFormat format);
// Rows (d, delta, N^{d,delta}) for d = 1..max_d and delta = 0..d(d-1)/2.
std::string severi_table(std::int64_t max_d, TableFormat format);

}  // namespace tropenum
