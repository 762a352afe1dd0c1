#pragma once

// Maximum-weight perfect assignment (Hungarian algorithm, exact arithmetic).

#include <cstdint>
#include <vector>

#include "gdof/rational.hpp"

namespace gdof {

/// Row-major n x n weights. Returns perm with perm[row] = column of a
/// maximum-weight assignment. With `lexicographic`, the result is the
/// lexicographically smallest perm among all optima.
/// T is std::int64_t or Rational; integer weights must stay well inside the
/// int64 range (|w| * n < 2^62).
template <typename T>
std::vector<int> max_assignment(const std::vector<T>& w, int n, bool lexicographic);

extern template std::vector<int> max_assignment<std::int64_t>(const std::vector<std::int64_t>&, int, bool);
extern template std::vector<int> max_assignment<Rational>(const std::vector<Rational>&, int, bool);

/// Rational front end: runs on scaled integers when the common denominator
/// allows it and on exact rationals otherwise.
std::vector<int> max_assignment(const std::vector<std::vector<Rational>>& w, bool lexicographic = true);

}  // namespace gdof
