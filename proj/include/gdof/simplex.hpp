#pragma once

// Exact primal simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
// so the origin is a feasible starting vertex. Bland's rule prevents cycling.

#include <vector>

#include "gdof/rational.hpp"

namespace gdof {

struct LpSolution {
    enum class Status { optimal, unbounded };
    Status status = Status::optimal;
    Rational value;
    std::vector<Rational> x;     // primal optimum
    std::vector<Rational> dual;  // one multiplier per constraint row
    int pivots = 0;
};

/// Throws ValidationError when shapes disagree or some b_i < 0.
LpSolution simplex_maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                            const std::vector<Rational>& c);

}  // namespace gdof
