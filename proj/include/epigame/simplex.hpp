#pragma once

#include <cstddef>
#include <vector>

#include "epigame/rational.hpp"

namespace epigame {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearConstraint {
  std::vector<Rational> coeffs;  // one per variable
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/// maximize objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> values;  // empty unless Optimal
  Rational objective;
};

/// Two-phase primal simplex over exact rationals.  Pivot selection follows
/// Bland's rule (lowest eligible index for both the entering and the leaving
/// variable), which guarantees termination on the degenerate systems that
/// equilibrium constraints produce.
LPSolution maximize(const LinearProgram& program);

}  // namespace epigame
