#include "epigame/simplex.hpp"

#include "epigame/errors.hpp"

namespace epigame {
namespace {

// Dense tableau in canonical form: every basic variable's column is a unit
// column.  Row layout: columns 0..cols-1 are variables, the last column is
// the right-hand side.  `basis[r]` names the basic variable of row r.
struct Tableau {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> basis;
  std::vector<Rational> objrow;  // reduced costs: z_j - c_j, last entry = objective value
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t j) {
    Rational inv = rows[r][j];
    for (Rational& v : rows[r]) v /= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][j] == 0) continue;
      Rational factor = rows[i][j];
      for (std::size_t k = 0; k <= cols; ++k) rows[i][k] -= factor * rows[r][k];
    }
    if (objrow[j] != 0) {
      Rational factor = objrow[j];
      for (std::size_t k = 0; k <= cols; ++k) objrow[k] -= factor * rows[r][k];
    }
    basis[r] = j;
  }

  void compute_objrow(const std::vector<Rational>& costs) {
    objrow.assign(cols + 1, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) objrow[j] = -costs[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = costs[basis[i]];
      if (cb == 0) continue;
      for (std::size_t k = 0; k <= cols; ++k) objrow[k] += cb * rows[i][k];
    }
  }

  /// Runs primal simplex until optimal or unbounded.  Bland's rule: the
  /// entering variable is the lowest index with negative reduced cost, the
  /// leaving variable the lowest-indexed basic variable among ratio ties.
  /// Columns at or beyond `banned_from` are never entered.
  LPStatus iterate(std::size_t banned_from) {
    while (true) {
      std::size_t entering = cols;
      for (std::size_t j = 0; j < banned_from; ++j) {
        if (objrow[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols) return LPStatus::Optimal;
      std::size_t leaving = rows.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][entering] <= 0) continue;
        Rational ratio = rows[i][cols] / rows[i][entering];
        if (leaving == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == rows.size()) return LPStatus::Unbounded;
      pivot(leaving, entering);
    }
  }
};

}  // namespace

LPSolution maximize(const LinearProgram& program) {
  const std::size_t n = program.variables;
  if (program.objective.size() != n)
    fail(ErrorCode::DimensionMismatch, "simplex: objective length does not match variable count");
  for (const LinearConstraint& c : program.constraints) {
    if (c.coeffs.size() != n)
      fail(ErrorCode::DimensionMismatch, "simplex: constraint length does not match variable count");
  }

  const std::size_t m = program.constraints.size();
  // Column layout: structural | one slack/surplus per inequality | artificials.
  std::size_t n_slack = 0;
  for (const LinearConstraint& c : program.constraints)
    if (c.relation != Relation::Equal) ++n_slack;

  Tableau t;
  t.cols = n + n_slack;  // artificials appended below
  std::vector<std::size_t> artificial_rows;
  std::size_t slack_at = n;
  t.rows.assign(m, {});
  t.basis.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const LinearConstraint& c = program.constraints[i];
    std::vector<Rational> row(t.cols + 1, Rational(0));
    bool flip = c.rhs < 0;  // keep rhs nonnegative so the start is feasible
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? -c.coeffs[j] : c.coeffs[j];
    row[t.cols] = flip ? -c.rhs : c.rhs;
    Relation rel = c.relation;
    if (flip && rel == Relation::LessEq) rel = Relation::GreaterEq;
    else if (flip && rel == Relation::GreaterEq) rel = Relation::LessEq;
    if (rel == Relation::LessEq) {
      row[slack_at] = 1;
      t.basis[i] = slack_at++;
    } else if (rel == Relation::GreaterEq) {
      row[slack_at] = -1;
      ++slack_at;
      artificial_rows.push_back(i);
    } else {
      artificial_rows.push_back(i);
    }
    t.rows[i] = std::move(row);
  }
  // Append artificial columns and make them basic in their rows.
  std::size_t first_artificial = t.cols;
  t.cols += artificial_rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    Rational rhs = t.rows[i].back();
    t.rows[i].pop_back();
    t.rows[i].resize(t.cols, Rational(0));
    t.rows[i].push_back(rhs);
  }
  for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
    std::size_t i = artificial_rows[k];
    t.rows[i][first_artificial + k] = 1;
    t.basis[i] = first_artificial + k;
  }

  LPSolution result;
  if (!artificial_rows.empty()) {
    // Phase 1: maximize -(sum of artificials); feasible iff the optimum is 0.
    std::vector<Rational> phase1(t.cols, Rational(0));
    for (std::size_t j = first_artificial; j < t.cols; ++j) phase1[j] = -1;
    t.compute_objrow(phase1);
    LPStatus status = t.iterate(t.cols);
    if (status != LPStatus::Optimal || t.objrow[t.cols] != 0) {
      result.status = LPStatus::Infeasible;
      return result;
    }
    // Drive any artificial still basic (at value 0) out of the basis, or
    // drop its row when it is redundant.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t enter = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (t.rows[i][j] != 0) {
          enter = j;
          break;
        }
      }
      if (enter < first_artificial) {
        t.pivot(i, enter);
        ++i;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  // Phase 2 over the original objective; artificial columns stay banned.
  std::vector<Rational> costs(t.cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) costs[j] = program.objective[j];
  t.compute_objrow(costs);
  LPStatus status = t.iterate(first_artificial);
  if (status == LPStatus::Unbounded) {
    result.status = LPStatus::Unbounded;
    return result;
  }
  result.status = LPStatus::Optimal;
  result.values.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) result.values[t.basis[i]] = t.rows[i][t.cols];
  }
  result.objective = 0;
  for (std::size_t j = 0; j < n; ++j) result.objective += program.objective[j] * result.values[j];
  return result;
}

}  // namespace epigame
