#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "railflow/formulation.hpp"

namespace railflow {

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

std::string_view to_string(SolveStatus status);

struct Tolerances {
  double feasibility = 1e-7;
  double integrality = 1e-6;
  double relative_gap = 1e-6;
  /// Reduced-cost threshold for optimality and for locking columns before
  /// the tie-break pass.
  double optimality = 1e-9;
  long max_iterations = 2'000'000;
  long max_nodes = 100'000;
};

struct LpRow {
  std::vector<Term> terms;
  Relation relation = Relation::equal;
  double rhs = 0.0;
};

/// Column-for-column image of a model: column j is model variable j. Lower
/// bounds may be -inf only for free columns; upper bounds may be +inf.
struct StandardFormLP {
  std::vector<double> objective;
  /// Optional secondary objective minimized over the primary optimal face.
  std::vector<double> tiebreak;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer;
  std::vector<LpRow> rows;

  int column_count() const { return static_cast<int>(objective.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }
};

StandardFormLP to_standard_form(const TimeExpandedModel& model);

struct SolveStats {
  long iterations = 0;
  long nodes = 0;
  int presolved_rows = 0;
  int presolved_columns = 0;
  /// Objective of each new incumbent, in the order found.
  std::vector<double> incumbents;
  /// Best bound on the optimum; equals the objective when solved to optimality.
  double best_bound = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> activities;  // per row, at `values`
  /// Lagrangian bound from the final basis of the LP (or of the last LP in
  /// branch-and-bound); compare with `objective` for the duality gap.
  double dual_bound = 0.0;
  SolveStats stats;
};

/// Bounded primal simplex on a dense tableau. Integer marks are ignored.
SolveResult solve_lp(const StandardFormLP& lp, const Tolerances& tol = {});

/// Best-first branch-and-bound over the integer columns.
SolveResult solve_mip(const StandardFormLP& lp, const Tolerances& tol = {});

/// Solves the model; with relaxed integrality this is solve_lp.
SolveResult solve_mip(const TimeExpandedModel& model, const Tolerances& tol = {});

/// Free-format MPS: ROWS, COLUMNS (with integer markers), RHS and BOUNDS,
/// numbers printed with 12 significant digits. Byte-stable for equal models.
std::string export_model_text(const TimeExpandedModel& model);

}  // namespace railflow
