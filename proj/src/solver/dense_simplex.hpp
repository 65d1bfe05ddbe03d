#pragma once

#include <vector>

#include "railflow/kernels.hpp"
#include "railflow/solver.hpp"

namespace railflow::detail {

/// LP after presolve, rows in compressed sparse form.
struct ReducedLp {
  int n = 0;
  int m = 0;
  std::vector<double> cost;
  std::vector<double> tiebreak;  // empty when absent
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<char> integer;
  std::vector<int> row_start{0};
  std::vector<int> col;
  std::vector<double> val;
  std::vector<Relation> relation;
  std::vector<double> rhs;
};

/// Drops columns fixed by their bounds and turns singleton rows into bounds,
/// repeatedly. Integer columns are kept even when fixed.
struct Presolved {
  ReducedLp lp;
  std::vector<int> kept;            // reduced column -> original column
  std::vector<double> fixed_value;  // per original column, used when eliminated
  std::vector<char> eliminated;
  double offset = 0.0;
  bool infeasible = false;
};

Presolved presolve(const StandardFormLP& lp, double feasibility);

/// Original-column values from reduced-column values.
std::vector<double> expand(const Presolved& p, const std::vector<double>& reduced);

/// Bounded-variable simplex over the dense tableau B^-1 [A | I]. Slack s_i
/// of row i satisfies a_i x + s_i = b_i, with s_i >= 0 for <=, s_i <= 0 for
/// >= and s_i = 0 for = rows.
class DenseSimplex {
 public:
  DenseSimplex(const ReducedLp& lp, const Tolerances& tol, const kernels::KernelTable& k);

  /// Two-phase primal simplex from the slack basis, primary costs.
  SolveStatus solve();
  /// Re-optimizes after bound changes through the dual simplex, keeping the
  /// current basis. Falls back to solve() when the basis is unusable.
  SolveStatus resolve();
  /// Locks columns whose reduced cost is nonzero at the current optimum and
  /// minimizes the secondary cost over what remains.
  SolveStatus minimize_tiebreak();

  void set_bounds(int column, double lower, double upper);
  double lower(int column) const { return lb_[static_cast<std::size_t>(column)]; }
  double upper(int column) const { return ub_[static_cast<std::size_t>(column)]; }

  std::vector<double> primal() const;
  double objective() const;
  /// Lagrangian lower bound for the primary objective from the current basis.
  double dual_bound() const;
  long iterations() const { return iterations_; }

 private:
  enum : int { kAtLower = -1, kAtUpper = -2, kFreeZero = -3 };

  double* row(int i) { return tableau_.data() + static_cast<std::size_t>(i) * stride_; }
  const double* row(int i) const { return tableau_.data() + static_cast<std::size_t>(i) * stride_; }
  double& at(int i, int j) { return tableau_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)]; }
  double at(int i, int j) const { return tableau_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)]; }

  bool is_artificial(int v) const { return v >= cols_; }
  bool basic(int v) const { return where_[static_cast<std::size_t>(v)] >= 0; }

  void reset_bounds_from_lp();
  void build_slack_basis();
  void compute_reduced_costs(const std::vector<double>& cost);
  SolveStatus primal_loop(double cost_scale);
  SolveStatus dual_loop();
  double primal_infeasibility() const;
  bool row_proves_infeasible(int r) const;
  void pivot(int r, int q);
  void move_nonbasic(int v, double value);
  void drive_out_artificials();
  void refine();
  void place_nonbasic(int v);
  bool dual_feasible() const;
  double cost_scale(const std::vector<double>& cost) const;

  const ReducedLp& lp_;
  Tolerances tol_;
  const kernels::KernelTable& k_;
  int n_ = 0;     // structural columns
  int m_ = 0;     // rows
  int cols_ = 0;  // n + m tableau columns
  std::size_t stride_ = 0;

  std::vector<double> tableau_;
  std::vector<double> d_;       // reduced costs over tableau columns
  std::vector<double> cost_;    // current phase cost over tableau columns
  std::vector<double> primary_;  // primary cost over tableau columns
  std::vector<double> lb_, ub_, x_;  // over n + m + m (artificials last)
  std::vector<int> where_;           // basic row, or kAt* for nonbasic
  std::vector<int> basis_;
  std::vector<int> nz_idx_;      // pivot row pattern, scratch
  std::vector<double> nz_val_;
  std::vector<double> sigma_;        // artificial sign per row, 0 when none
  long iterations_ = 0;
  bool has_basis_ = false;
  int infeasible_row_ = -1;
};

}  // namespace railflow::detail
