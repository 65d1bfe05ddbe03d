#include "dense_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace railflow::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-12;
constexpr double kSnap = 1e-11;
constexpr int kDegenerateRun = 50;
constexpr long kRefreshEvery = 100;

bool violated(Relation rel, double activity, double rhs, double tol) {
  switch (rel) {
    case Relation::less_equal: return activity > rhs + tol;
    case Relation::greater_equal: return activity < rhs - tol;
    case Relation::equal: return std::abs(activity - rhs) > tol;
  }
  return false;
}

}  // namespace

Presolved presolve(const StandardFormLP& lp, double feasibility) {
  Presolved p;
  const int n = lp.column_count();
  std::vector<double> lo = lp.lower;
  std::vector<double> hi = lp.upper;
  for (int j = 0; j < n; ++j) {
    if (lp.integer[static_cast<std::size_t>(j)]) {
      lo[j] = std::ceil(lo[j] - 1e-9);
      hi[j] = std::floor(hi[j] + 1e-9);
    }
    if (lo[j] > hi[j]) p.infeasible = true;
  }

  auto removable = [&](int j) { return !lp.integer[static_cast<std::size_t>(j)] && lo[j] == hi[j]; };
  std::vector<char> active(lp.rows.size(), 1);

  bool changed = true;
  while (changed && !p.infeasible) {
    changed = false;
    for (std::size_t i = 0; i < lp.rows.size() && !p.infeasible; ++i) {
      if (!active[i]) continue;
      const LpRow& row = lp.rows[i];
      double rhs = row.rhs;
      int count = 0;
      int last = -1;
      double coef = 0.0;
      for (const Term& t : row.terms) {
        if (removable(t.column)) {
          rhs -= t.coefficient * lo[t.column];
        } else {
          ++count;
          last = t.column;
          coef = t.coefficient;
        }
      }
      if (count > 1) continue;
      active[i] = 0;
      changed = true;
      if (count == 0) {
        if (violated(row.relation, 0.0, rhs, feasibility)) p.infeasible = true;
        continue;
      }
      const double v = rhs / coef;
      const bool caps_above = row.relation == Relation::equal ||
                              (row.relation == Relation::less_equal) == (coef > 0.0);
      const bool caps_below = row.relation == Relation::equal ||
                              (row.relation == Relation::greater_equal) == (coef > 0.0);
      const bool integral = lp.integer[static_cast<std::size_t>(last)];
      if (caps_above) hi[last] = std::min(hi[last], integral ? std::floor(v + 1e-9) : v);
      if (caps_below) lo[last] = std::max(lo[last], integral ? std::ceil(v - 1e-9) : v);
      if (lo[last] > hi[last]) {
        if (lo[last] - hi[last] > feasibility || integral) p.infeasible = true;
        else hi[last] = lo[last];
      }
    }
  }

  p.fixed_value.assign(static_cast<std::size_t>(n), 0.0);
  p.eliminated.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> reduced_of(static_cast<std::size_t>(n), -1);
  ReducedLp& r = p.lp;
  const bool with_tiebreak = !lp.tiebreak.empty();
  for (int j = 0; j < n; ++j) {
    if (removable(j)) {
      p.eliminated[j] = 1;
      p.fixed_value[j] = lo[j];
      p.offset += lp.objective[j] * lo[j];
      continue;
    }
    reduced_of[j] = static_cast<int>(p.kept.size());
    p.kept.push_back(j);
    r.cost.push_back(lp.objective[j]);
    if (with_tiebreak) r.tiebreak.push_back(lp.tiebreak[j]);
    r.lower.push_back(lo[j]);
    r.upper.push_back(hi[j]);
    r.integer.push_back(lp.integer[static_cast<std::size_t>(j)] ? 1 : 0);
  }
  r.n = static_cast<int>(p.kept.size());
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (!active[i]) continue;
    double rhs = lp.rows[i].rhs;
    for (const Term& t : lp.rows[i].terms) {
      if (p.eliminated[t.column]) {
        rhs -= t.coefficient * p.fixed_value[t.column];
      } else {
        r.col.push_back(reduced_of[t.column]);
        r.val.push_back(t.coefficient);
      }
    }
    r.row_start.push_back(static_cast<int>(r.col.size()));
    r.relation.push_back(lp.rows[i].relation);
    r.rhs.push_back(rhs);
  }
  r.m = static_cast<int>(r.relation.size());
  return p;
}

std::vector<double> expand(const Presolved& p, const std::vector<double>& reduced) {
  std::vector<double> out = p.fixed_value;
  for (std::size_t k = 0; k < p.kept.size(); ++k) out[static_cast<std::size_t>(p.kept[k])] = reduced[k];
  return out;
}

DenseSimplex::DenseSimplex(const ReducedLp& lp, const Tolerances& tol, const kernels::KernelTable& k)
    : lp_(lp), tol_(tol), k_(k), n_(lp.n), m_(lp.m), cols_(lp.n + lp.m) {
  stride_ = (static_cast<std::size_t>(cols_) + 3) & ~static_cast<std::size_t>(3);
  const auto total = static_cast<std::size_t>(cols_ + m_);
  lb_.assign(total, 0.0);
  ub_.assign(total, kInf);
  x_.assign(total, 0.0);
  primary_.assign(total, 0.0);
  std::copy(lp.cost.begin(), lp.cost.end(), primary_.begin());
  reset_bounds_from_lp();
}

void DenseSimplex::reset_bounds_from_lp() {
  for (int j = 0; j < n_; ++j) {
    lb_[j] = lp_.lower[j];
    ub_[j] = lp_.upper[j];
  }
  for (int i = 0; i < m_; ++i) {
    const auto s = static_cast<std::size_t>(n_ + i);
    switch (lp_.relation[i]) {
      case Relation::less_equal: lb_[s] = 0.0; ub_[s] = kInf; break;
      case Relation::greater_equal: lb_[s] = -kInf; ub_[s] = 0.0; break;
      case Relation::equal: lb_[s] = 0.0; ub_[s] = 0.0; break;
    }
  }
}

void DenseSimplex::set_bounds(int column, double lower, double upper) {
  lb_[static_cast<std::size_t>(column)] = lower;
  ub_[static_cast<std::size_t>(column)] = upper;
}

double DenseSimplex::cost_scale(const std::vector<double>& cost) const {
  double s = 1.0;
  for (int j = 0; j < cols_; ++j) s = std::max(s, std::abs(cost[j]));
  return s;
}

void DenseSimplex::build_slack_basis() {
  tableau_.assign(static_cast<std::size_t>(m_) * stride_, 0.0);
  d_.assign(stride_, 0.0);
  where_.assign(static_cast<std::size_t>(cols_ + m_), kAtLower);
  basis_.assign(static_cast<std::size_t>(m_), -1);
  sigma_.assign(static_cast<std::size_t>(m_), 0.0);

  for (int j = 0; j < n_; ++j) {
    if (lb_[j] > -kInf) {
      x_[j] = lb_[j];
    } else if (ub_[j] < kInf) {
      x_[j] = ub_[j];
      where_[j] = kAtUpper;
    } else {
      x_[j] = 0.0;
      where_[j] = kFreeZero;
    }
  }
  for (int i = 0; i < m_; ++i) {
    const auto a = static_cast<std::size_t>(cols_ + i);
    lb_[a] = 0.0;
    ub_[a] = kInf;
    x_[a] = 0.0;
  }

  for (int i = 0; i < m_; ++i) {
    double r = lp_.rhs[i];
    for (int e = lp_.row_start[i]; e < lp_.row_start[i + 1]; ++e) r -= lp_.val[e] * x_[lp_.col[e]];
    const int s = n_ + i;
    double* t = row(i);
    if (r >= lb_[s] && r <= ub_[s]) {
      basis_[i] = s;
      where_[s] = i;
      x_[s] = r;
      for (int e = lp_.row_start[i]; e < lp_.row_start[i + 1]; ++e) t[lp_.col[e]] = lp_.val[e];
      t[s] = 1.0;
      continue;
    }
    // Slack parked at its violated bound; an artificial absorbs the rest.
    x_[s] = 0.0;
    where_[s] = (lp_.relation[i] == Relation::greater_equal) ? kAtUpper : kAtLower;
    const double sg = r > 0.0 ? 1.0 : -1.0;
    sigma_[i] = sg;
    const int a = cols_ + i;
    basis_[i] = a;
    where_[a] = i;
    x_[a] = std::abs(r);
    for (int e = lp_.row_start[i]; e < lp_.row_start[i + 1]; ++e) t[lp_.col[e]] = sg * lp_.val[e];
    t[s] = sg;
  }
  has_basis_ = true;
}

void DenseSimplex::compute_reduced_costs(const std::vector<double>& cost) {
  std::fill(d_.begin(), d_.end(), 0.0);
  std::copy(cost.begin(), cost.begin() + cols_, d_.begin());
  for (int k = 0; k < m_; ++k) {
    const double cb = cost[static_cast<std::size_t>(basis_[k])];
    if (cb != 0.0) k_.axpy_flush(d_.data(), cb, row(k), static_cast<std::size_t>(cols_), 0.0);
  }
  for (int k = 0; k < m_; ++k)
    if (basis_[k] < cols_) d_[static_cast<std::size_t>(basis_[k])] = 0.0;
}

void DenseSimplex::pivot(int r, int q) {
  double* pr = row(r);
  const double piv = pr[q];
  k_.divide(pr, piv, static_cast<std::size_t>(cols_));
  pr[q] = 1.0;
  // Sparse pivot rows touch only their nonzeros.
  nz_idx_.clear();
  nz_val_.clear();
  for (int j = 0; j < cols_; ++j)
    if (pr[j] != 0.0) {
      nz_idx_.push_back(j);
      nz_val_.push_back(pr[j]);
    }
  const bool sparse = nz_idx_.size() * 3 < static_cast<std::size_t>(cols_);
  auto update = [&](double* y, double f, double eps) {
    if (sparse) k_.axpy_indexed_flush(y, f, nz_val_.data(), nz_idx_.data(), nz_idx_.size(), eps);
    else k_.axpy_flush(y, f, pr, static_cast<std::size_t>(cols_), eps);
  };
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* ri = row(i);
    const double f = ri[q];
    if (f == 0.0) continue;
    update(ri, f, kDropTol);
    ri[q] = 0.0;
  }
  const double f = d_[static_cast<std::size_t>(q)];
  if (f != 0.0) update(d_.data(), f, 0.0);
  d_[static_cast<std::size_t>(q)] = 0.0;
  basis_[r] = q;
  where_[static_cast<std::size_t>(q)] = r;
}

void DenseSimplex::move_nonbasic(int v, double value) {
  const double delta = value - x_[v];
  if (delta != 0.0)
    for (int i = 0; i < m_; ++i) {
      const double a = at(i, v);
      if (a != 0.0) x_[static_cast<std::size_t>(basis_[i])] -= a * delta;
    }
  x_[v] = value;
}

SolveStatus DenseSimplex::primal_loop(double scale) {
  const double thr = tol_.optimality * scale;
  const double ftol = tol_.feasibility;
  int degenerate = 0;
  for (;;) {
    if (iterations_ >= tol_.max_iterations) return SolveStatus::iteration_limit;
    if (iterations_ > 0 && iterations_ % kRefreshEvery == 0) compute_reduced_costs(cost_);
    const bool bland = degenerate >= kDegenerateRun;

    int q = -1;
    double best = 0.0;
    for (int v = 0; v < cols_; ++v) {
      const int w = where_[v];
      if (w >= 0 || lb_[v] == ub_[v]) continue;
      const double dv = d_[v];
      double score = 0.0;
      if (w == kAtLower) score = -dv;
      else if (w == kAtUpper) score = dv;
      else score = std::abs(dv);
      if (score <= thr) continue;
      if (bland) {
        q = v;
        break;
      }
      if (score > best) {
        best = score;
        q = v;
      }
    }
    if (q < 0) return SolveStatus::optimal;
    const double dir = d_[q] < 0.0 ? 1.0 : -1.0;

    // Harris ratio test: pass one bounds the step with relaxed bounds, pass
    // two takes the largest pivot among rows blocking within that step.
    auto exact_ratio = [&](int i, double rate) {
      const int b = basis_[i];
      const double t = rate < 0.0 ? (x_[b] - lb_[b]) / -rate : (ub_[b] - x_[b]) / rate;
      return std::max(t, 0.0);
    };
    double theta1 = kInf;
    double tmin = kInf;
    for (int i = 0; i < m_; ++i) {
      const double a = at(i, q);
      if (std::abs(a) <= kPivotTol) continue;
      const int b = basis_[i];
      const double rate = -dir * a;
      if (rate < 0.0 ? lb_[b] == -kInf : ub_[b] == kInf) continue;
      const double t = rate < 0.0 ? (x_[b] - lb_[b] + ftol) / -rate : (ub_[b] - x_[b] + ftol) / rate;
      theta1 = std::min(theta1, std::max(t, 0.0));
      tmin = std::min(tmin, exact_ratio(i, rate));
    }
    const double range = (lb_[q] > -kInf && ub_[q] < kInf) ? ub_[q] - lb_[q] : kInf;
    if (theta1 == kInf && range == kInf) return SolveStatus::unbounded;

    ++iterations_;
    if (range <= (bland ? tmin : theta1)) {
      move_nonbasic(q, dir > 0.0 ? ub_[q] : lb_[q]);
      where_[q] = dir > 0.0 ? kAtUpper : kAtLower;
      degenerate = 0;
      continue;
    }

    int r = -1;
    double pick = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = at(i, q);
      if (std::abs(a) <= kPivotTol) continue;
      const int b = basis_[i];
      const double rate = -dir * a;
      if (rate < 0.0 ? lb_[b] == -kInf : ub_[b] == kInf) continue;
      const double t = exact_ratio(i, rate);
      if (bland) {
        if (t <= tmin + 1e-12 && (r < 0 || b < basis_[r])) r = i;
      } else if (t <= theta1 && std::abs(a) > pick) {
        pick = std::abs(a);
        r = i;
      }
    }
    if (r < 0) {
      // Basics sitting outside their bounds can leave no row inside the
      // relaxed step; take the tightest exact ratio instead.
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, q);
        if (std::abs(a) <= kPivotTol) continue;
        const int b = basis_[i];
        const double rate = -dir * a;
        if (rate < 0.0 ? lb_[b] == -kInf : ub_[b] == kInf) continue;
        if (exact_ratio(i, rate) <= tmin && (r < 0 || std::abs(a) > std::abs(at(r, q)))) r = i;
      }
    }
    const double rate = -dir * at(r, q);
    const double theta = exact_ratio(r, rate);
    const int leaving = basis_[r];
    const double target = rate < 0.0 ? lb_[leaving] : ub_[leaving];

    if (theta != 0.0) {
      x_[q] += dir * theta;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, q);
        if (a != 0.0) x_[static_cast<std::size_t>(basis_[i])] -= dir * theta * a;
      }
    }
    x_[leaving] = target;
    where_[leaving] = rate < 0.0 ? kAtLower : kAtUpper;
    pivot(r, q);
    degenerate = theta < 1e-12 ? degenerate + 1 : 0;
  }
}

void DenseSimplex::drive_out_artificials() {
  for (int r = 0; r < m_; ++r) {
    const int a = basis_[r];
    if (!is_artificial(a)) continue;
    int q = -1;
    double best = 1e-7;
    for (int v = 0; v < cols_; ++v) {
      if (where_[v] >= 0) continue;
      const double e = std::abs(at(r, v));
      if (e > best) {
        best = e;
        q = v;
      }
    }
    if (q < 0) continue;  // redundant row; the artificial stays basic at zero
    const double delta = x_[a] / at(r, q);
    x_[q] += delta;
    for (int i = 0; i < m_; ++i) {
      const double e = at(i, q);
      if (e != 0.0) x_[static_cast<std::size_t>(basis_[i])] -= e * delta;
    }
    x_[a] = 0.0;
    where_[a] = kAtLower;
    pivot(r, q);
  }
}

void DenseSimplex::refine() {
  std::vector<double> resid(static_cast<std::size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    double r = lp_.rhs[i] - x_[static_cast<std::size_t>(n_ + i)];
    for (int e = lp_.row_start[i]; e < lp_.row_start[i + 1]; ++e) r -= lp_.val[e] * x_[lp_.col[e]];
    if (sigma_[i] != 0.0) r -= sigma_[i] * x_[static_cast<std::size_t>(cols_ + i)];
    resid[i] = r;
  }
  for (int k = 0; k < m_; ++k)
    x_[static_cast<std::size_t>(basis_[k])] += k_.dot(row(k) + n_, resid.data(), static_cast<std::size_t>(m_));
  for (int k = 0; k < m_; ++k) {
    const auto b = static_cast<std::size_t>(basis_[k]);
    if (std::abs(x_[b] - lb_[b]) < kSnap) x_[b] = lb_[b];
    else if (std::abs(x_[b] - ub_[b]) < kSnap) x_[b] = ub_[b];
  }
}

SolveStatus DenseSimplex::solve() {
  build_slack_basis();

  bool any_artificial = false;
  std::vector<double> phase1(static_cast<std::size_t>(cols_ + m_), 0.0);
  for (int i = 0; i < m_; ++i)
    if (sigma_[i] != 0.0) {
      phase1[static_cast<std::size_t>(cols_ + i)] = 1.0;
      any_artificial = true;
    }
  if (any_artificial) {
    cost_ = phase1;
    compute_reduced_costs(cost_);
    const SolveStatus st = primal_loop(1.0);
    if (st == SolveStatus::iteration_limit) return st;
    refine();
    for (int k = 0; k < m_; ++k)
      if (is_artificial(basis_[k]) && x_[static_cast<std::size_t>(basis_[k])] > tol_.feasibility) {
        has_basis_ = false;
        return SolveStatus::infeasible;
      }
    for (int i = 0; i < m_; ++i) ub_[static_cast<std::size_t>(cols_ + i)] = 0.0;
    drive_out_artificials();
  }

  cost_ = primary_;
  const double scale = cost_scale(cost_);
  for (int pass = 0; pass < 3; ++pass) {
    compute_reduced_costs(cost_);
    const SolveStatus st = primal_loop(scale);
    if (st != SolveStatus::optimal) return st;
    refine();
  }
  compute_reduced_costs(cost_);
  return SolveStatus::optimal;
}

void DenseSimplex::place_nonbasic(int v) {
  const double lo = lb_[v];
  const double hi = ub_[v];
  int w = where_[v];
  if (lo == -kInf && hi == kInf) {
    w = kFreeZero;
  } else if (lo == -kInf) {
    w = kAtUpper;
  } else if (hi == kInf) {
    w = kAtLower;
  } else if (w == kFreeZero) {
    w = d_[v] < 0.0 ? kAtUpper : kAtLower;
  } else {
    const double thr = tol_.optimality * cost_scale(cost_);
    if (w == kAtLower && d_[v] < -thr) w = kAtUpper;
    else if (w == kAtUpper && d_[v] > thr) w = kAtLower;
  }
  where_[v] = w;
  move_nonbasic(v, w == kAtLower ? lo : (w == kAtUpper ? hi : 0.0));
}

bool DenseSimplex::dual_feasible() const {
  double scale = 1.0;
  for (int j = 0; j < cols_; ++j) scale = std::max(scale, std::abs(cost_[j]));
  const double thr = 10.0 * tol_.optimality * scale;
  for (int v = 0; v < cols_; ++v) {
    const int w = where_[v];
    if (w >= 0 || lb_[v] == ub_[v]) continue;
    if (w == kAtLower && d_[v] < -thr) return false;
    if (w == kAtUpper && d_[v] > thr) return false;
    if (w == kFreeZero && std::abs(d_[v]) > thr) return false;
  }
  return true;
}

SolveStatus DenseSimplex::dual_loop() {
  const double ftol = tol_.feasibility;
  for (;;) {
    if (iterations_ >= tol_.max_iterations) return SolveStatus::iteration_limit;
    if (iterations_ > 0 && iterations_ % kRefreshEvery == 0) compute_reduced_costs(cost_);

    int r = -1;
    double worst = ftol;
    for (int i = 0; i < m_; ++i) {
      const auto b = static_cast<std::size_t>(basis_[i]);
      const double inf = std::max(lb_[b] - x_[b], x_[b] - ub_[b]);
      if (inf > worst) {
        worst = inf;
        r = i;
      }
    }
    if (r < 0) return SolveStatus::optimal;

    const int b = basis_[r];
    const bool up = x_[b] < lb_[b];
    const double target = up ? lb_[b] : ub_[b];
    const double* pr = row(r);
    int q = -1;
    double best = kInf;
    double pick = 0.0;
    for (int v = 0; v < cols_; ++v) {
      const int w = where_[v];
      if (w >= 0 || lb_[v] == ub_[v]) continue;
      const double a = pr[v];
      if (std::abs(a) <= kPivotTol) continue;
      if (w == kAtLower && (a < 0.0) != up) continue;
      if (w == kAtUpper && (a > 0.0) != up) continue;
      const double ratio = std::abs(d_[v]) / std::abs(a);
      if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && std::abs(a) > pick)) {
        best = std::min(best, ratio);
        pick = std::abs(a);
        q = v;
      }
    }
    if (q < 0) {
      infeasible_row_ = r;
      return SolveStatus::infeasible;
    }

    ++iterations_;
    const double delta = (x_[b] - target) / pr[q];
    x_[q] += delta;
    for (int i = 0; i < m_; ++i) {
      const double a = at(i, q);
      if (a != 0.0) x_[static_cast<std::size_t>(basis_[i])] -= a * delta;
    }
    x_[b] = target;
    where_[b] = up ? kAtLower : kAtUpper;
    pivot(r, q);
  }
}

SolveStatus DenseSimplex::resolve() {
  if (!has_basis_) return solve();
  for (int v = 0; v < cols_; ++v)
    if (where_[v] < 0) place_nonbasic(v);
  if (!dual_feasible()) return solve();

  const double scale = cost_scale(cost_);
  for (int pass = 0; pass < 3; ++pass) {
    const SolveStatus st = dual_loop();
    if (st == SolveStatus::infeasible && row_proves_infeasible(infeasible_row_)) return st;
    if (st != SolveStatus::optimal) return solve();
    refine();
    if (primal_infeasibility() > tol_.feasibility) continue;
    compute_reduced_costs(cost_);
    const SolveStatus p = primal_loop(scale);
    if (p != SolveStatus::optimal) return p;
    refine();
    if (primal_infeasibility() <= tol_.feasibility) return SolveStatus::optimal;
  }
  // Drift did not settle; rebuild from the slack basis.
  return solve();
}

bool DenseSimplex::row_proves_infeasible(int r) const {
  // The slack block of a tableau row holds its multipliers on the original
  // rows. Their combination is an implied equality; if no point in the box
  // meets it, the node is infeasible regardless of drift in the tableau.
  const double* rho = row(r) + n_;
  std::vector<double> coef(static_cast<std::size_t>(n_), 0.0);
  double rhs = 0.0;
  double scale = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (rho[i] == 0.0) continue;
    rhs += rho[i] * lp_.rhs[i];
    scale += std::abs(rho[i]) * std::max(1.0, std::abs(lp_.rhs[i]));
    for (int e = lp_.row_start[i]; e < lp_.row_start[i + 1]; ++e) coef[lp_.col[e]] += rho[i] * lp_.val[e];
  }
  double lo = 0.0;
  double hi = 0.0;
  // Coefficients at roundoff level are evaluated at the current point;
  // against an infinite bound they would void the argument.
  auto add = [&](double c, double l, double u, double x) {
    if (std::abs(c) <= kPivotTol) {
      lo += c * x;
      hi += c * x;
    } else if (c > 0.0) {
      lo += c * l;
      hi += c * u;
    } else if (c < 0.0) {
      lo += c * u;
      hi += c * l;
    }
  };
  for (int j = 0; j < n_; ++j) add(coef[j], lb_[j], ub_[j], x_[j]);
  for (int i = 0; i < m_; ++i) {
    const auto s = static_cast<std::size_t>(n_ + i);
    add(rho[i], lb_[s], ub_[s], x_[s]);
  }
  const double margin = tol_.feasibility * scale;
  return lo > rhs + margin || hi < rhs - margin;
}

double DenseSimplex::primal_infeasibility() const {
  double worst = 0.0;
  for (int k = 0; k < m_; ++k) {
    const auto b = static_cast<std::size_t>(basis_[k]);
    worst = std::max({worst, lb_[b] - x_[b], x_[b] - ub_[b]});
  }
  return worst;
}

SolveStatus DenseSimplex::minimize_tiebreak() {
  if (lp_.tiebreak.empty()) return SolveStatus::optimal;
  const double thr = tol_.optimality * cost_scale(primary_);
  for (int v = 0; v < cols_; ++v)
    if (where_[v] < 0 && lb_[v] != ub_[v] && std::abs(d_[v]) > thr) {
      lb_[v] = x_[v];
      ub_[v] = x_[v];
    }
  cost_.assign(static_cast<std::size_t>(cols_ + m_), 0.0);
  std::copy(lp_.tiebreak.begin(), lp_.tiebreak.end(), cost_.begin());
  compute_reduced_costs(cost_);
  const SolveStatus st = primal_loop(cost_scale(cost_));
  refine();
  return st;
}

std::vector<double> DenseSimplex::primal() const { return {x_.begin(), x_.begin() + n_}; }

double DenseSimplex::objective() const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) s += lp_.cost[j] * x_[j];
  return s;
}

double DenseSimplex::dual_bound() const {
  // y = c_B B^-1, read off the slack block of the tableau.
  std::vector<double> y(static_cast<std::size_t>(m_), 0.0);
  for (int k = 0; k < m_; ++k) {
    const double cb = primary_[static_cast<std::size_t>(basis_[k])];
    if (cb == 0.0) continue;
    const double* t = row(k) + n_;
    for (int i = 0; i < m_; ++i) y[i] += cb * t[i];
  }
  std::vector<double> red(lp_.cost.begin(), lp_.cost.end());
  double bound = 0.0;
  for (int i = 0; i < m_; ++i) {
    bound += y[i] * lp_.rhs[i];
    for (int e = lp_.row_start[i]; e < lp_.row_start[i + 1]; ++e) red[lp_.col[e]] -= y[i] * lp_.val[e];
  }
  const double thr = 10.0 * tol_.optimality * cost_scale(primary_);
  auto contribution = [&](double d, double lo, double hi) {
    if (d > 0.0) return lo > -kInf ? d * lo : (d <= thr ? 0.0 : -kInf);
    if (d < 0.0) return hi < kInf ? d * hi : (-d <= thr ? 0.0 : -kInf);
    return 0.0;
  };
  for (int j = 0; j < n_; ++j) bound += contribution(red[j], lb_[j], ub_[j]);
  for (int i = 0; i < m_; ++i) {
    const auto s = static_cast<std::size_t>(n_ + i);
    bound += contribution(-y[i], lb_[s], ub_[s]);
  }
  return bound;
}

}  // namespace railflow::detail
