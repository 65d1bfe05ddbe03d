#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "dense_simplex.hpp"
#include "railflow/kernels.hpp"
#include "railflow/solver.hpp"

namespace railflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double dot(const std::vector<double>& c, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * x[j];
  return s;
}

void finish(const StandardFormLP& lp, SolveResult& res) {
  res.objective = dot(lp.objective, res.values);
  res.activities.assign(lp.rows.size(), 0.0);
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    for (const Term& t : lp.rows[i].terms) res.activities[i] += t.coefficient * res.values[t.column];
}

struct Node {
  long id = 0;
  double bound = 0.0;
  std::vector<double> lo;
  std::vector<double> hi;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

double prune_margin(double incumbent, const Tolerances& tol) {
  return std::max(1e-9, tol.relative_gap * std::abs(incumbent));
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

StandardFormLP to_standard_form(const TimeExpandedModel& model) {
  StandardFormLP lp;
  const auto& vars = model.variables();
  lp.objective = model.objective();
  lp.objective.resize(vars.size(), 0.0);
  lp.tiebreak = model.tiebreak();
  if (!lp.tiebreak.empty()) lp.tiebreak.resize(vars.size(), 0.0);
  for (const auto& v : vars) {
    lp.lower.push_back(v.lower);
    lp.upper.push_back(v.upper);
    lp.integer.push_back(v.integer);
  }
  for (const auto& c : model.constraints()) lp.rows.push_back({c.terms, c.relation, c.rhs});
  return lp;
}

SolveResult solve_lp(const StandardFormLP& input, const Tolerances& tol) {
  const auto t0 = Clock::now();
  StandardFormLP lp = input;
  lp.integer.assign(lp.objective.size(), false);

  SolveResult res;
  const detail::Presolved pre = detail::presolve(lp, tol.feasibility);
  res.stats.presolved_rows = pre.lp.m;
  res.stats.presolved_columns = pre.lp.n;
  if (pre.infeasible) {
    res.status = SolveStatus::infeasible;
    res.stats.seconds = seconds_since(t0);
    return res;
  }
  detail::DenseSimplex simplex(pre.lp, tol, kernels::active());
  res.status = simplex.solve();
  res.stats.iterations = simplex.iterations();
  if (res.status == SolveStatus::optimal) {
    res.dual_bound = simplex.dual_bound() + pre.offset;
    res.stats.best_bound = simplex.objective() + pre.offset;
    simplex.minimize_tiebreak();
    res.stats.iterations = simplex.iterations();
    res.values = detail::expand(pre, simplex.primal());
    finish(lp, res);
  }
  res.stats.seconds = seconds_since(t0);
  return res;
}

SolveResult solve_mip(const StandardFormLP& lp, const Tolerances& tol) {
  bool any_integer = false;
  for (bool b : lp.integer) any_integer = any_integer || b;
  if (!any_integer) return solve_lp(lp, tol);

  const auto t0 = Clock::now();
  SolveResult res;
  const detail::Presolved pre = detail::presolve(lp, tol.feasibility);
  res.stats.presolved_rows = pre.lp.m;
  res.stats.presolved_columns = pre.lp.n;
  if (pre.infeasible) {
    res.status = SolveStatus::infeasible;
    res.stats.seconds = seconds_since(t0);
    return res;
  }

  std::vector<int> ints;
  for (int j = 0; j < pre.lp.n; ++j)
    if (pre.lp.integer[j]) ints.push_back(j);

  detail::DenseSimplex simplex(pre.lp, tol, kernels::active());
  const SolveStatus root = simplex.solve();
  if (root != SolveStatus::optimal) {
    res.status = root;
    res.stats.iterations = simplex.iterations();
    res.stats.seconds = seconds_since(t0);
    return res;
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  {
    Node n;
    n.id = next_id++;
    n.bound = simplex.objective() + pre.offset;
    for (int j : ints) {
      n.lo.push_back(pre.lp.lower[j]);
      n.hi.push_back(pre.lp.upper[j]);
    }
    open.push(std::move(n));
  }

  double incumbent = kInf;
  std::vector<double> best_ints;
  double best_bound = kInf;
  bool limited = false;

  auto open_bound = [&](double b) { return open.empty() ? b : std::min(b, open.top().bound); };
  while (!open.empty()) {
    Node node = open.top();
    if (incumbent < kInf && node.bound >= incumbent - prune_margin(incumbent, tol)) {
      best_bound = node.bound;
      break;
    }
    open.pop();
    if (res.stats.nodes >= tol.max_nodes) {
      limited = true;
      best_bound = open_bound(node.bound);
      break;
    }
    ++res.stats.nodes;

    for (std::size_t k = 0; k < ints.size(); ++k) simplex.set_bounds(ints[k], node.lo[k], node.hi[k]);
    const SolveStatus st = simplex.resolve();
    if (st == SolveStatus::infeasible) continue;
    if (st == SolveStatus::unbounded) {
      res.status = SolveStatus::unbounded;
      res.stats.iterations = simplex.iterations();
      res.stats.seconds = seconds_since(t0);
      return res;
    }
    if (st == SolveStatus::iteration_limit) {
      limited = true;
      best_bound = open_bound(node.bound);
      break;
    }
    const double obj = simplex.objective() + pre.offset;
    if (incumbent < kInf && obj >= incumbent - prune_margin(incumbent, tol)) continue;

    const std::vector<double> x = simplex.primal();
    int branch = -1;
    double most = tol.integrality;
    for (std::size_t k = 0; k < ints.size(); ++k) {
      const double v = x[static_cast<std::size_t>(ints[k])];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > most) {
        most = frac;
        branch = static_cast<int>(k);
      }
    }
    if (branch < 0) {
      incumbent = obj;
      best_ints.clear();
      for (int j : ints) best_ints.push_back(std::round(x[static_cast<std::size_t>(j)]));
      res.stats.incumbents.push_back(obj);
      continue;
    }
    const double v = x[static_cast<std::size_t>(ints[static_cast<std::size_t>(branch)])];
    Node down = node;
    down.id = next_id++;
    down.bound = obj;
    down.hi[static_cast<std::size_t>(branch)] = std::floor(v);
    Node up = std::move(node);
    up.id = next_id++;
    up.bound = obj;
    up.lo[static_cast<std::size_t>(branch)] = std::ceil(v);
    open.push(std::move(down));
    open.push(std::move(up));
  }
  if (open.empty() && !limited) best_bound = incumbent;

  if (incumbent == kInf) {
    res.status = limited ? SolveStatus::iteration_limit : SolveStatus::infeasible;
    res.stats.iterations = simplex.iterations();
    res.stats.best_bound = best_bound;
    res.stats.seconds = seconds_since(t0);
    return res;
  }

  // Re-solve with the integers pinned to recover the incumbent's basis, then
  // break ties among its optima.
  for (std::size_t k = 0; k < ints.size(); ++k) simplex.set_bounds(ints[k], best_ints[k], best_ints[k]);
  SolveStatus polish = simplex.resolve();
  if (polish != SolveStatus::optimal) polish = simplex.solve();
  if (polish != SolveStatus::optimal) {
    res.status = polish;
    res.stats.iterations = simplex.iterations();
    res.stats.seconds = seconds_since(t0);
    return res;
  }
  res.dual_bound = simplex.dual_bound() + pre.offset;
  simplex.minimize_tiebreak();
  std::vector<double> x = simplex.primal();
  for (std::size_t k = 0; k < ints.size(); ++k) x[static_cast<std::size_t>(ints[k])] = best_ints[k];
  res.values = detail::expand(pre, x);
  finish(lp, res);

  res.status = limited ? SolveStatus::iteration_limit : SolveStatus::optimal;
  res.stats.iterations = simplex.iterations();
  res.stats.best_bound = std::min(best_bound, incumbent);
  res.stats.gap = (incumbent - res.stats.best_bound) / std::max(1.0, std::abs(incumbent));
  res.stats.seconds = seconds_since(t0);
  return res;
}

SolveResult solve_mip(const TimeExpandedModel& model, const Tolerances& tol) {
  const StandardFormLP lp = to_standard_form(model);
  return model.integrality_relaxed() ? solve_lp(lp, tol) : solve_mip(lp, tol);
}

}  // namespace railflow
