// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lp_oracle.hpp"
#include "railflow/scenario.hpp"
#include "solution_checks.hpp"

using namespace railflow;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct TimedRun {
  RunResult result;
  double seconds;
};

TimedRun timed_run(const Scenario& s) {
  const auto t0 = Clock::now();
  RunResult r = run(s);
  return {std::move(r), seconds_since(t0)};
}

Scenario fixture(const std::string& name) { return load_scenario_file(testing::scenario_path(name)); }

double served(const RunResult& r, DemandId d) {
  double sum = 0.0;
  for (RouteId route : r.scenario.catalog.implementing_routes(d))
    for (int t = 1; t <= r.scenario.network.horizon(); ++t)
      sum += r.model.value(r.solve.values, VariableRef::dep(route, t));
  return sum;
}

// 1. Single train over A -> B -> C.
Outcome worked_example() {
  Outcome o;
  const Scenario s = fixture("single_train_abc");
  const auto [r, secs] = timed_run(s);
  o.require(r.solve.status == SolveStatus::optimal, "status " + std::string(to_string(r.solve.status)));
  if (!o.pass) return o;
  const auto& net = s.network;
  const LinkId ab = *net.find_link("A-B"), bc = *net.find_link("B-C");
  const TrainTypeId f(0);
  const double d_ab = net.duration(ab, f), d_bc = net.duration(bc, f);

  // Evenly spread departures in the first period: the tail d_ab of the
  // volume finishes A-B in the next period, the tail d_ab + d_bc finishes
  // B-C there, and of that d_bc is still on B-C when the period turns.
  const double oracle_ab = (1.0 - d_ab) + d_ab / 2.0;
  const double oracle_bc = d_ab + d_bc / 2.0;
  const double oracle_reach = 1.0 - (d_ab + d_bc);

  const double used_ab = testing::link_usage(r.model, s.catalog, r.solve.values, ab, 1);
  const double used_bc = testing::link_usage(r.model, s.catalog, r.solve.values, bc, 2);
  o.require(std::abs(used_ab - 0.925) <= 1e-6, "A-B usage " + fmt("%.9f", used_ab) + " vs 0.925");
  o.require(std::abs(used_bc - 0.25) <= 1e-6, "B-C usage " + fmt("%.9f", used_bc) + " vs 0.25");
  o.require(std::abs(used_ab - oracle_ab) <= 1e-6, "A-B usage vs recomputed split");
  o.require(std::abs(used_bc - oracle_bc) <= 1e-6, "B-C usage vs recomputed split");

  const RouteId route(0);
  const NodeId c = *net.find_node("C");
  const double reached = r.model.value(r.solve.values, VariableRef::in(c, 1, route));
  const double arrived = r.model.value(r.solve.values, VariableRef::arr(route, 1));
  o.require(reached <= 0.65 + 1e-9, "cumulative arrivals at C " + fmt("%.9f", reached));
  o.require(arrived <= 0.65 + 1e-9, "arrivals counted at C " + fmt("%.9f", arrived));
  o.require(std::abs(oracle_reach - 0.65) <= 1e-12, "recomputed reachable share");
  o.require(secs < 1.0, "runtime " + fmt("%.3fs", secs));
  o.detail = o.pass ? "A-B " + fmt("%.6f", used_ab) + ", B-C " + fmt("%.6f", used_bc) + ", C reached " +
                          fmt("%.6f", reached) + ", " + fmt("%.3fs", secs)
                    : o.detail;
  return o;
}

// 2. Example network, with and without the E-F closure in period 4.
Outcome example_network(const TimedRun& base, const TimedRun& closed) {
  Outcome o;
  o.require(base.result.solve.status == SolveStatus::optimal, "base not optimal");
  o.require(closed.result.solve.status == SolveStatus::optimal, "closure not optimal");
  if (!o.pass) return o;

  for (const auto* tr : {&base, &closed}) {
    const auto& r = tr->result;
    const auto& cat = r.scenario.catalog;
    for (std::size_t i = 0; i < cat.demand_count(); ++i) {
      const DemandId d(static_cast<int>(i));
      const double cancelled = r.model.value(r.solve.values, VariableRef::cancel_total(d));
      if (tr == &base) o.require(cancelled == 0.0, "base cancels " + cat.demand(d).name);
      const double nu = static_cast<double>(cat.demand_total(d));
      o.require(std::abs(served(r, d) + cancelled - nu) <= 1e-6, r.scenario.name + ": " + cat.demand(d).name +
                                                                      " served " + fmt("%.6f", served(r, d)));
    }
    o.require(tr->seconds < 10.0, r.scenario.name + " runtime " + fmt("%.2fs", tr->seconds));
  }

  const auto& r = closed.result;
  const LinkId ef = *r.scenario.network.find_link("E-F");
  o.require(r.scenario.network.capacity(ef, 4) == 0.0, "closure not applied");
  const double used = testing::link_usage(r.model, r.scenario.catalog, r.solve.values, ef, 4);
  o.require(used == 0.0, "E-F usage in period 4 is " + fmt("%.3g", used));
  o.require(closed.result.solve.objective > base.result.solve.objective,
            "objective " + fmt("%.6f", closed.result.solve.objective) + " not above base " +
                fmt("%.6f", base.result.solve.objective));

  const RouteId detour = *r.scenario.catalog.find_route("E-F-p2");
  double detour_volume = 0.0;
  for (int t = 1; t <= r.scenario.network.horizon(); ++t)
    detour_volume += r.model.value(r.solve.values, VariableRef::dep(detour, t));
  o.require(detour_volume > 0.0, "E-F-p2 unused");
  if (o.pass)
    o.detail = "objective " + fmt("%.6f", base.result.solve.objective) + " -> " +
               fmt("%.6f", closed.result.solve.objective) + ", E-F-p2 volume " + fmt("%.3f", detour_volume) + ", " +
               fmt("%.2fs", base.seconds) + " + " + fmt("%.2fs", closed.seconds);
  return o;
}

// 3. Setup time on the coupled pair.
Outcome setup_time(const std::vector<const RunResult*>& runs) {
  Outcome o;
  int checked = 0;
  for (const auto* r : runs) {
    const auto& net = r->scenario.network;
    o.require(r->scenario.config.capacity_mode == CapacityMode::single_track_alt2, "mode");
    o.require(r->scenario.config.setup_coefficient == 1.0, "setup coefficient");
    const auto pairs = net.coupled_pairs();
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (int t = 1; t <= net.horizon(); ++t) {
        double lower = 0.0, upper = 0.0;
        for (const auto& h : net.train_types()) {
          lower += r->model.value(r->solve.values, VariableRef::linkcap(pairs[p].lower, t, h.id));
          upper += r->model.value(r->solve.values, VariableRef::linkcap(pairs[p].upper, t, h.id));
        }
        const double w = r->model.value(r->solve.values, VariableRef::setup_w(static_cast<int>(p), t));
        const std::string at = net.link(pairs[p].lower).name + " t" + std::to_string(t);
        o.require(w >= std::min(lower, upper) - 1e-6, at + ": setup " + fmt("%.6f", w) + " below smaller direction");
        for (LinkId side : {pairs[p].lower, pairs[p].upper})
          o.require(lower + upper + w <= net.capacity(side, t) + 1e-6, at + ": pooled capacity exceeded");
        ++checked;
      }
  }
  if (o.pass) o.detail = std::to_string(checked) + " pair-periods";
  return o;
}

// 4. Model invariants on every optimal solution produced here.
Outcome invariants(const std::vector<const RunResult*>& runs) {
  Outcome o;
  double flow = 0.0, pacing = 0.0, capacity = 0.0;
  for (const auto* r : runs) {
    if (r->solve.status != SolveStatus::optimal) continue;
    const auto chk = testing::check_solution(r->model, r->scenario.network, r->scenario.catalog, r->solve.values);
    flow = std::max(flow, chk.flow_residual);
    pacing = std::max(pacing, chk.pacing_excess);
    capacity = std::max({capacity, chk.capacity_excess, chk.allocation_excess});
    o.require(chk.flow_residual <= 1e-9, r->scenario.name + ": flow residual " + fmt("%.3g", chk.flow_residual));
    o.require(chk.pacing_excess <= 1e-9, r->scenario.name + ": pacing " + fmt("%.3g", chk.pacing_excess));
    o.require(chk.capacity_excess <= 1e-9 && chk.allocation_excess <= 1e-9, r->scenario.name + ": capacity");
    o.require(chk.accounting_exact && chk.cancellations_integral, r->scenario.name + ": demand accounting");

    // The aggregate variables themselves bound the cumulative inflow.
    const auto& cat = r->scenario.catalog;
    for (std::size_t ri = 0; ri < cat.route_count(); ++ri) {
      const RouteId route(static_cast<int>(ri));
      for (NodeId n : cat.route_nodes(route)) {
        double cum = 0.0;
        for (int t = 1; t <= r->scenario.network.horizon(); ++t) {
          cum += r->model.value(r->solve.values, VariableRef::in(n, t, route));
          const double excess = cum - r->model.value(r->solve.values, VariableRef::aggr(n, t, route));
          pacing = std::max(pacing, excess);
          o.require(excess <= 1e-9, r->scenario.name + ": aggregate bound at " + cat.route(route).name);
        }
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(runs.size()) + " solutions, worst flow " + fmt("%.1e", flow) + ", pacing " +
               fmt("%.1e", pacing) + ", capacity " + fmt("%.1e", capacity);
  return o;
}

// 5. Simplex and branch-and-bound against brute force.
Outcome solver_oracles() {
  Outcome o;
  std::mt19937 rng(5150);
  double worst_lp = 0.0, worst_mip = 0.0;
  for (int i = 0; i < 200; ++i) {
    const StandardFormLP lp = testing::random_lp(rng);
    const auto oracle = testing::vertex_minimum(lp);
    const auto res = solve_lp(lp);
    if (!oracle || res.status != SolveStatus::optimal) {
      o.require(false, "LP " + std::to_string(i) + " status " + std::string(to_string(res.status)));
      continue;
    }
    worst_lp = std::max(worst_lp, std::abs(res.objective - *oracle));
  }
  o.require(worst_lp <= 1e-7, "LP deviation " + fmt("%.3g", worst_lp));
  for (int i = 0; i < 50; ++i) {
    const StandardFormLP lp = testing::random_mip(rng);
    const auto oracle = testing::enumerate_mip(lp);
    const auto res = solve_mip(lp);
    if (!oracle || res.status != SolveStatus::optimal) {
      o.require(false, "MIP " + std::to_string(i) + " status " + std::string(to_string(res.status)));
      continue;
    }
    worst_mip = std::max(worst_mip, std::abs(res.objective - *oracle));
  }
  o.require(worst_mip <= 1e-9, "MIP deviation " + fmt("%.3g", worst_mip));
  if (o.pass) o.detail = "200 LPs (worst " + fmt("%.1e", worst_lp) + "), 50 MIPs (worst " + fmt("%.1e", worst_mip) + ")";
  return o;
}

// 6. Integrality, and the relaxation as a lower bound.
Outcome integrality(const std::vector<const RunResult*>& runs) {
  Outcome o;
  int cancels = 0, flags = 0;
  for (const auto* r : runs) {
    if (r->solve.status != SolveStatus::optimal) continue;
    for (std::size_t j = 0; j < r->model.variables().size(); ++j) {
      const auto& v = r->model.variables()[j];
      const double x = r->solve.values[j];
      if (v.ref.kind == VariableKind::cancel_total) {
        o.require(std::abs(x - std::round(x)) <= 1e-6, r->scenario.name + ": fractional " + v.name);
        ++cancels;
      }
      if (v.ref.kind == VariableKind::dirflag_beta) {
        o.require(x == 0.0 || x == 1.0, r->scenario.name + ": " + v.name + " = " + fmt("%.6g", x));
        ++flags;
      }
    }
    Scenario relaxed = r->scenario;
    relaxed.config.relax_integrality = true;
    const RunResult lp = run(relaxed);
    o.require(lp.solve.status == SolveStatus::optimal, r->scenario.name + ": relaxation not optimal");
    o.require(lp.solve.objective <= r->solve.objective + 1e-9,
              r->scenario.name + ": relaxation " + fmt("%.9f", lp.solve.objective) + " above " +
                  fmt("%.9f", r->solve.objective));
  }
  if (o.pass) o.detail = std::to_string(cancels) + " cancel totals, " + std::to_string(flags) + " direction flags";
  return o;
}

// 7. Same input, same bytes.
Outcome determinism(const std::vector<Scenario>& scenarios) {
  Outcome o;
  for (const auto& s : scenarios) {
    const RunResult a = run(s), b = run(s);
    o.require(report_capacity_csv(a.capacity) == report_capacity_csv(b.capacity), s.name + ": capacity report");
    o.require(report_capacity_by_type_csv(a.capacity) == report_capacity_by_type_csv(b.capacity),
              s.name + ": by-type report");
    o.require(report_demand_csv(a.demand) == report_demand_csv(b.demand), s.name + ": demand report");
    o.require(export_model_text(a.model) == export_model_text(b.model), s.name + ": model export");
  }
  if (o.pass) o.detail = std::to_string(scenarios.size()) + " scenarios run twice";
  return o;
}

// 8. The exported model solved by an external MILP code.
Outcome cross_solver(const std::vector<const RunResult*>& runs) {
  Outcome o;
  std::string summary;
  for (const auto* r : runs) {
    const fs::path mps = fs::temp_directory_path() / ("railflow_accept_" + r->scenario.name + ".mps");
    {
      std::ofstream out(mps, std::ios::binary);
      out << export_model_text(r->model);
    }
    const std::string cmd = std::string("\"") + RAILFLOW_PYTHON + "\" \"" + RAILFLOW_MPS_SOLVER + "\" \"" +
                            mps.string() + "\" 2>&1";
    std::string output;
    if (FILE* p = popen(cmd.c_str(), "r")) {
      char buf[512];
      while (std::fgets(buf, sizeof buf, p)) output += buf;
      pclose(p);
    }
    fs::remove(mps);
    const auto at = output.find("objective ");
    if (at == std::string::npos) {
      o.require(false, r->scenario.name + ": external solver said: " + output.substr(0, 200));
      continue;
    }
    const double external = std::stod(output.substr(at + 10));
    const double ours = r->solve.objective;
    const double rel = std::abs(external - ours) / std::max(1.0, std::abs(ours));
    o.require(rel <= 1e-6, r->scenario.name + ": " + fmt("%.9f", external) + " vs " + fmt("%.9f", ours));
    if (!summary.empty()) summary += ", ";
    summary += r->scenario.name + " rel diff " + fmt("%.1e", rel);
  }
  if (o.pass) o.detail = summary;
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str());
    std::fflush(stdout);
  };

  const Scenario base_s = fixture("small_network");
  const Scenario closed_s = fixture("small_network_ef_closure");
  const TimedRun base = timed_run(base_s);
  const TimedRun closed = timed_run(closed_s);
  const RunResult single = run(fixture("single_train_abc"));

  // A scarcer variant forces cancellations, so integrality is not vacuous.
  Scenario scarce = base_s;
  scarce.name = "small_network_scarce";
  std::vector<CapacityOverride> cut;
  for (const auto& l : scarce.network.links()) cut.push_back({l.id, 0, true, 0.2});
  scarce = apply_tcr(scarce, cut);
  const RunResult scarce_run = run(scarce);

  std::vector<RunResult> modes;
  for (auto m : {CapacityMode::basic, CapacityMode::single_track_alt1, CapacityMode::heterogeneous}) {
    Scenario s = base_s;
    s.config.capacity_mode = m;
    s.name = base_s.name + "_" + std::string(to_string(m));
    modes.push_back(run(s));
  }

  std::vector<const RunResult*> all{&base.result, &closed.result, &single, &scarce_run};
  for (const auto& m : modes) all.push_back(&m);

  report(1, "single train split and pacing", worked_example);
  report(2, "example network and E-F closure", [&] { return example_network(base, closed); });
  report(3, "setup time covers the smaller direction",
         [&] { return setup_time({&base.result, &closed.result, &scarce_run}); });
  report(4, "flow, pacing, capacity and demand invariants", [&] { return invariants(all); });
  report(5, "simplex and branch-and-bound against brute force", solver_oracles);
  report(6, "integrality and relaxation bound",
         [&] { return integrality({&base.result, &closed.result, &scarce_run}); });
  report(7, "byte-identical reports and exports", [&] { return determinism({base_s, closed_s}); });
  report(8, "external MILP solver agrees", [&] { return cross_solver({&base.result, &closed.result}); });

  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
