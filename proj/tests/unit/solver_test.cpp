#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "lp_oracle.hpp"
#include "railflow/scenario.hpp"
#include "railflow/solver.hpp"

using namespace railflow;

using testing::feasible;
using testing::make_lp;
using testing::make_row;
using testing::enumerate_mip;
using testing::random_lp;
using testing::random_mip;
using testing::vertex_minimum;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("small LPs with known optima") {
  SUBCASE("lower bound from a row") {
    StandardFormLP lp = make_lp({1.0}, {0.0}, {kInf});
    lp.rows.push_back(make_row({1.0}, Relation::greater_equal, 3.0));
    const auto res = solve_lp(lp);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(res.values[0] == 3.0);
    CHECK(res.objective == 3.0);
  }
  SUBCASE("simplex corner") {
    StandardFormLP lp = make_lp({-1.0, -1.0}, {0.0, 0.0}, {kInf, kInf});
    lp.rows.push_back(make_row({1.0, 1.0}, Relation::less_equal, 1.0));
    const auto res = solve_lp(lp);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(res.objective == doctest::Approx(-1.0));
    CHECK(*vertex_minimum(lp) == doctest::Approx(-1.0));
    CHECK(((res.values[0] == 1.0 && res.values[1] == 0.0) || (res.values[0] == 0.0 && res.values[1] == 1.0)));
  }
  SUBCASE("contradictory bounds") {
    StandardFormLP lp = make_lp({1.0}, {0.0}, {kInf});
    lp.rows.push_back(make_row({1.0}, Relation::less_equal, -1.0));
    CHECK(solve_lp(lp).status == SolveStatus::infeasible);
    StandardFormLP crossed = make_lp({1.0}, {0.0}, {-1.0});
    CHECK(solve_lp(crossed).status == SolveStatus::infeasible);
  }
  SUBCASE("unbounded direction") {
    StandardFormLP lp = make_lp({-1.0, 0.0}, {0.0, 0.0}, {kInf, 1.0});
    lp.rows.push_back(make_row({1.0, -1.0}, Relation::greater_equal, 0.0));
    CHECK(solve_lp(lp).status == SolveStatus::unbounded);
  }
  SUBCASE("free column") {
    StandardFormLP lp = make_lp({1.0, 0.0}, {-kInf, 0.0}, {kInf, 4.0});
    lp.rows.push_back(make_row({1.0, 1.0}, Relation::equal, 1.0));
    const auto res = solve_lp(lp);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(res.values[0] == -3.0);
  }
  SUBCASE("iteration limit") {
    const Scenario sc = load_scenario_file(testing::scenario_path("small_network"));
    Tolerances tol;
    tol.max_iterations = 10;
    CHECK(solve_lp(to_standard_form(build_model(sc.network, sc.catalog, sc.config)), tol).status ==
          SolveStatus::iteration_limit);
  }
}

TEST_CASE("simplex matches vertex enumeration on random bounded LPs") {
  std::mt19937 rng(1234);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const StandardFormLP lp = random_lp(rng);
    const auto oracle = vertex_minimum(lp);
    const auto res = solve_lp(lp);
    REQUIRE(oracle);  // feasible by construction
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(std::abs(res.objective - *oracle) <= 1e-7);
    CHECK(std::abs(res.objective - res.dual_bound) <= 1e-7);
    CHECK(feasible(lp, res.values, 1e-7));
    ++solved;
  }
  CHECK(solved == 200);
}

TEST_CASE("branch and bound matches exhaustive enumeration on tiny MIPs") {
  std::mt19937 rng(4321);
  for (int trial = 0; trial < 50; ++trial) {
    CAPTURE(trial);
    const StandardFormLP lp = random_mip(rng);
    const auto best = enumerate_mip(lp);
    REQUIRE(best);

    const auto res = solve_mip(lp);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(std::abs(res.objective - *best) <= 1e-9);
    for (int j = 0; j < lp.column_count(); ++j)
      if (lp.integer[j]) CHECK(res.values[j] == std::round(res.values[j]));
    for (std::size_t k = 1; k < res.stats.incumbents.size(); ++k)
      CHECK(res.stats.incumbents[k] <= res.stats.incumbents[k - 1]);
    CHECK(res.stats.gap <= Tolerances{}.relative_gap);

    const auto relaxed = solve_lp(lp);
    REQUIRE(relaxed.status == SolveStatus::optimal);
    CHECK(relaxed.objective <= res.objective + 1e-9);
  }
}

TEST_CASE("branch and bound edge cases") {
  SUBCASE("no integer marks: same as the LP") {
    std::mt19937 rng(77);
    const StandardFormLP lp = random_lp(rng);
    const auto a = solve_lp(lp);
    const auto b = solve_mip(lp);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.values == b.values);
  }
  SUBCASE("a fractional relaxation splits into both children") {
    // min -x - y with 2x + 2y <= 3 over binaries: the relaxation sits at x + y = 1.5.
    StandardFormLP lp = make_lp({-1.0, -1.0}, {0.0, 0.0}, {1.0, 1.0});
    lp.integer = {true, true};
    lp.rows.push_back(make_row({2.0, 2.0}, Relation::less_equal, 3.0));
    const auto relaxed = solve_lp(lp);
    REQUIRE(relaxed.status == SolveStatus::optimal);
    CHECK(relaxed.objective == -1.5);
    const auto res = solve_mip(lp);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(res.objective == -1.0);
    CHECK(res.values[0] + res.values[1] == 1.0);
    CHECK(res.stats.nodes >= 3);
  }
  SUBCASE("forced cancellation stays integral") {
    const Network net = testing::chain_network();
    const ServiceCatalog cat(net, {}, {{"A-C-f", NodeId(0), NodeId(2), TrainTypeId(0), {2, 0, 0}, {}, {}}});
    const auto m = build_model(net, cat, {});
    const auto res = solve_mip(m);
    REQUIRE(res.status == SolveStatus::optimal);
    CHECK(m.value(res.values, VariableRef::cancel_total(DemandId(0))) == 2.0);
    CHECK(res.objective >= 2000.0);
  }
  SUBCASE("infeasible integer box") {
    StandardFormLP lp = make_lp({1.0}, {0.0}, {1.0});
    lp.integer = {true};
    lp.rows.push_back(make_row({2.0}, Relation::equal, 1.0));
    CHECK(solve_mip(lp).status == SolveStatus::infeasible);
  }
  SUBCASE("node limit") {
    const Scenario s = load_scenario_file(testing::scenario_path("small_network"));
    Tolerances tol;
    tol.max_nodes = 1;
    const auto res = solve_mip(build_model(s.network, s.catalog, s.config), tol);
    CHECK(res.status == SolveStatus::iteration_limit);
  }
}

TEST_CASE("model export") {
  SUBCASE("empty model") {
    const std::string text = export_model_text(TimeExpandedModel{});
    CHECK(text == "NAME          railflow\nROWS\n N  OBJ\nCOLUMNS\nRHS\nBOUNDS\nENDATA\n");
  }
  SUBCASE("same model, same bytes") {
    const Network net = testing::chain_network();
    const ServiceCatalog cat = testing::chain_catalog(net, {1, 2, 0});
    ModelConfig cfg;
    const std::string a = export_model_text(build_model(net, cat, cfg));
    const std::string b = export_model_text(build_model(net, cat, cfg));
    CHECK(a == b);
    CHECK(a.find("'INTORG'") != std::string::npos);
    CHECK(a.find(" FR BND") != std::string::npos);  // ext columns are free
    cfg.relax_integrality = true;
    CHECK(export_model_text(build_model(net, cat, cfg)).find("'INTORG'") == std::string::npos);
  }
}
