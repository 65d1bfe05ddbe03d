#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "railflow/kernels.hpp"
#include "railflow/scenario.hpp"
#include "solver/dense_simplex.hpp"

using namespace railflow;

namespace {

std::vector<const kernels::KernelTable*> variants() {
  std::vector<const kernels::KernelTable*> out;
  if (const auto* k = kernels::avx2_kernels()) out.push_back(k);
  if (const auto* k = kernels::neon_kernels()) out.push_back(k);
  return out;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> sample(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> pick(0, 19);
  std::vector<double> v(n);
  for (auto& x : v) {
    switch (pick(rng)) {
      case 0: x = 0.0; break;
      case 1: x = -0.0; break;
      case 2: x = 1e-13; break;  // below the flush threshold
      case 3: x = std::numeric_limits<double>::denorm_min(); break;
      case 4: x = 1e300; break;
      default: x = u(rng);
    }
  }
  return v;
}

}  // namespace

TEST_CASE("scalar kernels compute the documented operations") {
  const auto& k = kernels::scalar_kernels();
  std::vector<double> y{1.0, 2.0, 3.0, 1e-12, 5.0};
  const std::vector<double> x{1.0, 1.0, 1.0, 0.0, 2.5};
  k.axpy_flush(y.data(), 2.0, x.data(), y.size(), 1e-11);
  CHECK(y == std::vector<double>{-1.0, 0.0, 1.0, 0.0, 0.0});

  std::vector<double> w{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> packed{1.0, 1e-13 + 4.0};
  const std::vector<int> at{2, 3};
  k.axpy_indexed_flush(w.data(), 1.0, packed.data(), at.data(), at.size(), 1e-11);
  CHECK(w == std::vector<double>{1.0, 2.0, 2.0, 0.0});

  std::vector<double> z{2.0, 4.0, 6.0};
  k.divide(z.data(), 2.0, z.size());
  CHECK(z == std::vector<double>{1.0, 2.0, 3.0});

  const std::vector<double> a{1, 2, 3, 4, 5, 6};
  CHECK(k.dot(a.data(), a.data(), a.size()) == 91.0);
  CHECK(k.dot(a.data(), a.data(), 0) == 0.0);
}

TEST_CASE("vector kernels match the scalar reference bit for bit") {
  const auto& ref = kernels::scalar_kernels();
  const auto vs = variants();
  if (vs.empty()) MESSAGE("no vector kernels built for this target");
  std::mt19937_64 rng(99);
  for (const auto* k : vs) {
    CAPTURE(k->name);
    for (std::size_t n = 0; n <= 67; ++n)
      for (int rep = 0; rep < 8; ++rep) {
        const auto x = sample(rng, n);
        const auto y0 = sample(rng, n);
        const double a = std::uniform_real_distribution<double>(-2, 2)(rng);

        auto y1 = y0, y2 = y0;
        ref.axpy_flush(y1.data(), a, x.data(), n, 1e-11);
        k->axpy_flush(y2.data(), a, x.data(), n, 1e-11);
        CHECK(same_bits(y1, y2));

        auto d1 = y0, d2 = y0;
        ref.divide(d1.data(), a, n);
        k->divide(d2.data(), a, n);
        CHECK(same_bits(d1, d2));

        CHECK(same_bits(ref.dot(x.data(), y0.data(), n), k->dot(x.data(), y0.data(), n)));

        // Indexed form over every other position, scattered into a longer row.
        std::vector<int> idx;
        for (std::size_t i = 0; i < n; i += 2) idx.push_back(static_cast<int>(i));
        auto s1 = y0, s2 = y0;
        ref.axpy_indexed_flush(s1.data(), a, x.data(), idx.data(), idx.size(), 1e-11);
        k->axpy_indexed_flush(s2.data(), a, x.data(), idx.data(), idx.size(), 1e-11);
        CHECK(same_bits(s1, s2));
      }
  }
}

TEST_CASE("vector kernels treat NaN like the scalar reference") {
  const auto& ref = kernels::scalar_kernels();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto* k : variants()) {
    const std::vector<double> x{nan, 1.0, 0.0, nan, 2.0, 1.0, 1.0};
    const std::vector<double> y0{1.0, nan, 0.0, 0.0, 1.0, 1.0, 1.0};
    auto y1 = y0, y2 = y0;
    ref.axpy_flush(y1.data(), 1.0, x.data(), x.size(), 1e-11);
    k->axpy_flush(y2.data(), 1.0, x.data(), x.size(), 1e-11);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::isnan(y1[i]) == std::isnan(y2[i]));
  }
}

TEST_CASE("the tableau follows the same path under every kernel set") {
  const Scenario s = load_scenario_file(testing::scenario_path("small_network"));
  StandardFormLP lp = to_standard_form(build_model(s.network, s.catalog, s.config));
  lp.integer.assign(lp.objective.size(), false);
  const auto pre = detail::presolve(lp, 1e-7);

  detail::DenseSimplex reference(pre.lp, {}, kernels::scalar_kernels());
  REQUIRE(reference.solve() == SolveStatus::optimal);
  REQUIRE(reference.minimize_tiebreak() == SolveStatus::optimal);
  for (const auto* k : variants()) {
    CAPTURE(k->name);
    detail::DenseSimplex other(pre.lp, {}, *k);
    REQUIRE(other.solve() == SolveStatus::optimal);
    REQUIRE(other.minimize_tiebreak() == SolveStatus::optimal);
    CHECK(other.iterations() == reference.iterations());
    CHECK(same_bits(other.primal(), reference.primal()));
    CHECK(same_bits(other.objective(), reference.objective()));
  }
}

TEST_CASE("dispatch picks a compiled variant") {
  const auto& k = kernels::active();
  CHECK((k.name == "scalar" || k.name == "avx2" || k.name == "neon"));
}
