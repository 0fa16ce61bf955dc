#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nslife/errors.hpp"
#include "nslife/kernels/recurrence_batch.hpp"
#include "nslife/recurrence.hpp"

using namespace nslife;

namespace {

ScalarRecurrence random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScalarRecurrence r;
  r.beta = 0.95 * u(rng);
  r.gamma = 0.05 + 3.0 * u(rng);
  r.alpha = 0.999 * u(rng) * (1.0 - r.beta) * (1.0 - r.beta) / (4.0 * r.gamma);
  const double z = upper_root(r.alpha, r.beta, r.gamma);
  r.x0 = 0.999 * u(rng) * z;
  return r;
}

}  // namespace

TEST_SUITE("recurrence") {
  TEST_CASE("scalar bound: reference cases") {
    const auto z = fixed_point_bound({3.0 / 16.0, 0.0, 1.0, 3.0 / 16.0});
    REQUIRE(z.ok());
    CHECK(z.value() == doctest::Approx(0.75).epsilon(1e-15));
    const Trajectory tr = iterate_worst_case(ScalarRecurrence{3.0 / 16.0, 0.0, 1.0, 3.0 / 16.0}, 10000);
    CHECK(tr.sup < 0.75);
    CHECK(tr.sup == doctest::Approx(0.25).epsilon(1e-6));

    const auto z0 = fixed_point_bound({0.0, 0.0, 1.0, 0.0});
    REQUIRE(z0.ok());
    CHECK(z0.value() == 1.0);
    CHECK(iterate_worst_case(ScalarRecurrence{0.0, 0.0, 1.0, 0.0}, 100).sup == 0.0);

    const auto bad = fixed_point_bound({1.0, 1.0, 1.0, 0.1});
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.failure().slack == doctest::Approx(-4.0));
    CHECK_THROWS_AS(fixed_point_bound({0.1, 0.0, 0.0, 0.0}), DomainError);
  }

  TEST_CASE("Z is a root") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 1000; ++k) {
      const ScalarRecurrence r = random_admissible(rng);
      const double z = fixed_point_bound(r).value();
      CHECK(r.alpha + r.beta * z + r.gamma * z * z == doctest::Approx(z).epsilon(1e-10));
    }
  }

  TEST_CASE("linear recurrence converges geometrically") {
    const Trajectory tr = iterate_worst_case(ScalarRecurrence{0.3, 0.4, 0.0, 0.0}, 200);
    CHECK(tr.x.back() == doctest::Approx(0.5).epsilon(1e-14));
    const double e1 = std::abs(tr.x[10] - 0.5);
    const double e2 = std::abs(tr.x[11] - 0.5);
    CHECK(e2 / e1 == doctest::Approx(0.4).epsilon(1e-6));
  }

  TEST_CASE("1e4 random admissible scalar draws stay below Z") {
    std::mt19937_64 rng(17);
    std::vector<ScalarRecurrence> recs(10000);
    for (auto& r : recs) r = random_admissible(rng);
    const auto serial = kernels::extremal_sup_serial(recs, 10000);
    const auto par = kernels::extremal_sup_omp(recs, 10000);
    int bad = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const double z = fixed_point_bound(recs[i]).value();
      if (serial[i].diverged || serial[i].sup_x > z + 1e-12) ++bad;
      CHECK(serial[i].sup_x == par[i].sup_x);
    }
    CHECK(bad == 0);
  }

  TEST_CASE("failing hypotheses diverge past the would-be bound") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
      ScalarRecurrence r;
      r.beta = 0.9 * u(rng);
      r.gamma = 0.1 + u(rng);
      const double crit = (1.0 - r.beta) * (1.0 - r.beta) / (4.0 * r.gamma);
      r.alpha = crit * (1.1 + u(rng));
      const auto fb = fixed_point_bound(r);
      REQUIRE_FALSE(fb.ok());
      const double would_be = (1.0 - r.beta) / (2.0 * r.gamma);
      const auto v = kernels::extremal_sup(r, 10000);
      CHECK((v.diverged || v.sup_x > would_be));
    }
    // x0 above Z
    for (int k = 0; k < 2000; ++k) {
      ScalarRecurrence r = random_admissible(rng);
      const double z = upper_root(r.alpha, r.beta, r.gamma);
      r.x0 = z * (1.0 + 1e-3 + u(rng));
      REQUIRE_FALSE(fixed_point_bound(r).ok());
      CHECK(kernels::extremal_sup(r, 10000).diverged);
    }
  }

  TEST_CASE("lower root grows with alpha") {
    for (double a = 0.0; a < 0.24; a += 0.01) {
      CHECK(lower_root(a, 0.0, 1.0) < lower_root(a + 0.01, 0.0, 1.0));
      CHECK(upper_root(a, 0.0, 1.0) > upper_root(a + 0.01, 0.0, 1.0));
    }
    // A trajectory bound stays valid when alpha grows admissibly.
    const Trajectory small = iterate_worst_case(ScalarRecurrence{0.1, 0.0, 1.0, 0.0}, 10000);
    const Trajectory big = iterate_worst_case(ScalarRecurrence{0.2, 0.0, 1.0, 0.0}, 10000);
    CHECK(small.sup <= big.sup);
    CHECK(big.sup <= fixed_point_bound({0.2, 0.0, 1.0, 0.0}).value());
  }

  TEST_CASE("coupled bound: symmetric and small-data cases") {
    const auto b = coupled_bound({3.0 / 16.0, 3.0 / 16.0, 1.0, 1.0, 3.0 / 16.0, 3.0 / 16.0});
    REQUIRE(b.ok());
    CHECK(b.value().det1 == 0.0);
    CHECK(b.value().x_bound == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(b.value().y_bound == doctest::Approx(0.75).epsilon(1e-15));
    const CoupledTrajectory tr = iterate_worst_case(CoupledRecurrence{3.0 / 16.0, 3.0 / 16.0, 1.0, 1.0, 3.0 / 16.0, 3.0 / 16.0}, 10000);
    CHECK(tr.sup_x <= 0.75);
    CHECK(tr.sup_y <= 0.75);

    const double eps = 1e-6;
    const auto s = coupled_bound({eps, eps, 1.0, 1.0, eps, eps});
    REQUIRE(s.ok());
    CHECK(s.value().x_bound < 1.0);
    CHECK(s.value().x_bound > 1.0 - 1e-5);
    const CoupledTrajectory st = iterate_worst_case(CoupledRecurrence{eps, eps, 1.0, 1.0, eps, eps}, 10000);
    CHECK(st.sup_x <= 2.0 * eps);
    CHECK(st.sup_y <= 2.0 * eps);
  }

  TEST_CASE("coupled bound: hypothesis failures") {
    const auto b = coupled_bound({1.0, 1.0, 1.0, 1.0, 0.1, 0.1});
    CHECK_FALSE(b.ok());
    CHECK_THROWS_AS(coupled_bound({0.0, 0.1, 1.0, 1.0, 0.0, 0.0}), DomainError);
  }

  TEST_CASE("1e4 random admissible coupled draws stay below the bounds") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<CoupledRecurrence> recs;
    std::vector<CoupledBound> bounds;
    while (recs.size() < 10000) {
      CoupledRecurrence r;
      r.beta1 = 0.1 + 2.0 * u(rng);
      r.beta2 = 0.1 + 2.0 * u(rng);
      r.alpha1 = 0.3 * u(rng) * u(rng) + 1e-9;
      r.alpha2 = 0.3 * u(rng) * u(rng) + 1e-9;
      r.x0 = r.alpha1;
      r.y0 = r.alpha2;
      const auto probe = coupled_bound(r);
      if (!probe) continue;
      r.x0 = u(rng) * probe.value().x_bound * 0.999;
      r.y0 = u(rng) * probe.value().y_bound * 0.999;
      const auto b = coupled_bound(r);
      if (!b) continue;
      recs.push_back(r);
      bounds.push_back(b.value());
    }
    const auto serial = kernels::extremal_sup_serial(recs, 10000);
    const auto par = kernels::extremal_sup_omp(recs, 10000);
    int bad = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (serial[i].diverged || serial[i].sup_x > bounds[i].x_bound + 1e-12 ||
          serial[i].sup_y > bounds[i].y_bound + 1e-12) {
        ++bad;
      }
      CHECK(serial[i].sup_x == par[i].sup_x);
      CHECK(serial[i].sup_y == par[i].sup_y);
    }
    CHECK(bad == 0);
  }
}
