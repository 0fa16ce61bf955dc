#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nslife/constants.hpp"
#include "nslife/errors.hpp"
#include "nslife/initial_data.hpp"
#include "nslife/lifespan.hpp"
#include "oracles.hpp"

using namespace nslife;

TEST_SUITE("initial_data") {
  TEST_CASE("divergence free by finite differences") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double h = 1e-5;
    for (int d : {3, 4, 5}) {
      const VortexGaussian a(d, 1.3, 2.0);
      for (int k = 0; k < 1000; ++k) {
        std::vector<double> x(d);
        for (auto& xi : x) xi = u(rng);
        double div = 0.0;
        std::vector<double> vp(d), vm(d);
        for (int j = 0; j < d; ++j) {
          std::vector<double> xp = x, xm = x;
          xp[j] += h;
          xm[j] -= h;
          a.value(xp, vp);
          a.value(xm, vm);
          div += (vp[j] - vm[j]) / (2.0 * h);
        }
        CHECK(std::abs(div) <= 1e-8);
      }
    }
  }

  TEST_CASE("analytic gradient matches finite differences") {
    const VortexGaussian a(3, 0.8, 1.5);
    const std::vector<double> x{0.3, -0.7, 0.4};
    std::vector<double> g(9);
    a.gradient(x, g);
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      std::vector<double> xp = x, xm = x, vp(3), vm(3);
      xp[j] += h;
      xm[j] -= h;
      a.value(xp, vp);
      a.value(xm, vm);
      for (int i = 0; i < 3; ++i) CHECK(g[i * 3 + j] == doctest::Approx((vp[i] - vm[i]) / (2.0 * h)).epsilon(1e-7));
    }
  }

  TEST_CASE("lp norm: reference value, zero field, homogeneity") {
    const VortexGaussian a(3, 1.0, 1.0);
    CHECK(lp_norm(a, 3.0) == doctest::Approx(1.2992590299).epsilon(1e-9));
    CHECK(lp_norm(VortexGaussian(3, 1.0, 0.0), 3.0) == 0.0);
    CHECK(lp_norm(a.scaled(2.5), 4.0) == doctest::Approx(2.5 * lp_norm(a, 4.0)).epsilon(1e-14));
    CHECK_THROWS_AS(lp_norm(a, 0.5), DomainError);
  }

  TEST_CASE("lp norm against 3-D quadrature") {
    const VortexGaussian a(3, 1.0, 1.0);
    for (double dl : {0.2, kDelta0, 0.8}) {
      for (double p : {3.0, 4.0, 3.0 / dl}) {
        CHECK(lp_norm(a, p) == doctest::Approx(oracle::lp_norm(a, p)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("gradient norm: two schemes and width scaling") {
    const VortexGaussian a(3, 1.0, 1.0);
    const double q = oracle::grad_norm_3d(a, 1e-9);
    CHECK(grad_norm(a) == doctest::Approx(q).epsilon(1e-6));
    CHECK(grad_norm(VortexGaussian(3, 1.0, 0.0)) == 0.0);
    CHECK(grad_norm(a) > 0.0);
    const double q2 = oracle::grad_norm_3d(VortexGaussian(3, 2.0, 1.0), 1e-9);
    CHECK(std::log2(q2 / q) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("heat evolution against numerical convolution") {
    const VortexGaussian a(3, 1.0, 1.0);
    const std::vector<std::vector<double>> pts{{0.5, -0.2, 0.1}, {-1.0, 0.7, 0.3}};
    for (double t : {0.1, 1.0}) {
      const VortexGaussian at = a.evolve(t);
      for (const auto& x : pts) {
        std::vector<double> v(3);
        at.value(x, v);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(oracle::heat_convolution(a, t, x, i) - v[i]) <= 1e-6);
      }
    }
  }

  TEST_CASE("semigroup property of the closed form") {
    const VortexGaussian a(4, 0.7, 3.0);
    for (double t1 : {0.01, 0.3, 2.0}) {
      for (double t2 : {0.05, 1.0}) {
        const VortexGaussian two = a.evolve(t1).evolve(t2);
        const VortexGaussian one = a.evolve(t1 + t2);
        CHECK(two.sigma() == doctest::Approx(one.sigma()).epsilon(1e-12));
        CHECK(two.amplitude() == doctest::Approx(one.amplitude()).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("profile peaks at the analytic argmax") {
    const double c3 = unit_grad_norm(3);
    for (double s : {0.5, 1.0, 3.0}) {
      const VortexGaussian a(3, s, 1.0);
      for (double dl : {0.1, kDelta0, 0.7}) {
        const SupResult pk = k0_peak(a, dl);
        CHECK(pk.interior);
        CHECK(pk.t_star == doctest::Approx((1.0 - dl) * s * s / 6.0).epsilon(1e-6));
      }
      const SupResult pk = k0_prime_peak(a, c3);
      CHECK(pk.t_star == doctest::Approx(s * s / 6.0).epsilon(1e-6));
    }
  }

  TEST_CASE("exact K0, K0': monotone and vanishing as T -> 0") {
    const VortexGaussian a(3, 1.0, 1.0);
    double prev0 = 0.0;
    double prev1 = 0.0;
    for (int k = 6; k >= 1; --k) {
      const double T = std::pow(10.0, -k);
      const double v0 = k0_exact(a, kDelta0, T);
      const double v1 = k0_prime_exact(a, T);
      CHECK(v0 >= prev0);
      CHECK(v1 >= prev1);
      prev0 = v0;
      prev1 = v1;
    }
    CHECK(k0_exact(a, kDelta0, 1e-12) < 1e-3 * k0_exact(a, kDelta0, kInfinity));
    CHECK(k0_prime_exact(a, 1e-12) < 1e-5 * k0_prime_exact(a, kInfinity));
    CHECK(k0_exact(a, kDelta0, kInfinity) >= k0_exact(a, kDelta0, 10.0));
  }

  TEST_CASE("bound dominance on random family members") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      const int d = 3 + static_cast<int>(u(rng) * 3.0);
      const double dl = 0.05 + 0.9 * u(rng);
      const VortexGaussian a(d, 0.2 + 3.0 * u(rng), 0.01 + 10.0 * u(rng));
      const ConstantSet c = composite_constants(d, dl);
      const double nd = lp_norm(a, d);
      CHECK(k0_exact(a, dl, kInfinity) <= c.s1 * nd);
      CHECK(k0_prime_exact(a, kInfinity) <= c.s2 * nd);
      const double T = std::pow(10.0, -4.0 + 6.0 * u(rng));
      CHECK(k0_prime_exact(a, T) <= std::sqrt(T) * grad_norm(a) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("norm-based bounds") {
    NormBundle nb;
    nb.theta = 1.0;
    nb.norm_d_plus_theta = 1.0;
    CHECK(k0_bound_from_norms(nb, 3, kDelta0, 1.0, 1.0) == doctest::Approx(16.0).epsilon(1e-15));
    CHECK(k0_bound_from_norms(nb, 3, kDelta0, 1.0, 0.0) == 0.0);
    NormBundle twice = nb;
    twice.norm_d_plus_theta = 2.0;
    CHECK(k0_bound_from_norms(twice, 3, kDelta0, 1.0, 0.3) ==
          doctest::Approx(2.0 * k0_bound_from_norms(nb, 3, kDelta0, 1.0, 0.3)).epsilon(1e-15));

    NormBundle g;
    g.grad_d_norm = 1.0;
    CHECK(k0_prime_bound_from_norms(g, 4.0) == 2.0);
    CHECK(k0_prime_bound_from_norms(g, 0.0) == 0.0);
    CHECK_THROWS_AS(k0_prime_bound_from_norms(NormBundle{}, 1.0), UnavailableBound);
    CHECK_THROWS_AS(k0_bound_from_norms(NormBundle{}, 3, kDelta0, 1.0, 1.0), UnavailableBound);
  }

  TEST_CASE("norm bundle of a vortex") {
    const VortexGaussian a(3, 1.0, 2.0);
    const NormBundle nb = norm_bundle(a, {2.0, 5.0}, 1.0);
    CHECK(nb.lp(3.0).has_value());
    CHECK(*nb.lp(5.0) == lp_norm(a, 5.0));
    CHECK(*nb.norm_d_plus_theta == doctest::Approx(lp_norm(a, 4.0)).epsilon(1e-15));
    CHECK(*nb.grad_d_norm == grad_norm(a));
  }
}
