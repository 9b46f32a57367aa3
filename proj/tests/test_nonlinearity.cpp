#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wadams/nonlinearity.hpp"
#include "wadams/radial_core.hpp"

using namespace wadams;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("parameter validity") {
  GrowthParams g;
  CHECK(g.valid());
  CHECK(g.m() == doctest::Approx(4.0));
  GrowthParams low = g;
  low.p = 3.0;  // needs min{p,q} > 2/(1-beta) = 4
  CHECK_FALSE(low.valid());
  GrowthParams lowq = g;
  lowq.q = 4.0;
  CHECK_FALSE(lowq.valid());
}

TEST_CASE("model values") {
  GrowthParams g;  // p=5, q=9, alpha=1, beta=0.5, C=1
  CHECK(f_model(-1.0, g) == 0.0);
  CHECK(f_model(0.0, g) == 0.0);
  CHECK(F_model(0.0, g) == 0.0);
  // F(1) = e - 1, f(1) = (p + m) e - p = 9e - 5
  CHECK(F_model(1.0, g) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(f_model(1.0, g) ==
        doctest::Approx(9.0 * std::exp(1.0) - 5.0).epsilon(1e-14));
  // overflow guard
  CHECK(std::isinf(F_model(10.0, g)));
  CHECK(std::isinf(f_model(10.0, g)));
}

TEST_CASE("f is the derivative of F") {
  GrowthParams g;
  for (double s : {0.3, 0.8, 1.0, 1.7}) {
    double h = 1e-6 * s;
    double fd = (F_model(s + h, g) - F_model(s - h, g)) / (2.0 * h);
    CHECK(f_model(s, g) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("fprime is the derivative of f") {
  GrowthParams g;
  for (double s : {0.3, 0.8, 1.0, 1.7}) {
    double h = 1e-6 * s;
    double fd = (f_model(s + h, g) - f_model(s - h, g)) / (2.0 * h);
    CHECK(fprime_model(s, g) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("growth sample ladder") {
  auto s = growth_samples(1e-3, 10.0, 25);
  REQUIRE(s.size() == 25);
  CHECK(s.front() == doctest::Approx(1e-3));
  CHECK(s.back() == doctest::Approx(10.0));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("G1 bound certifies the default model and rejects q = p") {
  GrowthParams g;
  auto samples = growth_samples(1e-4, 100.0, 400);
  auto ok = check_F1(g, samples);
  CHECK(ok.pass());

  GrowthParams bad = g;
  bad.q = bad.p;  // s^(q-1)(e^t - 1) then grows strictly slower than f
  auto rep = check_F1(bad, samples);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("G2 primitive bound") {
  GrowthParams g;
  auto samples = growth_samples(1.0, 100.0, 200);
  auto rep = check_F2(g, /*M0=*/1.0, /*s0=*/1.0, samples);
  CHECK(rep.pass());
  bool found = false;
  for (const auto& e : rep.entries) {
    if (e.name.rfind("M0_min", 0) == 0) {
      found = true;
      CHECK(e.value > 0.0);
      CHECK(e.value < 1.0);
    }
  }
  CHECK(found);
}

TEST_CASE("G3 tail ratio and its threshold") {
  GrowthParams g;
  F3Result r = check_F3(g, 50.0);
  CHECK(r.conclusive);
  CHECK(r.pass);
  // threshold 2/(pi^2 e^4) (alpha_beta/alpha)^(1-beta) = 16/e^4 at the default
  CHECK(r.kappa_threshold ==
        doctest::Approx(16.0 / std::exp(4.0)).epsilon(1e-10));
  CHECK(r.liminf_estimate > r.kappa_threshold);
}

TEST_CASE("mountain-pass level ceiling") {
  // at alpha = alpha_beta the ceiling is 1/2
  CHECK(m_star(alpha_beta(0.5), 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  // at alpha = 1, beta = 0.5: (1/2) (64 pi^4)^(1/2) = 4 pi^2
  CHECK(m_star(1.0, 0.5) ==
        doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
}

TEST_CASE("checker accepts override pairs") {
  GrowthParams g;
  NonlinearityFns fns;
  fns.f = [](double) { return 0.0; };  // trivially dominated
  fns.F = [](double) { return 0.0; };
  auto samples = growth_samples(1e-2, 10.0, 50);
  CHECK(check_F1(g, samples, fns).pass());
  CHECK(check_F2(g, 1.0, 1.0, samples, fns).pass());
}
