#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wadams/weights.hpp"

using namespace wadams;

namespace {

const ConditionEntry* find_entry(const ConditionReport& rep,
                                 const std::string& prefix) {
  for (const auto& e : rep.entries)
    if (e.name.rfind(prefix, 0) == 0) return &e;
  return nullptr;
}

WeightProfile power_profile(double beta, double a) {
  WeightProfile p;
  p.beta = beta;
  p.chi = ChiSpec::power(a);
  return p;
}

}  // namespace

TEST_CASE("chi power evaluation") {
  ChiSpec chi = ChiSpec::power(3.0);
  CHECK(chi.eval(1.0) == doctest::Approx(1.0));
  CHECK(chi.eval(2.0) == doctest::Approx(8.0));
  CHECK(chi.eval(10.0) == doctest::Approx(1000.0));
  CHECK(chi.inf_estimate() == doctest::Approx(1.0));
}

TEST_CASE("chi table interpolation and tail") {
  // table of y^3 samples; past the table the declared tail exponent takes over
  std::vector<double> r = {1, 2, 4, 8, 16};
  std::vector<double> v;
  for (double y : r) v.push_back(y * y * y);
  ChiSpec chi = ChiSpec::table(r, v, 3.0);
  CHECK(chi.eval(1.0) == doctest::Approx(1.0));
  CHECK(chi.eval(16.0) == doctest::Approx(4096.0));
  // interpolation error of monotone cubic on the cube stays small
  CHECK(chi.eval(3.0) == doctest::Approx(27.0).epsilon(0.05));
  // tail: vals.back() * (y / r.back())^3
  CHECK(chi.eval(32.0) == doctest::Approx(4096.0 * 8.0).epsilon(1e-12));
}

TEST_CASE("weight evaluation across the kink") {
  WeightProfile p = power_profile(0.5, 3.0);
  CHECK(p.eval(0.5) == doctest::Approx(std::sqrt(std::log(std::exp(1.0) / 0.5))));
  CHECK(p.eval(1.0 - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.eval(1.0) == doctest::Approx(1.0));
  CHECK(p.eval(2.0) == doctest::Approx(8.0));
  // deep inside the log regime the weight grows without bound
  CHECK(p.eval(1e-12) > 5.0);
}

TEST_CASE("profile validity") {
  std::string why;
  CHECK(power_profile(0.5, 3.0).valid(&why));
  CHECK_FALSE(power_profile(0.0, 3.0).valid(&why));
  CHECK_FALSE(power_profile(1.0, 3.0).valid(&why));
  CHECK_THROWS(ChiSpec::power(-1.0));
}

TEST_CASE("structural conditions pass for chi = y^3") {
  auto rep = check_structural_conditions(power_profile(0.5, 3.0));
  CHECK(rep.pass());
  const auto* c0 = find_entry(rep, "C0");
  REQUIRE(c0 != nullptr);
  // int_1^inf 1/(y^4) dy = 1/3
  CHECK(c0->value == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  const auto* c0p = find_entry(rep, "C0'");
  REQUIRE(c0p != nullptr);
  // int_1^inf y^-2 dy = 1
  CHECK(c0p->value == doctest::Approx(1.0).epsilon(1e-6));
  for (const char* name : {"C1", "C2", "C3"}) {
    const auto* e = find_entry(rep, name);
    REQUIRE(e != nullptr);
    CHECK(e->pass);
    CHECK(std::isfinite(e->value));
  }
}

TEST_CASE("structural negative control: chi = y^4.5 breaks C2") {
  auto rep = check_structural_conditions(power_profile(0.5, 4.5));
  CHECK_FALSE(rep.pass());
  const auto* c2 = find_entry(rep, "C2");
  REQUIRE(c2 != nullptr);
  // (1/r^8) int_1^r t^7.5 dt ~ r^0.5 is unbounded
  CHECK_FALSE(c2->pass);
}

TEST_CASE("structural negative control: chi = y^1.5 breaks C0'") {
  auto rep = check_structural_conditions(power_profile(0.5, 1.5));
  CHECK_FALSE(rep.pass());
  const auto* c0p = find_entry(rep, "C0'");
  REQUIRE(c0p != nullptr);
  CHECK_FALSE(c0p->pass);  // int y^-0.5 dy diverges
}

TEST_CASE("A2 ball products bounded for chi = y^3") {
  auto rep = check_a2(power_profile(0.5, 3.0), default_ball_suite());
  CHECK(rep.pass());
  const auto* sum = find_entry(rep, "A2_empirical_constant");
  REQUIRE(sum != nullptr);
  // products are >= 1 by Cauchy-Schwarz and should stay modest here
  CHECK(sum->value >= 1.0);
  CHECK(sum->value < 1e3);
  // every ball entry must have converged quadrature and product >= 1 - tol
  for (const auto& e : rep.entries)
    if (e.name.rfind("ball", 0) == 0) CHECK(e.value >= 1.0 - 1e-6);
}

TEST_CASE("growth integrals pass for chi = y^3 with J2 exemptions recorded") {
  auto rep = check_growth_conditions_D(power_profile(0.5, 3.0), 12);
  CHECK(rep.pass());
  const auto* ex = find_entry(rep, "D2_exempt");
  REQUIRE(ex != nullptr);  // k <= 2(1-beta) = 1 is structurally divergent
  const auto* j1 = find_entry(rep, "D1");
  const auto* j2 = find_entry(rep, "D2");
  REQUIRE(j1 != nullptr);
  REQUIRE(j2 != nullptr);
  CHECK(j1->pass);
  CHECK(j2->pass);
  CHECK(std::isfinite(j1->value));
  CHECK(std::isfinite(j2->value));
}

TEST_CASE("growth integrals diverge for chi = y^1.5") {
  auto rep = check_growth_conditions_D(power_profile(0.5, 1.5), 12);
  CHECK_FALSE(rep.pass());
}
