#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "mixwidth/errors.hpp"
#include "mixwidth/weights.hpp"

using namespace mixwidth;

namespace {

double ev(const WeightSpec& w, std::initializer_list<Index> k) {
  const LatticePoint p(k);
  return evaluate(w, p);
}

double lev(const WeightSpec& w, std::initializer_list<Index> k) {
  const LatticePoint p(k);
  return log_evaluate(w, p);
}

std::vector<WeightSpec> sample_specs(int d) {
  return {WeightSpec::mixed(1.5, 2.0, d), WeightSpec::mixed(0.7, 1.0, d),
          WeightSpec::mixed_inf(2.0, d), WeightSpec::isotropic(1.0, 2.0, d),
          WeightSpec::isotropic_inf(2.5, d), WeightSpec::h1_ratio(2.0, d),
          WeightSpec::h1_ratio(1.3, d)};
}

LatticePoint random_point(std::mt19937_64& rng, int d, Index radius) {
  std::uniform_int_distribution<Index> coord(-radius, radius);
  LatticePoint k(static_cast<std::size_t>(d));
  for (auto& v : k) v = coord(rng);
  return k;
}

}  // namespace

TEST_CASE("evaluate on small points") {
  CHECK(ev(WeightSpec::mixed_inf(3, 2), {0, 0}) == 1.0);
  CHECK(ev(WeightSpec::mixed(1, 2, 2), {1, -1}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ev(WeightSpec::h1_ratio(2, 2), {1, 0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(ev(WeightSpec::mixed_inf(2, 3), {2, 1, 0}) == 4.0);
}

TEST_CASE("log_evaluate on small points") {
  CHECK(lev(WeightSpec::mixed_inf(1, 1), {1}) == 0.0);
  CHECK(lev(WeightSpec::mixed(1, 2, 1), {1}) == doctest::Approx(std::log(2.0) / 2).epsilon(1e-15));
  CHECK(lev(WeightSpec::mixed_inf(2, 2), {3, 2}) == doctest::Approx(std::log(36.0)).epsilon(1e-15));
}

TEST_CASE("weight at the origin is one") {
  for (int d = 1; d <= 4; ++d)
    for (const auto& w : sample_specs(d)) {
      const LatticePoint zero(static_cast<std::size_t>(d), 0);
      CHECK(evaluate(w, zero) == 1.0);
    }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(WeightSpec::mixed(0.0, 2, 2), DomainError);
  CHECK_THROWS_AS(WeightSpec::mixed(1.0, 0.0, 2), DomainError);
  CHECK_THROWS_AS(WeightSpec::mixed_inf(1.0, 0), DomainError);
  CHECK_THROWS_AS(WeightSpec::h1_ratio(1.0, 2), DomainError);
  CHECK_THROWS_AS(ev(WeightSpec::mixed_inf(1, 2), {1, 2, 3}), DomainError);
  CHECK(parse_family("mixed-sr") == Family::MixedSR);
  CHECK_FALSE(parse_family("mixed").has_value());
  CHECK(family_names().size() == 5);
}

TEST_CASE("sign and permutation symmetry") {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 4; ++d)
    for (const auto& w : sample_specs(d))
      for (int trial = 0; trial < 10000 / 28; ++trial) {
        LatticePoint k = random_point(rng, d, 50);
        const double base = log_evaluate(w, k);
        LatticePoint k2 = k;
        std::shuffle(k2.begin(), k2.end(), rng);
        for (auto& v : k2)
          if (rng() & 1) v = -v;
        CHECK(log_evaluate(w, k2) == base);
        CHECK(canonical(k2) == canonical(k));
      }
}

TEST_CASE("nondecreasing in each coordinate") {
  std::mt19937_64 rng(11);
  for (int d = 1; d <= 4; ++d)
    for (const auto& w : sample_specs(d))
      for (int trial = 0; trial < 10000 / 28; ++trial) {
        const LatticePoint k = random_point(rng, d, 40);
        const double base = evaluate(w, k);
        for (std::size_t j = 0; j < k.size(); ++j) {
          LatticePoint up = k;
          up[j] = std::abs(up[j]) + 1;
          CHECK(evaluate(w, up) >= base);
        }
      }
}

TEST_CASE("weights grow without bound along rays") {
  for (int d = 1; d <= 3; ++d)
    for (const auto& w : sample_specs(d)) {
      double prev = 0.0;
      for (Index m = 1; m <= 1'000'000; m *= 10) {
        const LatticePoint axis = [&] {
          LatticePoint p(static_cast<std::size_t>(d), 0);
          p[0] = m;
          return p;
        }();
        const double v = evaluate(w, axis);
        CHECK(v > prev);
        prev = v;
      }
      CHECK(prev > 50.0);
    }
}

TEST_CASE("exp of log_evaluate matches evaluate") {
  std::mt19937_64 rng(13);
  for (int d = 1; d <= 3; ++d)
    for (const auto& w : sample_specs(d))
      for (int trial = 0; trial < 300; ++trial) {
        const Index radius = trial % 3 == 0 ? 1'000'000 : (trial % 3 == 1 ? 1000 : 10);
        const LatticePoint k = random_point(rng, d, radius);
        const double v = evaluate(w, k);
        if (!std::isfinite(v)) continue;
        CHECK(std::exp(log_evaluate(w, k)) == doctest::Approx(v).epsilon(1e-12));
      }
}

TEST_CASE("mixed-inf with integer s equals the exact integer product") {
  using boost::multiprecision::cpp_int;
  std::mt19937_64 rng(17);
  for (int s = 1; s <= 3; ++s)
    for (int d = 1; d <= 3; ++d) {
      const WeightSpec w = WeightSpec::mixed_inf(s, d);
      for (int trial = 0; trial < 200; ++trial) {
        const LatticePoint k = random_point(rng, d, 1000);
        cpp_int exact = 1;
        for (Index v : k) exact *= boost::multiprecision::pow(cpp_int(std::max<Index>(1, std::abs(v))),
                                                              static_cast<unsigned>(s));
        const double ref = exact.convert_to<double>();
        const double got = evaluate(w, k);
        CHECK(got >= std::nextafter(ref, 0.0));
        CHECK(got <= std::nextafter(ref, INFINITY));
      }
    }
}

TEST_CASE("h1-ratio reduces to (1+k^2)^((s-1)/2) in one dimension") {
  const WeightSpec w = WeightSpec::h1_ratio(3.0, 1);
  for (Index m = 0; m <= 50; ++m)
    CHECK(ev(w, {m}) == doctest::Approx(1.0 + double(m) * double(m)).epsilon(1e-14));
}
