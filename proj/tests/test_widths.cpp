#include <doctest.h>

#include <cmath>

#include "mixwidth/errors.hpp"
#include "mixwidth/widths.hpp"

using namespace mixwidth;

namespace {

constexpr WidthKind kAllKinds[] = {WidthKind::Approximation, WidthKind::Kolmogorov,
                                   WidthKind::Bernstein, WidthKind::Weyl};

SupResult exhaustive_sup(const SigmaPrefix& p, std::size_t n, std::size_t last) {
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t h = n; h <= last; ++h) {
    const double ratio = static_cast<double>(h - n + 1) / p.cum_inv_sq(h);
    if (ratio > best) {
      best = ratio;
      arg = h;
    }
  }
  return {std::sqrt(best), arg};
}

}  // namespace

TEST_CASE("width examples") {
  const SigmaPrefix p = sigma_prefix(WeightSpec::mixed_inf(2, 2), 200);
  CHECK(width(p, {Embedding::AtoA, WidthKind::Approximation, 5}).value() == 1.0);
  CHECK(width(p, {Embedding::AtoL2, WidthKind::Bernstein, 4}).value() == 0.5);
  CHECK(width(p, {Embedding::AtoL2, WidthKind::Approximation, 1}).value() == 1.0);

  const SigmaPrefix h = sigma_prefix(WeightSpec::h1_ratio(2, 1), 10);
  CHECK(width(h, {Embedding::HmixToH1, WidthKind::Approximation, 2}).value() ==
        doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("sup over h examples") {
  const SigmaPrefix ones(WeightSpec::mixed_inf(1, 1), std::vector<double>(100, 1.0));
  const SupResult r = sup_over_h(ones, 1);
  CHECK(r.value == 1.0);
  CHECK(r.argmax == 1);

  const SigmaPrefix p = sigma_prefix(WeightSpec::mixed_inf(1, 1), 10000);
  const SupResult got = sup_over_h(p, 10);
  const SupResult ref = exhaustive_sup(p, 10, 10000);
  CHECK(got.value == doctest::Approx(ref.value).epsilon(1e-12));
  CHECK(got.argmax == ref.argmax);
}

TEST_CASE("maximizer sits in the predicted window") {
  const double s = 1.0;
  const double n = 1000.0;
  const SigmaPrefix p = sigma_prefix(WeightSpec::mixed_inf(s, 1), 20000);
  const SupResult r = sup_over_h(p, 1000);
  const double slack = std::pow(n, 0.9);
  CHECK(static_cast<double>(r.argmax) >= (1 + 1 / (2 * s)) * (n - 1) - slack);
  CHECK(static_cast<double>(r.argmax) <= (1 + 1 / s) * (n - 1) + slack);
}

TEST_CASE("sup over h matches an exhaustive scan") {
  for (const auto& w : {WeightSpec::mixed_inf(1, 2), WeightSpec::mixed(1.5, 2, 2),
                        WeightSpec::h1_ratio(2, 2)}) {
    const std::size_t N = 20000;
    const SigmaPrefix p = sigma_prefix(w, N);
    for (std::size_t n = 1; n <= 1000; n += (n < 50 ? 1 : 37)) {
      const SupResult got = sup_over_h(p, n);
      const SupResult ref = exhaustive_sup(p, n, N);
      REQUIRE(got.value == doctest::Approx(ref.value).epsilon(1e-12));
      REQUIRE(got.argmax == ref.argmax);
    }
  }
}

TEST_CASE("prefix too short is reported") {
  const SigmaPrefix p = sigma_prefix(WeightSpec::mixed_inf(1, 1), 30);
  CHECK_THROWS_AS(sup_over_h(p, 25), PrefixTooShort);
  CHECK_THROWS_AS(width(p, {Embedding::AtoA, WidthKind::Weyl, 31}), PrefixTooShort);
  const SigmaPrefix q = prefix_for_widths(WeightSpec::mixed_inf(1, 1), Embedding::AtoL2,
                                          WidthKind::Approximation, 25, 25);
  CHECK_NOTHROW(sup_over_h(q, 25));
}

TEST_CASE("query validation") {
  const SigmaPrefix p = sigma_prefix(WeightSpec::mixed_inf(1, 2), 50);
  CHECK_THROWS_AS(width(p, {Embedding::AtoLp, WidthKind::Approximation, 3, 2.0}), DomainError);
  CHECK_THROWS_AS(width(p, {Embedding::AtoLp, WidthKind::Approximation, 3, INFINITY}), DomainError);
  CHECK_THROWS_AS(width(p, {Embedding::AmixToH1, WidthKind::Approximation, 3}), DomainError);
  CHECK_THROWS_AS(width(p, {Embedding::AtoA, WidthKind::Approximation, 0}), DomainError);
  const SigmaPrefix iso = sigma_prefix(WeightSpec::isotropic(1, 2, 2), 50);
  CHECK_THROWS_AS(width(iso, {Embedding::CmixToL2, WidthKind::Bernstein, 3}), DomainError);
  const SigmaPrefix frac = sigma_prefix(WeightSpec::mixed(1.5, 2, 2), 50);
  CHECK_THROWS_AS(width(frac, {Embedding::CmixToL2, WidthKind::Bernstein, 3}), DomainError);
  CHECK(parse_embedding("a-to-lp") == Embedding::AtoLp);
  CHECK_FALSE(parse_kind("gelfand").has_value());
}

TEST_CASE("a-to-a and f-to-l2 coincide with sigma") {
  const SigmaPrefix p = sigma_prefix(WeightSpec::mixed(1, 2, 3), 3000);
  for (WidthKind k : kAllKinds)
    for (std::size_t n = 1; n <= p.size(); ++n) {
      REQUIRE(width(p, {Embedding::AtoA, k, n}).value() == p.sigma(n));
      REQUIRE(width(p, {Embedding::FtoL2, k, n}).value() == p.sigma(n));
    }
}

TEST_CASE("chain v <= u <= sigma and monotone series") {
  for (const auto& w : {WeightSpec::mixed_inf(1, 2), WeightSpec::isotropic_inf(2, 2),
                        WeightSpec::h1_ratio(1.5, 2)}) {
    const SigmaPrefix p = prefix_for_widths(w, Embedding::AtoL2, WidthKind::Approximation, 1, 2000);
    const auto u = width_series(p, Embedding::AtoL2, WidthKind::Approximation, 1, 2000);
    const auto k = width_series(p, Embedding::AtoL2, WidthKind::Kolmogorov, 1, 2000);
    const auto v = width_series(p, Embedding::AtoL2, WidthKind::Bernstein, 1, 2000);
    const auto x = width_series(p, Embedding::AtoL2, WidthKind::Weyl, 1, 2000);
    for (std::size_t n = 1; n <= 2000; ++n) {
      const std::size_t i = n - 1;
      REQUIRE(u[i].value() == k[i].value());
      REQUIRE(v[i].value() == x[i].value());
      REQUIRE(v[i].value() <= u[i].value());
      REQUIRE(u[i].value() <= p.sigma(n));
      REQUIRE(u[i].value() == width(p, {Embedding::AtoL2, WidthKind::Approximation, n}).value());
      if (n > 1) {
        REQUIRE(u[i].value() <= u[i - 1].value());
        REQUIRE(v[i].value() <= v[i - 1].value());
      }
    }
  }
}

TEST_CASE("lp bounds nest between l2 and a") {
  const SigmaPrefix p = prefix_for_widths(WeightSpec::mixed(2, 2, 2), Embedding::AtoLp,
                                          WidthKind::Approximation, 1, 500, 1, 4.0);
  CHECK_THROWS_AS(prefix_for_widths(WeightSpec::mixed(2, 2, 2), Embedding::AtoLp,
                                    WidthKind::Approximation, 1, 500),
                  DomainError);
  for (std::size_t n = 1; n <= 500; ++n) {
    const WidthValue lp = width(p, {Embedding::AtoLp, WidthKind::Approximation, n, 4.0});
    const WidthValue linf = width(p, {Embedding::AtoLinf, WidthKind::Approximation, n});
    const WidthValue l2 = width(p, {Embedding::AtoL2, WidthKind::Approximation, n});
    REQUIRE_FALSE(lp.exact);
    REQUIRE(lp.lower == l2.value());
    REQUIRE(lp.lower <= lp.upper);
    REQUIRE(lp.upper == linf.upper);
    REQUIRE(lp.upper == p.sigma(n));
  }
}

TEST_CASE("cmix bounds") {
  const WeightSpec w = WeightSpec::mixed(2, 2, 2);
  CHECK(cmix_companion_spec(w) == WeightSpec::mixed(2, 4, 2));
  const SigmaPrefix p = prefix_for_widths(w, Embedding::CmixToL2, WidthKind::Approximation, 1, 300);
  const auto series = width_series(p, Embedding::CmixToL2, WidthKind::Approximation, 1, 300);
  const SigmaPrefix comp = sigma_prefix(cmix_companion_spec(w), 300);
  for (std::size_t n = 1; n <= 300; ++n) {
    const WidthValue one = width(p, {Embedding::CmixToL2, WidthKind::Approximation, n}, &comp);
    REQUIRE(series[n - 1].lower == one.lower);
    REQUIRE(series[n - 1].upper == one.upper);
    REQUIRE(one.lower <= one.upper);
    REQUIRE(one.upper == 2.0 * comp.sigma(n));
  }
  CHECK(width(p, {Embedding::CmixToL2, WidthKind::Bernstein, 7}).exact);
}

TEST_CASE("s_lambda_error equals sigma_n") {
  CHECK(s_lambda_error(WeightSpec::mixed_inf(2, 2), 5) == 1.0);
  CHECK(s_lambda_error(WeightSpec::mixed_inf(1, 1), 4) == 0.5);
  CHECK(s_lambda_error(WeightSpec::mixed(1, 2, 2), 1) == 1.0);
  for (const auto& w : {WeightSpec::mixed(1, 2, 2), WeightSpec::h1_ratio(2, 2)}) {
    const SigmaPrefix p = sigma_prefix(w, 1000);
    for (std::size_t n = 1; n <= 1000; n += (n < 100 ? 1 : 13))
      REQUIRE(s_lambda_error(w, n) == p.sigma(n));
  }
}
