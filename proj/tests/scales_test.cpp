#include <doctest.h>

#include <cmath>

#include "gogc/error.hpp"
#include "gogc/scales.hpp"
#include "support.hpp"

using namespace gogc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IllegalLink;
}

ResolvedScale resolved(ScaleDef def, const DataRegistry& reg = {}) {
  ResolvedDomain d = resolve_domain(def, reg);
  return ResolvedScale(std::move(def), std::move(d));
}

}  // namespace

TEST_SUITE("scales") {

TEST_CASE("domain resolution") {
  DataRegistry reg;
  reg.create("t", load_csv("n,s\n3,b\n1,a\n2,b", "t"));
  ScaleDef lin{"x", ScaleKind::Linear, DomainRef{"t", "n"}, NumericPair{0, 1}};
  CHECK(resolve_domain(lin, reg).extent.lo == 1.0);
  CHECK(resolve_domain(lin, reg).extent.hi == 3.0);
  ScaleDef ord{"c", ScaleKind::Ordinal, DomainRef{"t", "s"}, NumericPair{0, 1}};
  CHECK(resolve_domain(ord, reg).categories == std::vector<DataValue>{text_value("b"), text_value("a")});
  ScaleDef expl{"w", ScaleKind::Linear, std::vector<double>{300, 450}, NumericPair{0, 1}};
  CHECK(resolve_domain(expl, reg).extent.lo == 300.0);
  ScaleDef missing{"m", ScaleKind::Linear, DomainRef{"nope", "n"}, NumericPair{0, 1}};
  CHECK(code_of([&] { resolve_domain(missing, reg); }) == ErrorCode::UnknownDataset);
  ScaleDef text{"m", ScaleKind::Linear, DomainRef{"t", "s"}, NumericPair{0, 1}};
  CHECK(code_of([&] { resolve_domain(text, reg); }) == ErrorCode::NonNumericField);
}

TEST_CASE("degenerate extents widen by half a unit with a warning") {
  Warnings w;
  ScaleDef d{"x", ScaleKind::Linear, std::vector<double>{5, 5}, NumericPair{0, 1}};
  ResolvedDomain r = resolve_domain(d, {}, &w);
  CHECK(r.extent.lo == 4.5);
  CHECK(r.extent.hi == 5.5);
  CHECK(w.size() == 1);
}

TEST_CASE("linear") {
  CHECK(scale_linear({0, 10}, {0, 100}, 5) == 50.0);
  CHECK(scale_linear({0, 10}, {0, 330}, 10) == 330.0);
  CHECK(scale_linear({0, 10}, {100, 0}, 2.5) == 75.0);
}

TEST_CASE("log") {
  CHECK(scale_log({1, 100}, {0, 1}, 10) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(scale_log({1, 100}, {0, 1}, 100) == 1.0);
  CHECK(code_of([] { scale_log({1, 100}, {0, 1}, 0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { scale_log({-1, 100}, {0, 1}, 5); }) == ErrorCode::DomainError);
}

TEST_CASE("exp is a power-law scale") {
  CHECK(scale_exp({0, 10}, {0, 100}, 2, 5) == 25.0);
  CHECK(scale_exp({0, 4}, {0, 1}, 0.5, 1) == 0.5);
  CHECK(code_of([] { scale_exp({-1, 4}, {0, 1}, 0.5, 1); }) == ErrorCode::DomainError);
}

TEST_CASE("quantile") {
  std::vector<double> s = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<std::string> two = {"lo", "hi"};
  CHECK(scale_quantile<std::string>(s, two, 3) == "lo");
  CHECK(scale_quantile<std::string>(s, two, 5.5) == "hi");
  std::vector<std::string> one = {"only"};
  CHECK(scale_quantile<std::string>(s, one, -100) == "only");
  CHECK(quantile_bucket(quantile_thresholds(s, 4), -1) == 0);
  CHECK(code_of([] { quantile_thresholds(std::vector<double>{}, 2); }) == ErrorCode::EmptyInput);
}

TEST_CASE("ordinal bands and wrapping") {
  CHECK(scale_ordinal_band(0, 2, {0, 100}) == 25.0);
  CHECK(scale_ordinal_band(1, 2, {0, 100}) == 75.0);
  CHECK(scale_ordinal_band(0, 1, {0, 330}) == 165.0);
  ScaleDef def{"c", ScaleKind::Ordinal, std::vector<DataValue>{text_value("a"), text_value("b"), text_value("c")},
               std::vector<ScaleOutput>{std::string("#ff0000"), std::string("#00ff00")}};
  ResolvedScale s = resolved(def);
  CHECK(s.map(text_value("c")) == ScaleOutput{std::string("#ff0000")});
  CHECK(code_of([&] { s.map(text_value("zz")); }) == ErrorCode::UnknownCategory);
}

TEST_CASE("resolved scales map nulls and clamp") {
  ScaleDef def{"x", ScaleKind::Linear, std::vector<double>{0, 10}, NumericPair{0, 100}};
  def.clamp = true;
  ResolvedScale s = resolved(def);
  CHECK(s.map_number(number_value(20)) == 100.0);
  CHECK(s.map_number(number_value(-5)) == 0.0);
  def.clamp = false;
  CHECK(resolved(def).map_number(number_value(20)) == 200.0);
}

TEST_CASE("property: endpoints are exact and linear maps are monotone") {
  testing::Rng rng(1);
  for (int iter = 0; iter < 1000; ++iter) {
    const double d0 = testing::uniform(rng, -1e4, 1e4), d1 = d0 + testing::uniform(rng, 1e-3, 1e4);
    const double r0 = testing::uniform(rng, -1e3, 1e3), r1 = testing::uniform(rng, -1e3, 1e3);
    CHECK(scale_linear({d0, d1}, {r0, r1}, d0) == r0);
    CHECK(scale_linear({d0, d1}, {r0, r1}, d1) == r1);
    double a = testing::uniform(rng, d0, d1), b = testing::uniform(rng, d0, d1);
    if (a > b) std::swap(a, b);
    const double fa = scale_linear({d0, d1}, {r0, r1}, a), fb = scale_linear({d0, d1}, {r0, r1}, b);
    if (r1 >= r0) {
      CHECK(fa <= fb);
    } else {
      CHECK(fa >= fb);
    }
  }
}

TEST_CASE("property: log maps geometric interpolation to linear interpolation") {
  testing::Rng rng(2);
  for (int iter = 0; iter < 1000; ++iter) {
    const double d0 = std::pow(10.0, testing::uniform(rng, -6, 6));
    const double d1 = d0 * std::pow(10.0, testing::uniform(rng, 0.01, 6));
    const double r0 = testing::uniform(rng, -500, 500), r1 = testing::uniform(rng, -500, 500);
    const double t = testing::uniform(rng, 0, 1);
    const double v = std::exp((1 - t) * std::log(d0) + t * std::log(d1));
    const double span = std::max(std::abs(r1 - r0), 1e-300);
    CHECK(std::abs(scale_log({d0, d1}, {r0, r1}, v) - (r0 + t * (r1 - r0))) <= 1e-12 * span + 1e-12 * std::abs(r0));
    CHECK(scale_log({d0, d1}, {r0, r1}, d0) == r0);
    CHECK(scale_log({d0, d1}, {r0, r1}, d1) == r1);
    // products become sums
    const double a = testing::uniform(rng, 1, 10), b = testing::uniform(rng, 1, 10);
    const double lhs = scale_log({1, 100}, {0, 1}, a * b);
    CHECK(std::abs(lhs - scale_log({1, 100}, {0, 1}, a) - scale_log({1, 100}, {0, 1}, b)) <= 1e-12);
  }
}

TEST_CASE("property: exp maps interpolation of powers to linear interpolation") {
  testing::Rng rng(3);
  for (int iter = 0; iter < 1000; ++iter) {
    const double k = testing::pick(rng, 2) ? double(1 + testing::pick(rng, 4)) : testing::uniform(rng, 0.2, 4);
    const double d0 = testing::uniform(rng, 0.5, 100), d1 = d0 * testing::uniform(rng, 1.5, 20);
    const double r0 = testing::uniform(rng, -500, 500), r1 = testing::uniform(rng, -500, 500);
    const double t = testing::uniform(rng, 0, 1);
    const double p0 = std::pow(d0, k), p1 = std::pow(d1, k);
    const double v = std::pow(p0 + t * (p1 - p0), 1 / k);
    const double span = std::abs(r1 - r0);
    CHECK(std::abs(scale_exp({d0, d1}, {r0, r1}, k, v) - (r0 + t * (r1 - r0))) <= 1e-12 * span + 1e-12 * std::abs(r0));
    CHECK(scale_exp({d0, d1}, {r0, r1}, k, d0) == r0);
    CHECK(scale_exp({d0, d1}, {r0, r1}, k, d1) == r1);
    const double u = testing::uniform(rng, d0, d1);
    CHECK(std::abs(scale_exp({d0, d1}, {r0, r1}, 1, u) - scale_linear({d0, d1}, {r0, r1}, u)) <= 1e-12 * (span + std::abs(r0)));
  }
}

TEST_CASE("property: ordinal bands are evenly spaced and wrap discrete ranges") {
  testing::Rng rng(5);
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 1 + testing::pick(rng, 20);
    const double r0 = testing::uniform(rng, -100, 100), r1 = testing::uniform(rng, -100, 500);
    const std::size_t i = testing::pick(rng, n);
    const double w = (r1 - r0) / double(n);
    CHECK(std::abs(scale_ordinal_band(i, n, {r0, r1}) - (r0 + w * (double(i) + 0.5))) <= 1e-12 * (std::abs(r0) + std::abs(r1)));
    std::vector<DataValue> cats;
    for (std::size_t c = 0; c < n; ++c) cats.push_back(number_value(double(c * 7)));
    std::vector<ScaleOutput> outs;
    const std::size_t m = 1 + testing::pick(rng, 6);
    for (std::size_t c = 0; c < m; ++c) outs.push_back(double(c));
    ResolvedScale s = resolved(ScaleDef{"o", ScaleKind::Ordinal, cats, outs});
    CHECK(s.map(cats[i]) == ScaleOutput{double(i % m)});
  }
}

TEST_CASE("property: quantile buckets match the brute-force oracle") {
  testing::Rng rng(4);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<double> s(1 + testing::pick(rng, 15));
    for (double& x : s) x = std::round(testing::uniform(rng, 0, 10));
    const std::size_t m = 1 + testing::pick(rng, 5);
    const double v = testing::pick(rng, 2) ? std::round(testing::uniform(rng, -1, 11)) : testing::uniform(rng, -1, 11);
    CHECK(quantile_bucket(quantile_thresholds(s, m), v) == testing::oracle_bucket(s, m, v));
  }
}

}  // TEST_SUITE
