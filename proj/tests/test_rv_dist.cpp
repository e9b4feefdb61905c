#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "heavytail/rng.hpp"
#include "heavytail/rv_dist.hpp"

using namespace heavytail;

TEST_CASE("mixed counter stream is deterministic and in (0,1)") {
  Stream s(42);
  std::vector<double> a, b;
  for (int i = 0; i < 1000; ++i) a.push_back(s.uniform());
  Stream t(42);
  for (int i = 0; i < 1000; ++i) b.push_back(t.uniform());
  CHECK(a == b);
  for (double u : a) {
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  // random access agrees with sequential draws
  Stream r(42);
  CHECK(r.uniform_at(7) == a[7]);
  CHECK(r.uniform_at(999) == a[999]);
}

TEST_CASE("substreams differ from each other and the parent") {
  Stream s(7);
  Stream s0 = s.substream(0);
  Stream s1 = s.substream(1);
  CHECK(s.key() != s0.key());
  CHECK(s0.key() != s1.key());
  CHECK(s0.uniform_at(0) != s1.uniform_at(0));
  // substream derivation is a pure function of (seed, index)
  CHECK(Stream(7).substream(1).key() == s1.key());
}

TEST_CASE("exponential draws are positive with mean near 1") {
  Stream s(3);
  double sum = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    double e = s.exponential();
    REQUIRE(e > 0.0);
    sum += e;
  }
  CHECK(sum / m == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("bounded-density model: tail, cdf, density breakpoints") {
  TailModel m = TailModel::paper_density(1.6);
  CHECK(tail_prob(m, 0.0) == 1.0);
  CHECK(tail_prob(m, 0.1) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(tail_prob(m, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  // beyond the flat part: 0.5 * (4x)^(-alpha)
  CHECK(tail_prob(m, 0.5) == doctest::Approx(0.5 * std::pow(2.0, -1.6)).epsilon(1e-14));
  CHECK(cdf(m, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(m, 0.25) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cdf(m, -0.25) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(cdf(m, 0.5) == doctest::Approx(1.0 - 0.25 * std::pow(2.0, -1.6)).epsilon(1e-14));
  // symmetry of the cdf
  for (double x : {0.05, 0.2, 0.3, 1.0, 10.0})
    CHECK(cdf(m, -x) == doctest::Approx(1.0 - cdf(m, x)).epsilon(1e-14));
}

TEST_CASE("pareto models: tail and support") {
  TailModel pos = TailModel::positive_pareto(0.8, 2.0);
  CHECK(tail_prob(pos, 1.0) == 1.0);
  CHECK(tail_prob(pos, 2.0) == 1.0);
  CHECK(tail_prob(pos, 4.0) == doctest::Approx(std::pow(2.0, -0.8)).epsilon(1e-14));
  CHECK(std::pow(2.0, -0.8) == doctest::Approx(0.5743491774985175).epsilon(1e-15));
  CHECK(cdf(pos, 1.9) == 0.0);

  TailModel two = TailModel::two_sided_pareto(1.6, 0.25, 1.0);
  CHECK(tail_prob(two, 2.0) == doctest::Approx(std::pow(2.0, -1.6)).epsilon(1e-14));
  // one-sided tails split by p_plus
  CHECK(cdf(two, -2.0) == doctest::Approx(0.75 * std::pow(2.0, -1.6)).epsilon(1e-14));
  CHECK(1.0 - cdf(two, 2.0) == doctest::Approx(0.25 * std::pow(2.0, -1.6)).epsilon(1e-14));
}

TEST_CASE("quantile inverts the cdf on all branches") {
  std::vector<TailModel> models = {
      TailModel::paper_density(0.8), TailModel::paper_density(1.6),
      TailModel::paper_density(3.0), TailModel::two_sided_pareto(1.6, 0.5, 1.0),
      TailModel::two_sided_pareto(0.8, 0.3, 2.0), TailModel::positive_pareto(0.8, 1.0),
      TailModel::positive_pareto(2.5, 0.5)};
  for (const auto& m : models) {
    for (double u : {1e-6, 0.01, 0.2, 0.26, 0.5, 0.74, 0.9, 0.99, 1.0 - 1e-6}) {
      double x = quantile(m, u);
      CHECK(cdf(m, x) == doctest::Approx(u).epsilon(1e-10));
    }
    CHECK_THROWS_AS((void)quantile(m, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)quantile(m, 1.0), std::domain_error);
  }
}

TEST_CASE("norming constants solve tail = 1/k exactly") {
  TailModel paper = TailModel::paper_density(1.6);
  CHECK(norming_constant(paper, 1) == 0.0);
  // closed form: (k/2)^(1/alpha)/4, independent of alpha at k=2
  CHECK(norming_constant(paper, 2) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(norming_constant(TailModel::paper_density(0.8), 2) ==
        doctest::Approx(0.25).epsilon(1e-14));
  TailModel pareto = TailModel::positive_pareto(0.8, 1.0);
  CHECK(norming_constant(pareto, 16) == doctest::Approx(32.0).epsilon(1e-13));
  for (const auto& m : {paper, pareto, TailModel::two_sided_pareto(2.5, 0.5, 1.5)}) {
    for (std::uint64_t k : {2ull, 10ull, 100ull, 12345ull, 200000ull}) {
      double a = norming_constant(m, k);
      CHECK(tail_prob(m, a) == doctest::Approx(1.0 / static_cast<double>(k)).epsilon(1e-12));
      CHECK(norming_constant_bisect(m, k) == doctest::Approx(a).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS((void)norming_constant(paper, 0), std::invalid_argument);
}

TEST_CASE("norming constants are increasing in k") {
  TailModel m = TailModel::paper_density(1.6);
  double prev = norming_constant(m, 2);
  for (std::uint64_t k = 3; k < 40; ++k) {
    double a = norming_constant(m, k);
    CHECK(a > prev);
    prev = a;
  }
}

// Simpson quadrature of t^g * (density of |Z|) as an independent oracle.
static double quad_abs_moment(const TailModel& m, double g, double x) {
  auto dens = [&](double t) {
    double h = 1e-6 * (1.0 + t);
    return (tail_prob(m, t - h) - tail_prob(m, t + h)) / (2.0 * h);
  };
  const int steps = 20000;
  double lo = 0.0, acc = 0.0;
  double width = (x - lo) / steps;
  for (int i = 0; i < steps; ++i) {
    double a = lo + i * width, b = a + width, mid = 0.5 * (a + b);
    acc += width / 6.0 *
           (std::pow(a, g) * dens(a) + 4.0 * std::pow(mid, g) * dens(mid) +
            std::pow(b, g) * dens(b));
  }
  return acc;
}

TEST_CASE("truncated absolute moments match closed forms and quadrature") {
  TailModel m = TailModel::paper_density(1.6);
  // inside the flat density part: 2 x^(g+1)/(g+1)
  CHECK(truncated_abs_moment(m, 2.0, 0.25) == doctest::Approx(1.0 / 96.0).epsilon(1e-13));
  CHECK(truncated_abs_moment(m, 2.0, 1.0) ==
        doctest::Approx(quad_abs_moment(m, 2.0, 1.0)).epsilon(1e-4));
  CHECK(truncated_abs_moment(m, 1.0, 5.0) ==
        doctest::Approx(quad_abs_moment(m, 1.0, 5.0)).epsilon(1e-4));
  TailModel pos = TailModel::positive_pareto(0.8, 1.0);
  CHECK(truncated_abs_moment(pos, 2.0, 100.0) ==
        doctest::Approx(quad_abs_moment(pos, 2.0, 100.0)).epsilon(1e-4));
  // growing truncated second moment for an infinite-variance model
  CHECK(truncated_abs_moment(pos, 2.0, 1e4) > truncated_abs_moment(pos, 2.0, 1e2));
  CHECK_THROWS_AS(
      (void)truncated_abs_moment(pos, 2.0, std::numeric_limits<double>::infinity()),
      std::domain_error);
}

TEST_CASE("second moment and mean closed forms") {
  CHECK_FALSE(has_finite_second_moment(TailModel::paper_density(1.6)));
  CHECK(has_finite_second_moment(TailModel::paper_density(3.0)));
  CHECK(std::isinf(second_moment(TailModel::paper_density(2.0))));
  CHECK(second_moment(TailModel::paper_density(3.0)) ==
        doctest::Approx(5.0 / 48.0).epsilon(1e-13));
  CHECK(second_moment(TailModel::two_sided_pareto(2.5, 0.5, 1.0)) ==
        doctest::Approx(5.0).epsilon(1e-13));
  CHECK(second_moment(TailModel::positive_pareto(2.5, 1.0)) ==
        doctest::Approx(5.0).epsilon(1e-13));
  // second moment equals the full truncated moment in the limit
  CHECK(truncated_abs_moment(TailModel::paper_density(3.0), 2.0, 1e8) ==
        doctest::Approx(5.0 / 48.0).epsilon(1e-6));

  CHECK(mean(TailModel::paper_density(1.6)) == 0.0);
  CHECK(mean(TailModel::two_sided_pareto(1.6, 0.5, 1.0)) == 0.0);
  CHECK(mean(TailModel::positive_pareto(2.5, 1.0)) == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
  CHECK_FALSE(has_finite_mean(TailModel::positive_pareto(0.8, 1.0)));
  CHECK_THROWS_AS((void)mean(TailModel::positive_pareto(0.8, 1.0)), std::domain_error);
}

TEST_CASE("sampling matches the model tail empirically") {
  for (const auto& m : {TailModel::paper_density(1.6), TailModel::positive_pareto(0.8, 1.0),
                        TailModel::two_sided_pareto(1.6, 0.25, 1.0)}) {
    Stream s(99);
    const int reps = 100000;
    double thr = quantile(m, 0.5) > 0 ? norming_constant(m, 100) : norming_constant(m, 100);
    int hits = 0;
    for (int i = 0; i < reps; ++i)
      if (std::abs(sample(m, s)) > thr) ++hits;
    // expected fraction 1/100, 5 sigma band
    double se = std::sqrt(0.01 * 0.99 / reps);
    CHECK(std::abs(hits / static_cast<double>(reps) - 0.01) < 5.0 * se);
  }
}

TEST_CASE("squared entries form a one-sided model with half the index") {
  TailModel m = TailModel::positive_pareto(0.8, 2.0);
  TailModel sq = squared_model(m);
  CHECK(sq.alpha == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(sq.x_min == doctest::Approx(4.0).epsilon(1e-14));
  for (double x : {2.5, 4.0, 10.0, 1000.0})
    CHECK(tail_prob(sq, x * x) == doctest::Approx(tail_prob(m, x)).epsilon(1e-13));
  TailModel two = TailModel::two_sided_pareto(1.6, 0.3, 1.0);
  TailModel tsq = squared_model(two);
  for (double x : {1.5, 3.0, 50.0})
    CHECK(tail_prob(tsq, x * x) == doctest::Approx(tail_prob(two, x)).epsilon(1e-13));
  CHECK_THROWS_AS((void)squared_model(TailModel::paper_density(1.6)), std::invalid_argument);
}

TEST_CASE("model strings parse and round-trip") {
  TailModel m1 = parse_tail_model("paper:alpha=1.6");
  CHECK(m1.kind == TailKind::paper_density);
  CHECK(m1.alpha == doctest::Approx(1.6));
  TailModel m2 = parse_tail_model("pareto:alpha=0.8,xmin=2");
  CHECK(m2.kind == TailKind::positive_pareto);
  CHECK(m2.x_min == doctest::Approx(2.0));
  TailModel m3 = parse_tail_model("pareto2:alpha=1.6,pplus=0.3,xmin=1.5");
  CHECK(m3.p_plus == doctest::Approx(0.3));
  for (const auto& m : {m1, m2, m3}) {
    TailModel back = parse_tail_model(to_string(m));
    CHECK(back.kind == m.kind);
    CHECK(back.alpha == doctest::Approx(m.alpha).epsilon(1e-14));
    CHECK(back.p_plus == doctest::Approx(m.p_plus).epsilon(1e-14));
    CHECK(back.x_min == doctest::Approx(m.x_min).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)parse_tail_model("gauss:alpha=2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_tail_model("paper"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_tail_model("paper:alpha=0"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_tail_model("paper:alpha=5"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_tail_model("pareto2:alpha=1,pplus=1.5"), std::invalid_argument);
}
