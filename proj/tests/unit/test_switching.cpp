#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "lgdelay/errors.hpp"
#include "lgdelay/reference.hpp"
#include "lgdelay/switching.hpp"

using namespace lgdelay;

namespace {

double residual(const QuasiPolynomial& q, const CurveSample& s) {
  return std::abs(eval_D(q, cplx(0.0, s.omega), s.tau1, s.tau2));
}

}  // namespace

TEST_CASE("crossing sets of the reference parameters") {
  const ModelParams p = reference::params();
  const auto c0 = crossing_set(build(p, 0));
  REQUIRE(c0.size() == 2);
  CHECK(std::abs(c0[0].a - 0.2587) < 2e-3);
  CHECK(std::abs(c0[0].b - 0.6682) < 2e-3);
  CHECK(std::abs(c0[1].a - 0.7697) < 2e-3);
  CHECK(std::abs(c0[1].b - 1.1791) < 2e-3);
  CHECK(c0[0].j == 1);
  CHECK(c0[1].j == 2);
  CHECK_FALSE(c0[0].half_open);

  const auto c3 = crossing_set(build(p, 3));
  REQUIRE(c3.size() == 1);
  CHECK(std::abs(c3[0].a - 0.6638) < 2e-3);
  CHECK(std::abs(c3[0].b - 0.9798) < 2e-3);

  CHECK(crossing_set(build(p, 5)).empty());
  CHECK(crossing_set(build(p, 1)).size() == 2);
  CHECK(crossing_set(build(p, 2)).size() == 1);
}

TEST_CASE("crossing-set endpoints are roots of F refined to machine precision") {
  const ModelParams p = reference::params();
  for (int n = 0; n <= 3; ++n) {
    const QuasiPolynomial q = build(p, n);
    for (const CrossingInterval& c : crossing_set(q)) {
      CHECK(F(q, c.a) <= 0.0);
      CHECK(F(q, c.b) <= 0.0);
      CHECK(F(q, std::nextafter(c.a, 0.0)) > 0.0);
      CHECK(F(q, std::nextafter(c.b, 10.0)) > 0.0);
      for (int k = 1; k < 50; ++k) {
        CHECK(F(q, c.a + (c.b - c.a) * k / 50.0) < 0.0);
      }
    }
  }
}

TEST_CASE("indicator bits of the first interval of mode 0") {
  const auto c0 = crossing_set(build(reference::params(), 0));
  CHECK(c0[0].delta1a == 1);
  CHECK(c0[0].delta2a == 1);
  CHECK(c0[0].delta1b == 1);
  CHECK(c0[0].delta2b == 0);
}

TEST_CASE("tau_curve residual at random interior frequencies") {
  const QuasiPolynomial q = build(reference::params(), 0);
  const auto c0 = crossing_set(q);
  std::mt19937_64 g(2024);
  for (int i = 0; i < 100; ++i) {
    const double w = fixtures::uniform(g, c0[0].a, c0[0].b);
    for (int sign : {-1, 1}) {
      for (int j1 = -1; j1 <= 3; ++j1) {
        for (int j2 = -1; j2 <= 3; ++j2) {
          const TauPoint t = tau_curve(q, w, sign, j1, j2);
          CHECK(std::abs(eval_D(q, cplx(0.0, w), t.tau1, t.tau2)) < 1e-8);
        }
      }
    }
  }
  CHECK_THROWS_AS(tau_curve(q, 0.0, 1, 0, 0), parameter_error);
  CHECK_THROWS_AS(tau_curve(q, 0.5, 0, 0, 0), parameter_error);
}

TEST_CASE("branches meet at interval endpoints as the indicator bits predict") {
  for (int n = 0; n <= 3; ++n) {
    const QuasiPolynomial q = build(reference::params(), n);
    for (const CrossingInterval& c : crossing_set(q)) {
      for (int j1 = -1; j1 <= 2; ++j1) {
        for (int j2 = -1; j2 <= 2; ++j2) {
          const TauPoint pa = tau_curve(q, c.a, 1, j1, j2);
          const TauPoint ma = tau_curve(q, c.a, -1, j1 + c.delta1a, j2 - c.delta2a);
          CHECK(std::hypot(pa.tau1 - ma.tau1, pa.tau2 - ma.tau2) < 1e-6);
          const TauPoint pb = tau_curve(q, c.b, 1, j1, j2);
          const TauPoint mb = tau_curve(q, c.b, -1, j1 + c.delta1b, j2 - c.delta2b);
          CHECK(std::hypot(pb.tau1 - mb.tau1, pb.tau2 - mb.tau2) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("segments in a (20, 20) window") {
  const ModelParams p = reference::params();
  std::size_t total = 0;
  for (int n = 0; n <= 3; ++n) {
    const QuasiPolynomial q = build(p, n);
    const auto segs = generate_segments(q, {20.0, 20.0});
    CHECK_FALSE(segs.empty());
    for (const CurveSegment& s : segs) {
      bool inside = false;
      for (std::size_t k = 0; k < s.samples.size(); ++k) {
        const CurveSample& c = s.samples[k];
        CHECK(residual(q, c) < 1e-8);
        CHECK(c.tau1 >= 0.0);
        CHECK(c.tau2 >= 0.0);
        if (k > 0) CHECK(c.omega > s.samples[k - 1].omega);
        inside = inside || (c.tau1 <= 20.0 && c.tau2 <= 20.0);
      }
      CHECK(inside);
      total += s.samples.size();
    }
  }
  CHECK(total > 1000);
  CHECK(generate_segments(build(p, 4), {20.0, 20.0}).empty());
}

TEST_CASE("tiny or empty windows") {
  const QuasiPolynomial q = build(reference::params(), 0);
  CHECK(generate_segments(q, {0.01, 0.01}).empty());
  CHECK_THROWS_AS(generate_segments(q, {0.0, 0.0}), parameter_error);
}

TEST_CASE("geometric connectivity matches the indicator-bit prediction") {
  const ModelParams p = reference::params();
  for (int n = 0; n <= 3; ++n) {
    const QuasiPolynomial q = build(p, n);
    const auto iv = crossing_set(q);
    const auto segs = generate_segments(q, iv, {20.0, 20.0});
    const auto geo = connectivity(segs);
    const auto pred = predicted_links(segs, iv);
    REQUIRE(geo.size() == pred.size());
    for (std::size_t i = 0; i < geo.size(); ++i) {
      CHECK(geo[i].plus_id == pred[i].plus_id);
      CHECK(geo[i].minus_id == pred[i].minus_id);
      CHECK(geo[i].tag == pred[i].tag);
      CHECK(geo[i].distance < 1e-6);
    }
    if (n == 0) {
      CHECK_FALSE(geo.empty());
      for (const Link& l : geo) {
        const CurveSegment& a = segs[l.plus_id];
        const CurveSegment& b = segs[l.minus_id];
        if (a.j != 1) continue;
        CHECK(b.j1 == a.j1 + 1);
        CHECK(b.j2 == (l.tag == 'a' ? a.j2 - 1 : a.j2));
      }
    }
    for (const Link& l : geo) {
      CHECK(segs[l.plus_id].sign == 1);
      CHECK(segs[l.minus_id].sign == -1);
    }
  }
}

TEST_CASE("segments that never reach an endpoint have no links") {
  const QuasiPolynomial q = build(reference::params(), 0);
  const auto segs = generate_segments(q, {20.0, 20.0});
  const auto links = connectivity(segs);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].starts_at_a || segs[i].ends_at_b) continue;
    for (const Link& l : links) {
      CHECK(l.plus_id != i);
      CHECK(l.minus_id != i);
    }
  }
}

TEST_CASE("a mode-0 curve passes through the double-Hopf neighbourhood") {
  const QuasiPolynomial q = build(reference::params(), 0);
  const TauPoint t = tau_curve(q, 0.61081, -1, 1, 0);
  CHECK(std::abs(t.tau1 - 3.9042) < 5e-3);
  CHECK(std::abs(t.tau2 - 1.406) < 5e-3);
}

TEST_CASE("mode families stop at the first empty crossing set") {
  const auto fams = build_families(reference::params(), {20.0, 20.0});
  CHECK(fams.size() == 4);
  const auto fixed = build_families(reference::params(), {20.0, 20.0}, 5);
  REQUIRE(fixed.size() == 6);
  CHECK(fixed[4].segments.empty());
  CHECK(fixed[5].segments.empty());
}

TEST_CASE("half-open crossing interval") {
  QuasiPolynomial q;
  q.n = 0;
  q.p0 = RealPoly({0.5, 0.0, 1.0});
  q.p1 = RealPoly({0.3});
  q.p2 = RealPoly({1.0, 1.0});
  q.p3 = RealPoly({1.0});
  REQUIRE(F(q, 0.0) < 0.0);
  const auto iv = crossing_set(q);
  REQUIRE_FALSE(iv.empty());
  CHECK(iv[0].half_open);
  CHECK(iv[0].a == 0.0);
  const auto segs = generate_segments(q, iv, {50.0, 50.0});
  bool any_unbounded = false;
  for (const CurveSegment& s : segs) {
    if (s.unbounded) {
      any_unbounded = true;
      CHECK(s.samples.front().omega == doctest::Approx(1e-4));
    }
    CHECK_FALSE(s.starts_at_a);
    for (const CurveSample& c : s.samples) CHECK(residual(q, c) < 1e-8);
  }
  CHECK(any_unbounded);
}
