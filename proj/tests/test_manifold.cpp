#include <doctest.h>

#include <cmath>

#include "levylab/manifold.hpp"

using namespace levylab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("volumes") {
    CHECK(Manifold(ManifoldKind::FlatTorus, 2).volume() == 1.0);
    CHECK(Manifold(ManifoldKind::FlatTorus, 3).volume() == 1.0);
    CHECK(Manifold(ManifoldKind::RoundSphere, 2).volume() ==
          doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK_THROWS_AS(Manifold(ManifoldKind::Euclidean, 2).volume(), std::invalid_argument);
}

TEST_CASE("sphere exp map") {
    const Manifold s(ManifoldKind::RoundSphere, 2);
    const Point p = s.make_point({0.0, 0.0, 1.0});
    const Direction v{{1.0, 0.0, 0.0}};
    const Point q = s.exp_map(p, v, kPi / 2.0);
    CHECK(q.x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(q.x[1]) < 1e-14);
    CHECK(std::abs(q.x[2]) < 1e-14);
    const Point anti = s.exp_map(p, v, kPi);
    CHECK(anti.x[2] == doctest::Approx(-1.0).epsilon(1e-13));
    // non-tangent direction rejected
    CHECK_THROWS_AS(s.exp_map(p, Direction{{0.0, 0.0, 1.0}}, 0.3), std::invalid_argument);
}

TEST_CASE("torus exp map wraps") {
    const Manifold t(ManifoldKind::FlatTorus, 2);
    const Point p = t.make_point({0.9, 0.5});
    const Point q = t.exp_map(p, Direction{{1.0, 0.0}}, 0.2);
    CHECK(q.x[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(q.x[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("distances") {
    const Manifold t(ManifoldKind::FlatTorus, 2);
    CHECK(t.distance(t.make_point({0.9, 0.0}), t.make_point({0.1, 0.0})) ==
          doctest::Approx(0.2).epsilon(1e-12));
    const Manifold s(ManifoldKind::RoundSphere, 2);
    const Point north = s.make_point({0.0, 0.0, 1.0});
    const Point south = s.make_point({0.0, 0.0, -1.0});
    CHECK(s.distance(north, south) == doctest::Approx(kPi).epsilon(1e-14));
    // geodesic property: dist(p, exp(p, v, t)) = t
    Rng rng(3);
    const Direction v = s.uniform_direction(north, rng);
    CHECK(s.distance(north, s.exp_map(north, v, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distance symmetry and triangle inequality") {
    Rng rng(11);
    for (auto kind : {ManifoldKind::FlatTorus, ManifoldKind::RoundSphere}) {
        const Manifold m(kind, 2);
        for (int i = 0; i < 10000; ++i) {
            const Point a = m.uniform_point(rng);
            const Point b = m.uniform_point(rng);
            const Point c = m.uniform_point(rng);
            const double ab = m.distance(a, b);
            CHECK(ab == m.distance(b, a));
            CHECK(ab <= m.distance(a, c) + m.distance(c, b) + 1e-12);
        }
    }
}

TEST_CASE("torus exp additivity") {
    const Manifold t(ManifoldKind::FlatTorus, 2);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Point p = t.uniform_point(rng);
        const Direction v = t.uniform_direction(p, rng);
        const double s = 0.37, u = 1.91;
        const Point one = t.exp_map(t.exp_map(p, v, s), v, u);
        const Point two = t.exp_map(p, v, s + u);
        CHECK(t.distance(one, two) < 1e-12);
    }
}

TEST_CASE("sphere exp 2pi periodicity") {
    // geodesics wrap; compare coordinates (the acos-based distance cannot
    // resolve below ~1e-8 between nearly identical points)
    const Manifold s(ManifoldKind::RoundSphere, 2);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const Point p = s.uniform_point(rng);
        const Direction v = s.uniform_direction(p, rng);
        const double t = 2.2;
        const Point a = s.exp_map(p, v, t + 2.0 * kPi);
        const Point b = s.exp_map(p, v, t);
        CHECK(a.x.plus(b.x, -1.0).norm() < 1e-10);
    }
}

TEST_CASE("diameter bounds") {
    Rng rng(13);
    const Manifold t(ManifoldKind::FlatTorus, 2);
    const Manifold s(ManifoldKind::RoundSphere, 2);
    for (int i = 0; i < 20000; ++i) {
        CHECK(t.distance(t.uniform_point(rng), t.uniform_point(rng)) <=
              std::sqrt(2.0) / 2.0 + 1e-15);
        CHECK(s.distance(s.uniform_point(rng), s.uniform_point(rng)) <= kPi);
    }
}

TEST_CASE("uniform point statistics") {
    const long N = 1000000;
    {
        const Manifold t(ManifoldKind::FlatTorus, 2);
        Rng rng(42);
        double s = 0.0;
        for (long i = 0; i < N; ++i) s += t.uniform_point(rng).x[0];
        CHECK(std::abs(s / N - 0.5) < 0.002); // 6 sigma of sd 1/sqrt(12 N)
    }
    {
        const Manifold sp(ManifoldKind::RoundSphere, 2);
        Rng rng(42);
        double s = 0.0;
        for (long i = 0; i < N; ++i) s += sp.uniform_point(rng).x[2];
        CHECK(std::abs(s / N) < 0.002);
    }
}

TEST_CASE("uniform direction statistics and tangency") {
    const Manifold t(ManifoldKind::FlatTorus, 2);
    Rng rng(42);
    double sx = 0.0, sy = 0.0;
    const long N = 1000000;
    for (long i = 0; i < N; ++i) {
        const Point p = t.uniform_point(rng);
        const Direction v = t.uniform_direction(p, rng);
        sx += v.v[0];
        sy += v.v[1];
        CHECK(std::abs(v.v.norm() - 1.0) < 1e-12);
    }
    CHECK(std::abs(sx / N) < 0.002);
    CHECK(std::abs(sy / N) < 0.002);

    const Manifold s(ManifoldKind::RoundSphere, 2);
    Rng rng2(42);
    for (int i = 0; i < 10000; ++i) {
        const Point p = s.uniform_point(rng2);
        const Direction v = s.uniform_direction(p, rng2);
        CHECK(std::abs(v.v.dot(p.x)) < 1e-12);
        CHECK(std::abs(v.v.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("fixed seed reproducibility") {
    const Manifold s(ManifoldKind::RoundSphere, 2);
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        const Point pa = s.uniform_point(a);
        const Point pb = s.uniform_point(b);
        for (int d = 0; d < 3; ++d) CHECK(pa.x[d] == pb.x[d]);
    }
}

TEST_CASE("antipode") {
    const Manifold s(ManifoldKind::RoundSphere, 2);
    const Point p = s.make_point({0.0, 0.0, 1.0});
    CHECK(s.antipode(p).x[2] == -1.0);
    const Manifold t(ManifoldKind::FlatTorus, 2);
    CHECK_THROWS_AS(t.antipode(t.make_point({0.1, 0.2})), std::invalid_argument);
}
