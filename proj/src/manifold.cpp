#include "levylab/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "levylab/constants.hpp"

namespace levylab {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
double wrap01(double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y -= 1.0; // floor rounding at |x| >> 1
    return y;
}
} // namespace

double Vec::norm() const { return std::sqrt(dot(*this)); }

Manifold::Manifold(ManifoldKind kind, int n) : kind_(kind), n_(n) {
    if (n < 2) throw std::invalid_argument("Manifold: n must be >= 2");
    if (n + (kind == ManifoldKind::RoundSphere ? 1 : 0) > Vec::kMax)
        throw std::invalid_argument("Manifold: ambient dimension exceeds Vec capacity");
}

double Manifold::volume() const {
    switch (kind_) {
        case ManifoldKind::FlatTorus:
            return 1.0;
        case ManifoldKind::RoundSphere:
            // |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
            return sphere_surface(n_ + 1);
        case ManifoldKind::Euclidean:
            throw std::invalid_argument("volume: Euclidean space has no finite volume");
    }
    throw std::logic_error("unreachable");
}

Point Manifold::make_point(const Vec& coords) const {
    if (coords.size() != ambient_dim())
        throw std::invalid_argument("make_point: wrong coordinate count");
    Point p{coords};
    if (kind_ == ManifoldKind::FlatTorus) {
        for (int i = 0; i < n_; ++i) p.x[i] = wrap01(p.x[i]);
    } else if (kind_ == ManifoldKind::RoundSphere) {
        const double r = p.x.norm();
        if (std::abs(r - 1.0) > 1e-6)
            throw std::invalid_argument("make_point: sphere point must have unit norm");
        p.x = p.x.scaled(1.0 / r);
    }
    return p;
}

void Manifold::check_tangent(const Point& p, const Direction& v) const {
    if (kind_ == ManifoldKind::RoundSphere && std::abs(v.v.dot(p.x)) > 1e-9)
        throw std::invalid_argument("exp_map: direction not tangent to the sphere at p");
}

Point Manifold::exp_map(const Point& p, const Direction& v, double t) const {
    Point q = p;
    switch (kind_) {
        case ManifoldKind::FlatTorus:
            for (int i = 0; i < n_; ++i) q.x[i] = wrap01(p.x[i] + t * v.v[i]);
            return q;
        case ManifoldKind::RoundSphere: {
            check_tangent(p, v);
            const double s = std::fmod(t, kTwoPi);
            const double ct = std::cos(s), st = std::sin(s);
            q.x = p.x.scaled(ct).plus(v.v, st);
            q.x = q.x.scaled(1.0 / q.x.norm());
            return q;
        }
        case ManifoldKind::Euclidean:
            q.x = p.x.plus(v.v, t);
            return q;
    }
    throw std::logic_error("unreachable");
}

double Manifold::distance(const Point& p, const Point& q) const {
    switch (kind_) {
        case ManifoldKind::FlatTorus: {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) {
                double d = std::abs(p.x[i] - q.x[i]);
                d = std::min(d, 1.0 - d);
                s += d * d;
            }
            return std::sqrt(s);
        }
        case ManifoldKind::RoundSphere: {
            const double c = std::clamp(p.x.dot(q.x), -1.0, 1.0);
            return std::acos(c);
        }
        case ManifoldKind::Euclidean:
            return p.x.plus(q.x, -1.0).norm();
    }
    throw std::logic_error("unreachable");
}

Point Manifold::uniform_point(Rng& rng) const {
    Point p;
    switch (kind_) {
        case ManifoldKind::FlatTorus:
            p.x = Vec::zeros(n_);
            for (int i = 0; i < n_; ++i) p.x[i] = rng.uniform();
            return p;
        case ManifoldKind::RoundSphere: {
            const int m = n_ + 1;
            for (;;) {
                p.x = Vec::zeros(m);
                for (int i = 0; i < m; ++i) p.x[i] = rng.normal();
                const double r = p.x.norm();
                if (r > 1e-8) {
                    p.x = p.x.scaled(1.0 / r);
                    return p;
                }
            }
        }
        case ManifoldKind::Euclidean:
            throw std::invalid_argument("uniform_point: not defined on Euclidean space");
    }
    throw std::logic_error("unreachable");
}

Direction Manifold::uniform_direction(const Point& p, Rng& rng) const {
    Direction d;
    const int m = ambient_dim();
    for (;;) {
        d.v = Vec::zeros(m);
        for (int i = 0; i < m; ++i) d.v[i] = rng.normal();
        if (kind_ == ManifoldKind::RoundSphere)
            d.v = d.v.plus(p.x, -d.v.dot(p.x)); // project onto tangent plane
        const double r = d.v.norm();
        if (r > 1e-8) {
            d.v = d.v.scaled(1.0 / r);
            if (kind_ == ManifoldKind::RoundSphere) {
                // one more projection pass keeps |v.p| at machine epsilon
                d.v = d.v.plus(p.x, -d.v.dot(p.x));
                d.v = d.v.scaled(1.0 / d.v.norm());
            }
            return d;
        }
    }
}

Point Manifold::antipode(const Point& p) const {
    if (kind_ != ManifoldKind::RoundSphere)
        throw std::invalid_argument("antipode: sphere only");
    Point q = p;
    q.x = p.x.scaled(-1.0);
    return q;
}

} // namespace levylab
