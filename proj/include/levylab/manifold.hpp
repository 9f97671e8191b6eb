#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "levylab/rng.hpp"

// Geometry kernel for the three supported spaces: the flat torus T^n = R^n/Z^n
// with coordinates in [0,1)^n, the round unit sphere S^n stored extrinsically
// as unit vectors in R^{n+1}, and flat R^n (used only by the unit-ball exit
// oracle). Sphere points are renormalized after every exponential map so that
// drift stays at machine epsilon over long trajectories.

namespace levylab {

enum class ManifoldKind { FlatTorus, RoundSphere, Euclidean };

// Small fixed-capacity coordinate vector (ambient dim <= 4).
class Vec {
  public:
    static constexpr int kMax = 4;

    Vec() = default;
    Vec(std::initializer_list<double> xs) {
        if (xs.size() > kMax) throw std::invalid_argument("Vec: too many coordinates");
        for (double x : xs) c_[size_++] = x;
    }
    static Vec zeros(int m) {
        Vec v;
        v.size_ = m;
        return v;
    }

    int size() const { return size_; }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int i = 0; i < size_; ++i) s += c_[i] * o.c_[i];
        return s;
    }
    double norm() const;
    Vec scaled(double s) const {
        Vec r = *this;
        for (int i = 0; i < size_; ++i) r.c_[i] *= s;
        return r;
    }
    Vec plus(const Vec& o, double s = 1.0) const {
        Vec r = *this;
        for (int i = 0; i < size_; ++i) r.c_[i] += s * o.c_[i];
        return r;
    }

  private:
    std::array<double, kMax> c_{};
    int size_ = 0;
};

struct Point {
    Vec x;
};

struct Direction {
    Vec v; // unit vector; tangent (orthogonal to the base point) on the sphere
};

class Manifold {
  public:
    Manifold(ManifoldKind kind, int n);

    ManifoldKind kind() const { return kind_; }
    int dim() const { return n_; }
    // Number of stored coordinates per point (n, or n+1 on the sphere).
    int ambient_dim() const { return kind_ == ManifoldKind::RoundSphere ? n_ + 1 : n_; }

    // Riemannian volume; rejects the Euclidean case.
    double volume() const;

    Point make_point(const Vec& coords) const;

    Point exp_map(const Point& p, const Direction& v, double t) const;
    double distance(const Point& p, const Point& q) const;

    Point uniform_point(Rng& rng) const;
    Direction uniform_direction(const Point& p, Rng& rng) const;

    // Antipodal point; sphere only.
    Point antipode(const Point& p) const;

  private:
    void check_tangent(const Point& p, const Direction& v) const;

    ManifoldKind kind_;
    int n_;
};

} // namespace levylab
