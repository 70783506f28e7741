#pragma once

#include <cmath>

#include "bifh/errors.hpp"

namespace bifh {

// Value and derivatives w.r.t. the arclength variable up to order 3.
// Entries are plain derivatives (not Taylor coefficients).
struct Jet3 {
    double v0 = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;

    static Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
    static Jet3 variable(double s) { return {s, 1.0, 0.0, 0.0}; }

    bool finite() const {
        return std::isfinite(v0) && std::isfinite(v1) && std::isfinite(v2) && std::isfinite(v3);
    }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2, a.v3 + b.v3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2, a.v3 - b.v3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.v0, -a.v1, -a.v2, -a.v3}; }

// Leibniz rule up to third order.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v0 * b.v0,
            a.v1 * b.v0 + a.v0 * b.v1,
            a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
            a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3};
}

inline Jet3 operator*(double c, const Jet3& a) { return {c * a.v0, c * a.v1, c * a.v2, c * a.v3}; }
inline Jet3 operator*(const Jet3& a, double c) { return c * a; }

// Univariate composition g = F(u) by the chain rule (Faa di Bruno to order 3).
// F0..F3 are the derivatives of F at u.v0.
inline Jet3 compose(double F0, double F1, double F2, double F3, const Jet3& u) {
    return {F0,
            F1 * u.v1,
            F2 * u.v1 * u.v1 + F1 * u.v2,
            F3 * u.v1 * u.v1 * u.v1 + 3.0 * F2 * u.v1 * u.v2 + F1 * u.v3};
}

inline Jet3 recip(const Jet3& a) {
    if (a.v0 == 0.0) throw DomainError("division by zero");
    const double x = a.v0;
    return compose(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x), a);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * recip(b); }

inline Jet3 sin(const Jet3& u) {
    const double s = std::sin(u.v0), c = std::cos(u.v0);
    return compose(s, c, -s, -c, u);
}

inline Jet3 cos(const Jet3& u) {
    const double s = std::sin(u.v0), c = std::cos(u.v0);
    return compose(c, -s, -c, s, u);
}

inline Jet3 exp(const Jet3& u) {
    const double e = std::exp(u.v0);
    return compose(e, e, e, e, u);
}

inline Jet3 log(const Jet3& u) {
    if (u.v0 <= 0.0) throw DomainError("log of non-positive value");
    const double x = u.v0;
    return compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), u);
}

inline Jet3 sqrt(const Jet3& u) {
    if (u.v0 <= 0.0) throw DomainError("sqrt of non-positive value");
    const double r = std::sqrt(u.v0);
    const double x = u.v0;
    return compose(r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r), u);
}

// Integer power; any base, exponent may be negative.
inline Jet3 pow_int(const Jet3& u, long long n) {
    if (n < 0) return recip(pow_int(u, -n));
    Jet3 acc = Jet3::constant(1.0);
    Jet3 base = u;
    long long k = n;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

// Rational power u^(num/den), den >= 1. Non-integer exponents require u > 0.
inline Jet3 pow_rational(const Jet3& u, long long num, long long den) {
    if (den == 1) return pow_int(u, num);
    if (u.v0 <= 0.0) throw DomainError("rational power of non-positive base");
    const double r = static_cast<double>(num) / static_cast<double>(den);
    const double x = u.v0;
    const double F0 = std::pow(x, r);
    const double F1 = r * F0 / x;
    const double F2 = r * (r - 1.0) * F0 / (x * x);
    const double F3 = r * (r - 1.0) * (r - 2.0) * F0 / (x * x * x);
    return compose(F0, F1, F2, F3, u);
}

}  // namespace bifh
