#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace folia {

inline constexpr int kDim = 4;

/// Thrown when a partial function (ln, sqrt, division) leaves its domain
/// during jet evaluation.
struct JetDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Index into the packed upper triangle of a symmetric 4x4 matrix.
constexpr int sym_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * kDim - i * (i + 1) / 2 + j;
}

inline constexpr int kSymSize = 10;

/// Second-order jet of a scalar: value, gradient and Hessian with respect
/// to the four chart coordinates. Arithmetic implements the product and
/// chain rules exactly, so jets propagate exact derivatives through any
/// composition of the supported operations.
struct Jet2 {
    double v = 0.0;
    std::array<double, kDim> d{};
    std::array<double, kSymSize> h{};

    Jet2() = default;
    explicit Jet2(double value) : v(value) {}

    static Jet2 constant(double c) { return Jet2(c); }

    static Jet2 variable(double value, int index) {
        Jet2 j(value);
        j.d[index] = 1.0;
        return j;
    }

    double hess(int i, int j) const { return h[sym_index(i, j)]; }
    double& hess(int i, int j) { return h[sym_index(i, j)]; }

    Jet2 operator-() const {
        Jet2 r;
        r.v = -v;
        for (int i = 0; i < kDim; ++i) r.d[i] = -d[i];
        for (int i = 0; i < kSymSize; ++i) r.h[i] = -h[i];
        return r;
    }

    Jet2& operator+=(const Jet2& o) {
        v += o.v;
        for (int i = 0; i < kDim; ++i) d[i] += o.d[i];
        for (int i = 0; i < kSymSize; ++i) h[i] += o.h[i];
        return *this;
    }
    Jet2& operator-=(const Jet2& o) {
        v -= o.v;
        for (int i = 0; i < kDim; ++i) d[i] -= o.d[i];
        for (int i = 0; i < kSymSize; ++i) h[i] -= o.h[i];
        return *this;
    }
};

inline Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
inline Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v * b.v;
    for (int i = 0; i < kDim; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j)
            r.hess(i, j) = a.hess(i, j) * b.v + a.d[i] * b.d[j] +
                           a.d[j] * b.d[i] + a.v * b.hess(i, j);
    return r;
}

/// Apply a scalar function with derivatives (f, f', f'') at u.v to a jet.
inline Jet2 jet_compose(const Jet2& u, double f0, double f1, double f2) {
    Jet2 r;
    r.v = f0;
    for (int i = 0; i < kDim; ++i) r.d[i] = f1 * u.d[i];
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j)
            r.hess(i, j) = f1 * u.hess(i, j) + f2 * u.d[i] * u.d[j];
    return r;
}

inline Jet2 inv(const Jet2& a) {
    if (a.v == 0.0) throw JetDomainError("division by zero");
    double iv = 1.0 / a.v;
    return jet_compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }

inline Jet2 operator*(double s, const Jet2& a) { return Jet2(s) * a; }
inline Jet2 operator*(const Jet2& a, double s) { return Jet2(s) * a; }
inline Jet2 operator+(const Jet2& a, double s) { Jet2 r = a; r.v += s; return r; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { Jet2 r = a; r.v -= s; return r; }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2(s) - a; }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
inline Jet2 operator/(double s, const Jet2& a) { return Jet2(s) / a; }

inline Jet2 sin(const Jet2& a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return jet_compose(a, s, c, -s);
}
inline Jet2 cos(const Jet2& a) {
    double s = std::sin(a.v), c = std::cos(a.v);
    return jet_compose(a, c, -s, -c);
}
inline Jet2 exp(const Jet2& a) {
    double e = std::exp(a.v);
    return jet_compose(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
    if (a.v <= 0.0) throw JetDomainError("ln of non-positive value");
    double iv = 1.0 / a.v;
    return jet_compose(a, std::log(a.v), iv, -iv * iv);
}
inline Jet2 sqrt(const Jet2& a) {
    if (a.v < 0.0) throw JetDomainError("sqrt of negative value");
    if (a.v == 0.0) throw JetDomainError("sqrt at zero has no derivatives");
    double s = std::sqrt(a.v);
    return jet_compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

/// Integer power by repeated squaring over the jet ring.
inline Jet2 pow_int(const Jet2& a, int n) {
    if (n < 0) return inv(pow_int(a, -n));
    Jet2 r = Jet2::constant(1.0);
    Jet2 base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

inline double value(double x) { return x; }
inline double value(const Jet2& j) { return j.v; }

}  // namespace folia
