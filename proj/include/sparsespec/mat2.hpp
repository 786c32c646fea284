#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace sparsespec {

using Complex = std::complex<double>;

template <typename T>
struct Vec2 {
    T first{};   ///< ψ-component
    T second{};  ///< ψ′-component

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Row-major 2x2 matrix over double or std::complex<double>.
template <typename T>
struct Mat2 {
    T a{}, b{};
    T c{}, d{};

    static constexpr Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
    static constexpr Mat2 diagonal(T x, T y) { return {x, T(0), T(0), y}; }

    constexpr T det() const { return a * d - b * c; }
    constexpr T trace() const { return a + d; }

    constexpr Mat2 inverse() const {
        const T inv = T(1) / det();
        return {d * inv, -b * inv, -c * inv, a * inv};
    }

    friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend constexpr Vec2<T> operator*(const Mat2& m, const Vec2<T>& v) {
        return {m.a * v.first + m.b * v.second, m.c * v.first + m.d * v.second};
    }
    friend constexpr Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend constexpr Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend constexpr Mat2 operator*(T s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

using Mat2d = Mat2<double>;
using Mat2c = Mat2<Complex>;
using Vec2d = Vec2<double>;
using Vec2c = Vec2<Complex>;

inline Mat2c to_complex(const Mat2d& m) { return {m.a, m.b, m.c, m.d}; }
inline Vec2c to_complex(const Vec2d& v) { return {v.first, v.second}; }

template <typename T>
double max_abs_entry(const Mat2<T>& m) {
    return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

template <typename T>
double norm(const Vec2<T>& v) {
    return std::hypot(std::abs(v.first), std::abs(v.second));
}

template <typename T>
bool is_finite(const Mat2<T>& m) {
    return std::isfinite(max_abs_entry(m));
}

template <typename T>
bool is_finite(const Vec2<T>& v) {
    return std::isfinite(std::abs(v.first)) && std::isfinite(std::abs(v.second));
}

/// max |x_ij - y_ij|
template <typename T>
double max_abs_diff(const Mat2<T>& x, const Mat2<T>& y) {
    return max_abs_entry(x - y);
}

}  // namespace sparsespec
