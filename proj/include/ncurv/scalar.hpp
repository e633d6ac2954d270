#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncurv {

using Rational = mpq_class;

enum class Backend { exact, floating };

inline const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

/// Complex number stored as a (re, im) pair over an ordered field.
///
/// std::complex is only specified for float/double/long double, so the exact
/// backend needs its own pair type. Multiplication skips the imaginary part
/// when both operands are real, which is the common case in this library.
template <class R>
struct Complex {
    R re{};
    R im{};

    Complex() = default;
    Complex(R r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)

    bool is_real() const { return im == 0; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        if (!(o.im == 0)) im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        if (!(o.im == 0)) im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        *this = *this * o;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        *this = *this / o;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator-(const Complex& a) { return Complex(R(-a.re), R(-a.im)); }
    friend Complex operator*(const Complex& a, const Complex& b) {
        const bool ar = a.im == 0;
        const bool br = b.im == 0;
        if (ar && br) return Complex(R(a.re * b.re));
        if (br) return Complex(R(a.re * b.re), R(a.im * b.re));
        if (ar) return Complex(R(a.re * b.re), R(a.re * b.im));
        return Complex(R(a.re * b.re - a.im * b.im), R(a.re * b.im + a.im * b.re));
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        if (b.im == 0) {
            if (b.re == 0) throw std::domain_error("division by zero scalar");
            return Complex(R(a.re / b.re), R(a.im / b.re));
        }
        R den = b.re * b.re + b.im * b.im;
        return Complex(R((a.re * b.re + a.im * b.im) / den), R((a.im * b.re - a.re * b.im) / den));
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

using Exact = Complex<Rational>;
using Float = Complex<double>;

template <class R>
Complex<R> conj(const Complex<R>& z) {
    return Complex<R>(z.re, R(-z.im));
}

template <class R>
R abs2(const Complex<R>& z) {
    if (z.im == 0) return R(z.re * z.re);
    return R(z.re * z.re + z.im * z.im);
}

/// Nearest double to r, ties to even. mpq_class::get_d truncates instead.
double nearest_double(const Rational& r);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Exact> {
    using Real = Rational;
    static constexpr Backend backend = Backend::exact;
    static bool is_zero(const Exact& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
    static bool is_zero_real(const Rational& r) { return sgn(r) == 0; }
    static double to_double(const Rational& r) { return nearest_double(r); }
    static Rational from_rational(const Rational& r) { return r; }
};

template <>
struct ScalarTraits<Float> {
    using Real = double;
    static constexpr Backend backend = Backend::floating;
    static bool is_zero(const Float& z) { return z.re == 0.0 && z.im == 0.0; }
    static bool is_zero_real(double r) { return r == 0.0; }
    static double to_double(double r) { return r; }
    static double from_rational(const Rational& r) { return nearest_double(r); }
};

template <class S>
using RealOf = typename ScalarTraits<S>::Real;

template <class S>
constexpr Backend backend_of() {
    return ScalarTraits<S>::backend;
}

template <class S>
bool is_zero(const S& z) {
    return ScalarTraits<S>::is_zero(z);
}

template <class S>
double to_double(const RealOf<S>& r) {
    return ScalarTraits<S>::to_double(r);
}

inline double to_double(const Rational& r) { return nearest_double(r); }
inline double to_double(double r) { return r; }

template <class S>
RealOf<S> real_from(const Rational& r) {
    return ScalarTraits<S>::from_rational(r);
}

template <class S>
S scalar_from(const Rational& re, const Rational& im = 0) {
    return S(real_from<S>(re), real_from<S>(im));
}

/// Exact square root of a non-negative rational, when it exists.
bool exact_sqrt(const Rational& r, Rational& out);

/// Square root in the backend's real field. Throws std::domain_error in the
/// exact backend when the root is irrational.
template <class S>
RealOf<S> real_sqrt(const RealOf<S>& r) {
    if constexpr (backend_of<S>() == Backend::exact) {
        Rational out;
        if (!exact_sqrt(r, out)) throw std::domain_error("sqrt(" + r.get_str() + ") is not rational");
        return out;
    } else {
        return std::sqrt(r);
    }
}

/// Parses "p/q", a decimal literal such as "-0.375" or "1e-3", or
/// "sqrt(<rational>)". Decimal literals are converted exactly.
/// Throws std::invalid_argument on malformed input and std::domain_error when
/// an irrational root is requested as an exact value.
Rational parse_rational(std::string_view text);

/// Same grammar as parse_rational, but evaluates roots in double precision.
double parse_real(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(double r);
std::string to_string(const Exact& z);
std::string to_string(const Float& z);

template <class R>
std::ostream& operator<<(std::ostream& os, const Complex<R>& z) {
    return os << to_string(z);
}

}  // namespace ncurv
