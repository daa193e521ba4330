#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace pleatray {

using Rational = boost::multiprecision::cpp_rational;

// "num/den" with den > 0, or a bare integer. No decimals.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& r);

// Element of Q(i). Coefficient field for trace polynomials: traces of words
// in the plumbing construction live here, never in plain Q.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational one() { return {Rational(1), Rational(0)}; }
    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational integer(long v) { return {Rational(v), Rational(0)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero in Q(i)");
        GaussianRational num = a * b.conj();
        return {num.re / n, num.im / n};
    }

    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
    std::string str() const;  // "a/b + c/d i" style, for diagnostics
};

}  // namespace pleatray
