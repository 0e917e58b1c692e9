#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace symmix {

using Rational = boost::multiprecision::cpp_rational;

// Complex number with exact rational real and imaginary parts. Symbolic
// paths (term algebra, commutator cancellation) stay exact; floating point
// enters only when lowering to matrices or simulating.
struct CRational {
    Rational re{0};
    Rational im{0};

    CRational() = default;
    CRational(Rational r) : re(std::move(r)) {}
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    CRational(long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }

    CRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    friend CRational operator+(const CRational& a, const CRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CRational operator-(const CRational& a, const CRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CRational& operator+=(const CRational& o) { *this = *this + o; return *this; }
    CRational& operator-=(const CRational& o) { *this = *this - o; return *this; }
    CRational& operator*=(const CRational& o) { *this = *this * o; return *this; }
    friend bool operator==(const CRational& a, const CRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline Rational parse_rational(const std::string& s) {
    return Rational(s);
}

inline std::string rational_str(const Rational& r) {
    return r.str();
}

} // namespace symmix
