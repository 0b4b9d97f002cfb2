#pragma once

#include <string>

#include "casimir/errors.hpp"
#include "casimir/rational.hpp"

namespace casimir {

/// Element re + im*i of Q(i).
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(int v) : re(v), im(0) {}  // NOLINT: implicit, so Matrix<T> can use T(0) and T(1)
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }
    bool is_real() const { return im == 0; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        const Rational n = o.norm();
        if (n == 0) throw InvalidArgument("division by zero in Q(i)");
        *this *= o.conj();
        re /= n;
        im /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string str() const {
        if (im == 0) return to_string(re);
        return to_string(re) + (im < 0 ? " - " : " + ") + to_string(abs(im)) + "*i";
    }
};

using GMatrix = Matrix<GaussianRational>;

inline GMatrix to_gaussian(const QMatrix& m) {
    GMatrix g(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = GaussianRational(m(i, j));
    return g;
}

inline GMatrix conjugate_transpose(const GMatrix& m) {
    GMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).conj();
    return t;
}

inline GMatrix kronecker(const GMatrix& a, const GMatrix& b) {
    GMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == GaussianRational(0)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

inline GaussianRational trace(const GMatrix& m) {
    GaussianRational t;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

}  // namespace casimir
