#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/rational.hpp"

namespace casimir {

/// Univariate polynomial with rational coefficients, stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(QVector coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial(QVector{c}); }
    static Polynomial monomial(const Rational& c, std::size_t k) {
        QVector v(k + 1, Rational(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }
    /// t - r
    static Polynomial linear_root(const Rational& r) { return Polynomial(QVector{-r, Rational(1)}); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const QVector& coefficients() const noexcept { return c_; }

    Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const {
        if (c_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
        return c_.back();
    }

    Rational evaluate(const Rational& x) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Polynomial derivative(unsigned order = 1) const {
        Polynomial p = *this;
        for (unsigned o = 0; o < order; ++o) {
            if (p.c_.size() <= 1) return Polynomial();
            QVector d(p.c_.size() - 1);
            for (std::size_t k = 1; k < p.c_.size(); ++k) d[k - 1] = p.c_[k] * static_cast<long>(k);
            p = Polynomial(std::move(d));
        }
        return p;
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        const Rational lc = leading();
        QVector v = c_;
        for (auto& x : v) x /= lc;
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        QVector v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        QVector v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        QVector v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& a) {
        QVector v = a.c_;
        for (auto& x : v) x *= s;
        return Polynomial(std::move(v));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Euclidean division: returns (quotient, remainder).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
        QVector r = c_;
        const int dd = d.degree();
        if (degree() < dd) return {Polynomial(), *this};
        QVector q(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
        const Rational lc = d.leading();
        for (int k = degree(); k >= dd; --k) {
            const Rational f = r[static_cast<std::size_t>(k)] / lc;
            q[static_cast<std::size_t>(k - dd)] = f;
            if (f == 0) continue;
            for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
    Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }

    /// Human-readable form, highest degree first, e.g. "t^2 - 3/2*t + 1".
    std::string pretty(const char* var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const Rational& a = c_[static_cast<std::size_t>(k)];
            if (a == 0) continue;
            Rational mag = abs(a);
            if (s.empty()) s += a < 0 ? "-" : "";
            else s += a < 0 ? " - " : " + ";
            const bool unit = (mag == 1) && k > 0;
            if (!unit) {
                s += mag.get_str();
                if (k > 0) s += "*";
            }
            if (k >= 1) s += var;
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    QVector c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Square-free decomposition p = lc * prod f_k^k (Yun). Returns the nonconstant
/// factors f_k (monic, pairwise coprime) together with their multiplicity k.
inline std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw InvalidArgument("square-free decomposition of the zero polynomial");
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() == 0) return out;
    const Polynomial a = p.monic();
    const Polynomial b = a.derivative();
    const Polynomial c = gcd(a, b);
    Polynomial w = a / c;
    Polynomial y = b / c;
    Polynomial z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        const Polynomial g = gcd(w, z);
        if (g.degree() > 0) out.emplace_back(g, i);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

/// Resultant by the Euclidean remainder sequence over Q:
/// res(f, g) = (-1)^{mn} lc(g)^{m - deg r} res(g, r) with r = f mod g.
inline Rational resultant(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) throw InvalidArgument("resultant with the zero polynomial");
    Polynomial a = f;
    Polynomial b = g;
    Rational acc = 1;
    while (true) {
        const int m = a.degree();
        const int n = b.degree();
        if (n == 0) {
            Rational pw = 1;
            for (int k = 0; k < m; ++k) pw *= b.leading();
            return acc * pw;
        }
        if (m == 0) {
            Rational pw = 1;
            for (int k = 0; k < n; ++k) pw *= a.leading();
            return acc * pw;
        }
        Polynomial r = a % b;
        if (r.is_zero()) return 0;
        if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
        const int k = r.degree();
        for (int e = 0; e < m - k; ++e) acc *= b.leading();
        a = std::move(b);
        b = std::move(r);
    }
}

/// Sylvester matrix of f (degree m) and g (degree n): n shifted rows of f's
/// coefficients followed by m shifted rows of g's, highest degree first.
inline QMatrix sylvester_matrix(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) throw InvalidArgument("Sylvester matrix of the zero polynomial");
    const auto m = static_cast<std::size_t>(f.degree());
    const auto n = static_cast<std::size_t>(g.degree());
    QMatrix s(m + n, m + n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = f[m - k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = g[n - k];
    return s;
}

inline Rational sylvester_resultant(const Polynomial& f, const Polynomial& g) {
    if (f.degree() + g.degree() == 0) return 1;
    return determinant_bareiss(sylvester_matrix(f, g));
}

/// Sturm sequence of a square-free polynomial, used for exact real-root counting.
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& p) {
        if (p.is_zero()) throw InvalidArgument("Sturm sequence of the zero polynomial");
        seq_.push_back(p);
        if (p.degree() == 0) return;
        seq_.push_back(p.derivative());
        while (true) {
            Polynomial r = seq_[seq_.size() - 2] % seq_.back();
            if (r.is_zero()) break;
            seq_.push_back(-r);
        }
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    std::size_t count(const Rational& lo, const Rational& hi) const {
        if (hi <= lo) return 0;
        return static_cast<std::size_t>(changes_at(lo) - changes_at(hi));
    }

    /// Number of distinct real roots on the whole line.
    std::size_t count_all() const { return static_cast<std::size_t>(changes_at_infinity(-1) - changes_at_infinity(1)); }

private:
    int changes_at(const Rational& x) const {
        std::vector<int> signs;
        for (const auto& q : seq_) {
            const int s = sgn(q.evaluate(x));
            if (s != 0) signs.push_back(s);
        }
        return count_changes(signs);
    }
    int changes_at_infinity(int dir) const {
        std::vector<int> signs;
        for (const auto& q : seq_) {
            int s = sgn(q.leading());
            if (dir < 0 && q.degree() % 2 == 1) s = -s;
            signs.push_back(s);
        }
        return count_changes(signs);
    }
    static int count_changes(const std::vector<int>& s) {
        int c = 0;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] != s[i - 1]) ++c;
        return c;
    }
    std::vector<Polynomial> seq_;
};

/// True iff every complex root of p is real (counted without multiplicity).
inline bool all_roots_real(const Polynomial& p) {
    if (p.degree() <= 0) return true;
    Polynomial radical = p.monic() / gcd(p, p.derivative());
    return static_cast<int>(SturmSequence(radical).count_all()) == radical.degree();
}

/// Multiplicity-weighted number of roots of p in (lo, hi].
inline std::size_t roots_in_interval(const Polynomial& p, const Rational& lo, const Rational& hi) {
    std::size_t total = 0;
    for (const auto& [f, k] : squarefree_decomposition(p))
        total += static_cast<std::size_t>(k) * SturmSequence(f).count(lo, hi);
    return total;
}

}  // namespace casimir
