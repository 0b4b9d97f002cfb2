#pragma once

// Weight-lattice bookkeeping, Casimir eigenvalues and exact enumeration of lattice
// points on spheres centred at -delta.
//
// Enumeration works in shifted coordinates s = mu + delta, which in the
// fundamental-weight basis is simply mu + (1, ..., 1). The squared radius is the
// quadratic form s^T G s with G the Gram matrix of the fundamental weights; points
// are found by a Fincke-Pohst style descent over a rational square-root-free
// decomposition of G, checking every bound exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/rational.hpp"
#include "casimir/rootsys.hpp"

namespace casimir {

enum class LatticeChoice { weight_lattice, root_lattice };

inline std::string lattice_name(LatticeChoice l) { return l == LatticeChoice::weight_lattice ? "weight" : "root"; }

inline LatticeChoice parse_lattice(std::string_view s) {
    if (s == "weight" || s == "weight_lattice") return LatticeChoice::weight_lattice;
    if (s == "root" || s == "root_lattice") return LatticeChoice::root_lattice;
    throw InvalidArgument("unknown lattice '" + std::string(s) + "'");
}

inline bool in_lattice(const RootSystem& rs, const FwVec& fw, LatticeChoice lat) {
    if (fw.size() != rs.rank()) return false;
    if (lat == LatticeChoice::weight_lattice) return true;
    for (const auto& k : rs.simple_coords(fw))
        if (!is_integer(k)) return false;
    return true;
}

/// A lattice weight in fundamental-weight coordinates, with its ambient image.
struct Weight {
    FwVec fw;
    QVector ambient;

    bool dominant() const {
        return std::all_of(fw.begin(), fw.end(), [](std::int64_t c) { return c >= 0; });
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.fw == b.fw; }
    friend bool operator<(const Weight& a, const Weight& b) { return a.fw < b.fw; }
};

inline Weight make_weight(const RootSystem& rs, FwVec fw, LatticeChoice lat = LatticeChoice::weight_lattice) {
    if (fw.size() != rs.rank())
        throw InvalidArgument("weight has " + std::to_string(fw.size()) + " coordinates, rank is " +
                              std::to_string(rs.rank()));
    if (!in_lattice(rs, fw, lat)) throw InvalidArgument("weight is not in the " + lattice_name(lat) + " lattice");
    Weight w;
    w.ambient = rs.ambient_from_fw(fw);
    w.fw = std::move(fw);
    return w;
}

inline std::string format_fw(const FwVec& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

/// |mu + delta|^2 for mu in fw coordinates.
inline Rational a_squared(const RootSystem& rs, const FwVec& mu) {
    FwVec s = mu;
    for (auto& x : s) x += 1;
    return rs.inner_fw(s, s);
}

inline Rational delta_squared(const RootSystem& rs) { return rs.inner(rs.delta, rs.delta); }

/// lambda_mu = |mu + delta|^2 - |delta|^2 for a dominant highest weight mu.
inline Rational casimir_eigenvalue(const RootSystem& rs, const Weight& mu) {
    if (!mu.dominant()) throw InvalidArgument("Casimir eigenvalue requires a dominant weight, got " + format_fw(mu.fw));
    return a_squared(rs, mu.fw) - delta_squared(rs);
}

/// A class of weights sharing one squared radius a^2 around -delta.
struct CasimirClass {
    Rational a_sq;
    Rational lambda;
    std::vector<Weight> dominant_members;
    std::vector<Weight> sphere_members;
};

namespace detail {

// s^T G s = sum_i q[i][i] * (s_i + sum_{j>i} q[i][j] s_j)^2
inline std::vector<QVector> fincke_pohst_form(const QMatrix& g) {
    const std::size_t n = g.rows();
    std::vector<QVector> q(n, QVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) q[i][j] = g(i, j);
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0) throw InvalidArgument("quadratic form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) q[i][j] /= q[i][i];
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[i][i] * q[i][k] * q[i][l];
    }
    return q;
}

// Calls visit(s, value) for every integer vector s with s^T G s <= bound and
// s_i >= lower (when lower is set).
inline void enumerate_ellipsoid(const QMatrix& g, const Rational& bound, std::optional<std::int64_t> lower,
                                const std::function<void(const FwVec&, const Rational&)>& visit) {
    const std::size_t n = g.rows();
    if (bound < 0) return;
    const auto q = fincke_pohst_form(g);
    FwVec s(n, 0);
    std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t level, const Rational& remaining) {
        const std::size_t i = level - 1;
        Rational centre = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (s[j] != 0) centre -= q[i][j] * Rational(static_cast<long>(s[j]));
        const Rational limit = remaining / q[i][i];
        auto fits = [&](std::int64_t v) {
            const Rational d = Rational(static_cast<long>(v)) - centre;
            return d * d <= limit;
        };
        auto take = [&](std::int64_t v) {
            s[i] = v;
            const Rational d = Rational(static_cast<long>(v)) - centre;
            const Rational left = remaining - q[i][i] * d * d;
            if (i == 0) visit(s, bound - left);
            else descend(i, left);
        };
        const std::int64_t mid = to_int64(floor_of(centre));
        for (std::int64_t v = mid; fits(v); --v) {
            if (lower && v < *lower) break;
            take(v);
        }
        for (std::int64_t v = mid + 1; fits(v); ++v) {
            if (lower && v < *lower) continue;
            take(v);
        }
        s[i] = 0;
    };
    if (n == 0) return;
    descend(n, bound);
}

inline FwVec unshift(FwVec s) {
    for (auto& x : s) x -= 1;
    return s;
}

}  // namespace detail

/// All dominant lattice weights with |mu + delta|^2 <= a_sq_cap, lexicographically sorted.
inline std::vector<Weight> enumerate_dominant(const RootSystem& rs, LatticeChoice lat, const Rational& a_sq_cap) {
    std::vector<Weight> out;
    detail::enumerate_ellipsoid(rs.gram_fw, a_sq_cap, std::int64_t{1}, [&](const FwVec& s, const Rational&) {
        FwVec mu = detail::unshift(s);
        if (in_lattice(rs, mu, lat)) out.push_back(make_weight(rs, std::move(mu), lat));
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// The full class S(a): every lattice point at squared distance a_sq from -delta.
inline CasimirClass sphere_set(const RootSystem& rs, LatticeChoice lat, const Rational& a_sq) {
    if (a_sq < 0) throw InvalidArgument("squared radius must be nonnegative");
    CasimirClass cls;
    cls.a_sq = a_sq;
    cls.lambda = a_sq - delta_squared(rs);
    detail::enumerate_ellipsoid(rs.gram_fw, a_sq, std::nullopt, [&](const FwVec& s, const Rational& value) {
        if (value != a_sq) return;
        FwVec mu = detail::unshift(s);
        if (!in_lattice(rs, mu, lat)) return;
        cls.sphere_members.push_back(make_weight(rs, std::move(mu), lat));
    });
    std::sort(cls.sphere_members.begin(), cls.sphere_members.end());
    for (const auto& w : cls.sphere_members)
        if (w.dominant()) cls.dominant_members.push_back(w);
    return cls;
}

/// Casimir classes with a^2 <= a_sq_cap that contain at least one dominant weight,
/// sorted by a^2.
inline std::vector<CasimirClass> classes_up_to(const RootSystem& rs, LatticeChoice lat, const Rational& a_sq_cap) {
    std::map<Rational, bool> radii;
    for (const auto& w : enumerate_dominant(rs, lat, a_sq_cap)) radii.emplace(a_squared(rs, w.fw), true);
    std::vector<CasimirClass> out;
    out.reserve(radii.size());
    for (const auto& [r, _] : radii) out.push_back(sphere_set(rs, lat, r));
    return out;
}

/// Highest weight of the dual representation, -w0(mu) = dominant representative of -mu.
inline Weight dual_weight(const RootSystem& rs, const Weight& mu) {
    if (!mu.dominant()) throw InvalidArgument("dual weight requires a dominant weight, got " + format_fw(mu.fw));
    FwVec neg = mu.fw;
    for (auto& x : neg) x = -x;
    return make_weight(rs, to_dominant_fw(rs, neg).first);
}

inline FwVec dual_fw(const RootSystem& rs, const FwVec& mu) {
    FwVec neg = mu;
    for (auto& x : neg) x = -x;
    return to_dominant_fw(rs, neg).first;
}

}  // namespace casimir
