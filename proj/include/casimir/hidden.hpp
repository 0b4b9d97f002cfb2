#pragma once

// Orthogonal symmetries of a lattice sphere S(a) seen from -delta.
//
// After translating by delta the class becomes a finite set X of vectors of equal
// norm. Its symmetry group is the group of orthogonal maps of span(X) permuting X.
// Such a map is fixed by the images of a basis beta of span(X) taken from X, and a
// permutation of X comes from an orthogonal map exactly when it preserves the Gram
// matrix of X. The search therefore assigns images to beta with matching inner
// products, reads off the induced permutation and checks that it preserves the Gram
// matrix.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/rational.hpp"
#include "casimir/rootsys.hpp"
#include "casimir/weights.hpp"

namespace casimir {

inline constexpr std::size_t kDefaultHiddenPointCap = 60;
inline constexpr std::size_t kDefaultHiddenRankCap = 4;

struct ShiftedConfig {
    Rational a_sq;
    std::vector<FwVec> points;  // shifted points mu + delta, fw coordinates, sorted
    std::vector<QVector> ambient;
    QMatrix gram;

    std::size_t size() const noexcept { return points.size(); }

    std::optional<std::size_t> index_of(const FwVec& p) const {
        const auto it = std::lower_bound(points.begin(), points.end(), p);
        if (it == points.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - points.begin());
    }
};

/// An orthogonal map of the weight space preserving X: `matrix` acts on fw
/// coordinates (identity on the orthogonal complement of span X) and `permutation[i]`
/// is the index of the image of point i.
struct OrthoMap {
    QMatrix matrix;
    std::vector<std::size_t> permutation;
};

/// Configuration built from arbitrary shifted points (fw coordinates) of equal norm.
inline ShiftedConfig make_shifted_config(const RootSystem& rs, std::vector<FwVec> shifted) {
    if (shifted.empty()) throw InvalidArgument("empty point configuration");
    std::sort(shifted.begin(), shifted.end());
    shifted.erase(std::unique(shifted.begin(), shifted.end()), shifted.end());
    ShiftedConfig cfg;
    cfg.a_sq = rs.inner_fw(shifted[0], shifted[0]);
    const std::size_t n = shifted.size();
    cfg.gram = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) cfg.gram(i, j) = cfg.gram(j, i) = rs.inner_fw(shifted[i], shifted[j]);
        if (cfg.gram(i, i) != cfg.a_sq) throw InvalidArgument("points do not share one norm");
        cfg.ambient.push_back(rs.ambient_from_fw(shifted[i]));
    }
    cfg.points = std::move(shifted);
    return cfg;
}

/// X = { mu + delta : mu in S(a) }.
inline ShiftedConfig shifted_config(const RootSystem& rs, const CasimirClass& cls) {
    if (cls.sphere_members.empty()) throw InvalidArgument("empty Casimir class");
    std::vector<FwVec> pts;
    pts.reserve(cls.sphere_members.size());
    for (const auto& w : cls.sphere_members) {
        FwVec s = w.fw;
        for (auto& x : s) x += 1;
        pts.push_back(std::move(s));
    }
    return make_shifted_config(rs, std::move(pts));
}

namespace detail {

inline QMatrix columns(const std::vector<FwVec>& vs, std::size_t dim) {
    QMatrix m(dim, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = Rational(static_cast<long>(vs[j][i]));
    return m;
}

// Basis of the orthogonal complement of the column span of b with respect to g.
inline std::vector<QVector> orthogonal_complement(const QMatrix& b, const QMatrix& g) {
    const QMatrix a = b.transpose() * g;  // rows: functionals <b_j, .>
    const std::size_t n = a.cols();
    // Reduced row echelon form of a.
    QMatrix r = a;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < r.rows(); ++c) {
        std::size_t p = row;
        while (p < r.rows() && r(p, c) == 0) ++p;
        if (p == r.rows()) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(r(row, j), r(p, j));
        const Rational piv = r(row, c);
        for (std::size_t j = 0; j < n; ++j) r(row, j) /= piv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, c) == 0) continue;
            const Rational f = r(i, c);
            for (std::size_t j = 0; j < n; ++j) r(i, j) -= f * r(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        QVector v(n, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

/// Dimension of span(X).
inline std::size_t span_rank(const RootSystem& rs, const ShiftedConfig& cfg) {
    return rank_of(detail::columns(cfg.points, rs.rank()));
}

/// The full group of orthogonal maps of span(X) that permute X, extended by the
/// identity on the orthogonal complement. Sorted by permutation; contains the identity.
inline std::vector<OrthoMap> stabilizer_group(const RootSystem& rs, const ShiftedConfig& cfg,
                                              std::size_t point_cap = kDefaultHiddenPointCap,
                                              std::size_t rank_cap = kDefaultHiddenRankCap) {
    const std::size_t n = cfg.size();
    if (n == 0) throw InvalidArgument("empty point configuration");
    if (n > point_cap)
        throw CapExceeded("hidden_points", "class has " + std::to_string(n) + " points, above the cap " +
                                               std::to_string(point_cap));
    const std::size_t dim = rs.rank();
    const std::size_t r = span_rank(rs, cfg);
    if (r > rank_cap)
        throw CapExceeded("hidden_rank", "points span a space of dimension " + std::to_string(r) +
                                             ", above the cap " + std::to_string(rank_cap));

    // Integer Gram table: P = L * gram with L the common denominator.
    Integer lcm = 1;
    for (const auto& v : cfg.gram.data()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    std::vector<std::int64_t> P(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational v = cfg.gram(i, j) * Rational(lcm);
            P[i * n + j] = to_int64(v.get_num());
        }
    auto p = [&](std::size_t i, std::size_t j) { return P[i * n + j]; };

    // Profile of a point: the sorted row of inner products. Symmetries preserve it.
    std::vector<std::vector<std::int64_t>> profile(n);
    for (std::size_t i = 0; i < n; ++i) {
        profile[i].assign(P.begin() + static_cast<std::ptrdiff_t>(i * n),
                          P.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
        std::sort(profile[i].begin(), profile[i].end());
    }
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> by_profile;
    for (std::size_t i = 0; i < n; ++i) by_profile[profile[i]].push_back(i);

    // Basis beta: points from the rarest profiles first, kept when independent.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return by_profile[profile[a]].size() < by_profile[profile[b]].size();
    });
    std::vector<std::size_t> beta;
    std::vector<FwVec> beta_vecs;
    for (std::size_t i : order) {
        if (beta.size() == r) break;
        beta_vecs.push_back(cfg.points[i]);
        if (rank_of(detail::columns(beta_vecs, dim)) == beta_vecs.size()) beta.push_back(i);
        else beta_vecs.pop_back();
    }
    if (beta.size() != r) throw ConsistencyError("could not extract a basis of span(X)");

    // Every x in X is determined by its inner products with beta.
    std::map<std::vector<std::int64_t>, std::size_t> key_to_index;
    auto key_of = [&](std::size_t x, const std::vector<std::size_t>& basis) {
        std::vector<std::int64_t> k(basis.size());
        for (std::size_t t = 0; t < basis.size(); ++t) k[t] = p(x, basis[t]);
        return k;
    };
    for (std::size_t x = 0; x < n; ++x)
        if (!key_to_index.emplace(key_of(x, beta), x).second)
            throw ConsistencyError("two points share all inner products with a basis");

    const QMatrix bmat = detail::columns(beta_vecs, dim);
    const auto comp = detail::orthogonal_complement(bmat, rs.gram_fw);
    QMatrix src(dim, dim);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < dim; ++i) src(i, j) = bmat(i, j);
    for (std::size_t j = 0; j < comp.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) src(i, r + j) = comp[j][i];
    const QMatrix src_inv = inverse(src);

    std::vector<OrthoMap> group;
    std::vector<std::size_t> image(r);
    std::vector<bool> used(n, false);

    auto finish = [&] {
        std::vector<std::size_t> perm(n);
        std::vector<bool> hit(n, false);
        // <x, phi(b)> = <z, b> identifies z = phi^{-1}(x).
        for (std::size_t x = 0; x < n; ++x) {
            const auto it = key_to_index.find(key_of(x, image));
            if (it == key_to_index.end() || hit[it->second]) return;
            perm[it->second] = x;
            hit[it->second] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (p(perm[i], perm[j]) != p(i, j)) return;
        QMatrix dst = src;
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < dim; ++i) dst(i, j) = Rational(static_cast<long>(cfg.points[image[j]][i]));
        OrthoMap m;
        m.matrix = dst * src_inv;
        m.permutation = std::move(perm);
        group.push_back(std::move(m));
    };

    std::function<void(std::size_t)> assign = [&](std::size_t k) {
        if (k == r) {
            finish();
            return;
        }
        for (std::size_t cand : by_profile[profile[beta[k]]]) {
            if (used[cand]) continue;
            bool ok = true;
            for (std::size_t t = 0; t < k && ok; ++t) ok = p(cand, image[t]) == p(beta[k], beta[t]);
            if (!ok) continue;
            used[cand] = true;
            image[k] = cand;
            assign(k + 1);
            used[cand] = false;
        }
    };
    assign(0);

    for (const auto& g : group)
        if (g.matrix.transpose() * rs.gram_fw * g.matrix != rs.gram_fw)
            throw ConsistencyError("stabilizer element does not preserve the form");
    std::sort(group.begin(), group.end(),
              [](const OrthoMap& a, const OrthoMap& b) { return a.permutation < b.permutation; });
    return group;
}

/// Orbits of a permutation group on the point indices, each sorted, ordered by least element.
inline std::vector<std::vector<std::size_t>> orbits(const ShiftedConfig& cfg, const std::vector<OrthoMap>& grp) {
    const std::size_t n = cfg.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : grp)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t a = find(i), b = find(g.permutation[i]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

inline bool check_transitivity(const ShiftedConfig& cfg, const std::vector<OrthoMap>& grp) {
    return orbits(cfg, grp).size() == 1;
}

struct WeylInclusion {
    bool included = false;
    std::vector<std::vector<std::size_t>> permutations;  // one per Weyl element, when included
};

/// Whether every Weyl element maps X onto itself, with the induced permutations.
inline WeylInclusion check_weyl_inclusion(const RootSystem& rs, const ShiftedConfig& cfg,
                                          std::int64_t weyl_cap = kDefaultWeylOrderCap) {
    WeylInclusion out;
    for (const auto& w : weyl_group(rs, weyl_cap)) {
        std::vector<std::size_t> perm(cfg.size());
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            const auto j = cfg.index_of(rs.apply_word_fw(w.word, cfg.points[i]));
            if (!j) {
                out.permutations.clear();
                return out;
            }
            perm[i] = *j;
        }
        out.permutations.push_back(std::move(perm));
    }
    out.included = true;
    return out;
}

/// Stabilizer order, orbit partition and the two verdicts for one class.
struct HiddenSummary {
    Rational a_sq;
    std::size_t points = 0;
    std::size_t span = 0;
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> orbit_list;
    bool transitive = false;
    bool weyl_included = false;
    std::size_t weyl_order = 0;
    ShiftedConfig config;

    /// Orbit index of the point mu + delta.
    std::optional<std::size_t> orbit_of(const FwVec& mu) const {
        FwVec s = mu;
        for (auto& x : s) x += 1;
        const auto idx = config.index_of(s);
        if (!idx) return std::nullopt;
        for (std::size_t k = 0; k < orbit_list.size(); ++k)
            if (std::binary_search(orbit_list[k].begin(), orbit_list[k].end(), *idx)) return k;
        return std::nullopt;
    }
};

inline HiddenSummary hidden_summary(const RootSystem& rs, const CasimirClass& cls,
                                    std::size_t point_cap = kDefaultHiddenPointCap,
                                    std::size_t rank_cap = kDefaultHiddenRankCap,
                                    std::int64_t weyl_cap = kDefaultWeylOrderCap) {
    HiddenSummary h;
    h.a_sq = cls.a_sq;
    h.config = shifted_config(rs, cls);
    h.points = h.config.size();
    const auto grp = stabilizer_group(rs, h.config, point_cap, rank_cap);
    h.span = span_rank(rs, h.config);
    h.order = grp.size();
    h.orbit_list = orbits(h.config, grp);
    h.transitive = h.orbit_list.size() == 1;
    const auto inc = check_weyl_inclusion(rs, h.config, weyl_cap);
    h.weyl_included = inc.included;
    h.weyl_order = inc.permutations.size();
    return h;
}

}  // namespace casimir
