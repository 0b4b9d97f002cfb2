#pragma once

// Root systems over exact rationals, with Weyl-group machinery.
//
// Realizations follow the textbook conventions (Bourbaki numbering). The base form
// is the Euclidean dot product on the ambient space multiplied by a per-coordinate
// factor chosen so that long roots have squared norm 2; `metric_scale` multiplies
// the whole form. Weights are handled mostly in fundamental-weight coordinates,
// where simple reflections act by integer matrices.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/rational.hpp"

namespace casimir {

using FwVec = std::vector<std::int64_t>;

enum class Family { A, B, C, D, E, F, G };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

inline Family parse_family(std::string_view s) {
    if (s.size() == 1) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
        if (c >= 'A' && c <= 'G') return static_cast<Family>(c - 'A');
    }
    throw InvalidArgument("unknown root system family '" + std::string(s) + "'");
}

struct RootSystemType {
    Family family = Family::A;
    int rank = 1;

    std::string name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }
    friend bool operator==(const RootSystemType&, const RootSystemType&) = default;
};

inline bool is_valid_type(const RootSystemType& t) {
    switch (t.family) {
        case Family::A: return t.rank >= 1;
        case Family::B: return t.rank >= 2;
        case Family::C: return t.rank >= 2;
        case Family::D: return t.rank >= 3;
        case Family::E: return t.rank >= 6 && t.rank <= 8;
        case Family::F: return t.rank == 4;
        case Family::G: return t.rank == 2;
    }
    return false;
}

/// |W| from the closed-form order of each irreducible type.
inline Integer weyl_order(const RootSystemType& t) {
    auto fact = [](int n) {
        Integer r = 1;
        for (int k = 2; k <= n; ++k) r *= k;
        return r;
    };
    const int n = t.rank;
    switch (t.family) {
        case Family::A: return fact(n + 1);
        case Family::B:
        case Family::C: return (Integer(1) << n) * fact(n);
        case Family::D: return (Integer(1) << (n - 1)) * fact(n);
        case Family::E: return n == 6 ? Integer(51840) : n == 7 ? Integer(2903040) : Integer(696729600);
        case Family::F: return 1152;
        case Family::G: return 12;
    }
    return 0;
}

inline constexpr std::int64_t kDefaultWeylOrderCap = 10080;

/// A Weyl group element: `matrix` = S[word[0]] * S[word[1]] * ... * S[word.back()],
/// with S[i] the ambient matrix of the i-th simple reflection.
struct WeylElement {
    std::vector<int> word;
    QMatrix matrix;
};

class RootSystem {
public:
    // Irreducible components in order; a single entry for simple types.
    std::vector<RootSystemType> components;
    std::size_t ambient_dim = 0;
    // Per-coordinate factors of the base form (metric_scale excluded).
    QVector form_diag;
    Rational metric_scale = 1;

    std::vector<QVector> simple_roots;
    std::vector<QVector> positive_roots;
    std::vector<std::vector<int>> cartan;  // cartan[i][j] = 2(a_i,a_j)/(a_j,a_j)
    std::vector<QVector> fundamental_weights;
    QVector delta;
    QMatrix gram_fw;  // (w_i, w_j) including metric_scale

    // Fundamental-weight coordinates of the positive roots and their coordinates
    // in the simple-root basis (both integral).
    std::vector<FwVec> positive_roots_fw;
    std::vector<FwVec> positive_roots_simple;
    // ((fw coords) -> simple-root coords) is c -> fw_to_simple * c.
    QMatrix fw_to_simple;
    // <mu, 2 rho^vee> = sum_i two_rho_check[i] * mu_i.
    std::vector<std::int64_t> two_rho_check;

    std::size_t rank() const noexcept { return simple_roots.size(); }
    bool is_simple() const noexcept { return components.size() == 1; }

    std::string name() const {
        std::string s;
        for (std::size_t k = 0; k < components.size(); ++k) s += (k ? "x" : "") + components[k].name();
        return s;
    }

    Rational base_inner(const QVector& x, const QVector& y) const {
        if (x.size() != ambient_dim || y.size() != ambient_dim)
            throw InvalidArgument("vector dimension does not match the ambient space");
        Rational r = 0;
        for (std::size_t k = 0; k < ambient_dim; ++k)
            if (x[k] != 0 && y[k] != 0) r += form_diag[k] * x[k] * y[k];
        return r;
    }

    /// Inner product g = metric_scale * base form.
    Rational inner(const QVector& x, const QVector& y) const { return metric_scale * base_inner(x, y); }

    /// Inner product of two weights given in fundamental-weight coordinates.
    template <typename V1, typename V2>
    Rational inner_fw(const V1& x, const V2& y) const {
        Rational r = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            Rational row = 0;
            for (std::size_t j = 0; j < rank(); ++j)
                if (y[j] != 0) row += gram_fw(i, j) * Rational(static_cast<long>(y[j]));
            r += Rational(static_cast<long>(x[i])) * row;
        }
        return r;
    }

    QVector ambient_from_fw(const FwVec& c) const {
        QVector v(ambient_dim, Rational(0));
        for (std::size_t i = 0; i < rank(); ++i)
            if (c[i] != 0) v = v + Rational(static_cast<long>(c[i])) * fundamental_weights[i];
        return v;
    }

    /// Coordinates <x, a_i^vee> of an ambient vector in the fundamental-weight basis.
    QVector fw_from_ambient(const QVector& x) const {
        QVector c(rank());
        for (std::size_t i = 0; i < rank(); ++i)
            c[i] = 2 * base_inner(x, simple_roots[i]) / base_inner(simple_roots[i], simple_roots[i]);
        return c;
    }

    /// Simple-root coordinates of a weight given in fw coordinates (rational in general).
    QVector simple_coords(const FwVec& c) const {
        QVector k(rank(), Rational(0));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                if (c[j] != 0) k[i] += fw_to_simple(i, j) * Rational(static_cast<long>(c[j]));
        return k;
    }

    /// Simple reflection s_i in fw coordinates: c -> c - c_i * (row i of the Cartan matrix).
    void reflect_fw(FwVec& c, std::size_t i) const {
        const std::int64_t ci = c[i];
        if (ci == 0) return;
        for (std::size_t j = 0; j < rank(); ++j) c[j] -= ci * cartan[i][j];
    }

    QMatrix reflection_matrix(std::size_t i) const {
        const QVector& a = simple_roots[i];
        const Rational n = base_inner(a, a);
        QMatrix s = QMatrix::identity(ambient_dim);
        for (std::size_t r = 0; r < ambient_dim; ++r) {
            if (a[r] == 0) continue;
            for (std::size_t c = 0; c < ambient_dim; ++c)
                if (a[c] != 0) s(r, c) -= 2 * a[r] * form_diag[c] * a[c] / n;
        }
        return s;
    }

    QMatrix matrix_of_word(const std::vector<int>& word) const {
        QMatrix m = QMatrix::identity(ambient_dim);
        for (int i : word) m = m * reflection_matrix(static_cast<std::size_t>(i));
        return m;
    }

    /// Applies the element with the given word to fw coordinates (rightmost letter first).
    FwVec apply_word_fw(const std::vector<int>& word, FwVec c) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it) reflect_fw(c, static_cast<std::size_t>(*it));
        return c;
    }

    Integer weyl_group_order() const {
        Integer r = 1;
        for (const auto& t : components) r *= weyl_order(t);
        return r;
    }
};

namespace detail {

inline QVector unit(std::size_t n, std::size_t k, const Rational& v = 1) {
    QVector e(n, Rational(0));
    e[k] = v;
    return e;
}

struct Realization {
    std::size_t ambient_dim = 0;
    Rational scale = 1;
    std::vector<QVector> simple;
};

inline Realization realize(const RootSystemType& t) {
    const int n = t.rank;
    Realization r;
    auto e = [&](int k) { return unit(r.ambient_dim, static_cast<std::size_t>(k)); };
    auto chain = [&](int count) {
        for (int i = 0; i < count; ++i) r.simple.push_back(e(i) - e(i + 1));
    };
    switch (t.family) {
        case Family::A:
            r.ambient_dim = static_cast<std::size_t>(n + 1);
            chain(n);
            break;
        case Family::B:
            r.ambient_dim = static_cast<std::size_t>(n);
            chain(n - 1);
            r.simple.push_back(e(n - 1));
            break;
        case Family::C:
            r.ambient_dim = static_cast<std::size_t>(n);
            r.scale = Rational(1, 2);
            chain(n - 1);
            r.simple.push_back(Rational(2) * e(n - 1));
            break;
        case Family::D:
            r.ambient_dim = static_cast<std::size_t>(n);
            chain(n - 1);
            r.simple.push_back(e(n - 2) + e(n - 1));
            break;
        case Family::E: {
            r.ambient_dim = 8;
            const Rational h(1, 2);
            QVector a1(8, -h);
            a1[0] = h;
            a1[7] = h;
            r.simple.push_back(a1);
            r.simple.push_back(e(0) + e(1));
            for (int i = 1; i <= n - 2; ++i) r.simple.push_back(e(i) - e(i - 1));
            break;
        }
        case Family::F: {
            r.ambient_dim = 4;
            const Rational h(1, 2);
            r.simple.push_back(e(1) - e(2));
            r.simple.push_back(e(2) - e(3));
            r.simple.push_back(e(3));
            r.simple.push_back(QVector{h, -h, -h, -h});
            break;
        }
        case Family::G:
            r.ambient_dim = 3;
            r.scale = Rational(1, 3);
            r.simple.push_back(QVector{1, -1, 0});
            r.simple.push_back(QVector{-2, 1, 1});
            break;
    }
    return r;
}

// Fills everything derived from simple roots, form and metric scale.
inline void complete(RootSystem& rs) {
    const std::size_t r = rs.rank();
    QMatrix b(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) b(i, j) = rs.base_inner(rs.simple_roots[i], rs.simple_roots[j]);

    rs.cartan.assign(r, std::vector<int>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const Rational v = 2 * b(i, j) / b(j, j);
            if (!is_integer(v)) throw ConsistencyError("non-integral Cartan entry");
            rs.cartan[i][j] = static_cast<int>(v.get_num().get_si());
        }

    // w_i = sum_k X_ik a_k with X = diag((a_j,a_j)/2) B^{-1}.
    const QMatrix binv = inverse(b);
    rs.fundamental_weights.assign(r, QVector(rs.ambient_dim, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            const Rational x = b(i, i) / 2 * binv(i, k);
            if (x != 0) rs.fundamental_weights[i] = rs.fundamental_weights[i] + x * rs.simple_roots[k];
        }

    rs.gram_fw = QMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            rs.gram_fw(i, j) = rs.inner(rs.fundamental_weights[i], rs.fundamental_weights[j]);

    // a_i = sum_j cartan[i][j] w_j, so fw coords c = C^T k and k = C^{-T} c.
    QMatrix ct(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) ct(j, i) = rs.cartan[i][j];
    rs.fw_to_simple = inverse(ct);

    // All roots: closure of the simple roots under simple reflections (fw coords).
    std::map<FwVec, bool> seen;
    std::deque<FwVec> queue;
    for (std::size_t i = 0; i < r; ++i) {
        FwVec c(rs.cartan[i].begin(), rs.cartan[i].end());
        if (seen.emplace(c, true).second) queue.push_back(c);
    }
    while (!queue.empty()) {
        FwVec c = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < r; ++i) {
            FwVec d = c;
            rs.reflect_fw(d, i);
            if (seen.emplace(d, true).second) queue.push_back(d);
        }
    }
    rs.positive_roots.clear();
    rs.positive_roots_fw.clear();
    rs.positive_roots_simple.clear();
    for (const auto& [c, _] : seen) {
        const QVector k = rs.simple_coords(c);
        bool nonneg = true;
        FwVec ki(r);
        for (std::size_t i = 0; i < r; ++i) {
            if (!is_integer(k[i])) throw ConsistencyError("root with non-integral simple coordinates");
            if (k[i] < 0) nonneg = false;
            ki[i] = k[i].get_num().get_si();
        }
        if (!nonneg) continue;
        QVector amb(rs.ambient_dim, Rational(0));
        for (std::size_t i = 0; i < r; ++i)
            if (ki[i] != 0) amb = amb + Rational(static_cast<long>(ki[i])) * rs.simple_roots[i];
        rs.positive_roots.push_back(amb);
        rs.positive_roots_fw.push_back(c);
        rs.positive_roots_simple.push_back(ki);
    }

    rs.delta = QVector(rs.ambient_dim, Rational(0));
    for (const auto& a : rs.positive_roots) rs.delta = rs.delta + a;
    rs.delta = Rational(1, 2) * rs.delta;

    // 2 rho^vee = sum over positive a of a^vee, with a^vee = sum_i k_i (a_i,a_i)/(a,a) a_i^vee.
    rs.two_rho_check.assign(r, 0);
    for (std::size_t p = 0; p < rs.positive_roots.size(); ++p) {
        const Rational na = rs.base_inner(rs.positive_roots[p], rs.positive_roots[p]);
        for (std::size_t i = 0; i < r; ++i) {
            const Rational v = Rational(static_cast<long>(rs.positive_roots_simple[p][i])) * b(i, i) / na;
            if (!is_integer(v)) throw ConsistencyError("non-integral coroot coordinate");
            rs.two_rho_check[i] += v.get_num().get_si();
        }
    }
}

}  // namespace detail

/// Builds an irreducible root system in its standard rational realization.
inline RootSystem build_root_system(const RootSystemType& typ, const Rational& metric_scale = 1) {
    if (!is_valid_type(typ)) throw InvalidArgument("invalid Dynkin type " + typ.name());
    if (metric_scale <= 0) throw InvalidArgument("metric scale must be positive");
    const auto real = detail::realize(typ);
    RootSystem rs;
    rs.components = {typ};
    rs.ambient_dim = real.ambient_dim;
    rs.form_diag = QVector(real.ambient_dim, real.scale);
    rs.metric_scale = metric_scale;
    rs.simple_roots = real.simple;
    detail::complete(rs);
    return rs;
}

/// Orthogonal sum of two root systems (ambient spaces concatenated). Used for G' x G'.
inline RootSystem product_root_system(const RootSystem& a, const RootSystem& b) {
    if (a.metric_scale != b.metric_scale) throw InvalidArgument("product of root systems with different metric scales");
    RootSystem rs;
    rs.components = a.components;
    rs.components.insert(rs.components.end(), b.components.begin(), b.components.end());
    rs.ambient_dim = a.ambient_dim + b.ambient_dim;
    rs.form_diag = a.form_diag;
    rs.form_diag.insert(rs.form_diag.end(), b.form_diag.begin(), b.form_diag.end());
    rs.metric_scale = a.metric_scale;
    for (const auto& s : a.simple_roots) {
        QVector v = s;
        v.resize(rs.ambient_dim, Rational(0));
        rs.simple_roots.push_back(v);
    }
    for (const auto& s : b.simple_roots) {
        QVector v(a.ambient_dim, Rational(0));
        v.insert(v.end(), s.begin(), s.end());
        rs.simple_roots.push_back(v);
    }
    detail::complete(rs);
    return rs;
}

/// Weyl-orbit representative in the closed dominant chamber together with an element
/// w such that w(x) is that representative.
inline std::pair<QVector, WeylElement> to_dominant(const RootSystem& rs, QVector x) {
    if (x.size() != rs.ambient_dim) throw InvalidArgument("vector dimension does not match the ambient space");
    std::vector<int> applied;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            const QVector& a = rs.simple_roots[i];
            const Rational p = rs.base_inner(x, a);
            if (p < 0) {
                x = x - (2 * p / rs.base_inner(a, a)) * a;
                applied.push_back(static_cast<int>(i));
                moved = true;
                break;
            }
        }
    }
    WeylElement w;
    w.word.assign(applied.rbegin(), applied.rend());
    w.matrix = rs.matrix_of_word(w.word);
    return {x, w};
}

/// Integer fast path of to_dominant in fw coordinates. Returns the dominant vector and
/// the number of reflections applied (its parity is the sign of the element).
inline std::pair<FwVec, std::size_t> to_dominant_fw(const RootSystem& rs, FwVec c) {
    std::size_t steps = 0;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            if (c[i] < 0) {
                rs.reflect_fw(c, i);
                ++steps;
                moved = true;
                break;
            }
        }
    }
    return {c, steps};
}

/// Complete duplicate-free enumeration of W by breadth-first closure, refused when
/// |W| exceeds `cap`.
inline std::vector<WeylElement> weyl_group(const RootSystem& rs, std::int64_t cap = kDefaultWeylOrderCap) {
    const Integer order = rs.weyl_group_order();
    if (order > cap)
        throw CapExceeded("weyl_order", "Weyl group of " + rs.name() + " has order " + order.get_str() +
                                            ", above the cap " + std::to_string(cap));
    // w is identified by w(delta), delta having all fw coordinates equal to 1.
    const FwVec rho(rs.rank(), 1);
    std::map<FwVec, std::vector<int>> words;
    std::deque<FwVec> queue;
    words.emplace(rho, std::vector<int>{});
    queue.push_back(rho);
    std::vector<FwVec> order_found{rho};
    while (!queue.empty()) {
        const FwVec img = queue.front();
        queue.pop_front();
        const std::vector<int> word = words.at(img);
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            FwVec next = img;
            rs.reflect_fw(next, i);
            if (words.count(next)) continue;
            std::vector<int> w2;
            w2.reserve(word.size() + 1);
            w2.push_back(static_cast<int>(i));
            w2.insert(w2.end(), word.begin(), word.end());
            words.emplace(next, std::move(w2));
            queue.push_back(next);
            order_found.push_back(next);
        }
    }
    if (Integer(static_cast<long>(order_found.size())) != order)
        throw ConsistencyError("Weyl group closure produced " + std::to_string(order_found.size()) +
                               " elements, expected " + order.get_str());
    std::vector<WeylElement> out;
    out.reserve(order_found.size());
    for (const auto& key : order_found) {
        WeylElement w;
        w.word = words.at(key);
        w.matrix = rs.matrix_of_word(w.word);
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace casimir
