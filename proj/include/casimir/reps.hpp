#pragma once

// Finite-dimensional irreducibles by highest weight: dimensions, weight multiplicities,
// tensor products, exterior powers, real/complex/quaternionic type and the dimension
// of K-invariants in V (x) U* for the supported subgroups K.
//
// Everything is in fundamental-weight coordinates. A Character maps a weight to its
// multiplicity; a Decomposition maps a dominant highest weight to the number of
// copies of that irreducible.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/rational.hpp"
#include "casimir/rootsys.hpp"
#include "casimir/weights.hpp"

namespace casimir {

using Character = std::map<FwVec, std::int64_t>;
using Decomposition = std::map<FwVec, std::int64_t>;

enum class RepType { real, complex, quaternionic };

inline std::string rep_type_name(RepType t) {
    switch (t) {
        case RepType::real: return "real";
        case RepType::complex: return "complex";
        case RepType::quaternionic: return "quaternionic";
    }
    return "?";
}

inline void require_rank(const RootSystem& rs, const FwVec& mu) {
    if (mu.size() != rs.rank())
        throw InvalidArgument("weight " + format_fw(mu) + " does not match rank " + std::to_string(rs.rank()));
}

inline void require_dominant(const RootSystem& rs, const FwVec& mu) {
    require_rank(rs, mu);
    for (auto c : mu)
        if (c < 0) throw InvalidArgument("highest weight " + format_fw(mu) + " is not dominant");
}

/// Weyl dimension formula: prod over positive roots of (mu + delta, a) / (delta, a).
inline Integer weyl_dim(const RootSystem& rs, const FwVec& mu) {
    require_dominant(rs, mu);
    FwVec s = mu;
    for (auto& x : s) x += 1;
    const FwVec rho(rs.rank(), 1);
    Rational d = 1;
    for (const auto& a : rs.positive_roots_fw) d *= rs.inner_fw(s, a) / rs.inner_fw(rho, a);
    if (!is_integer(d)) throw ConsistencyError("Weyl dimension is not an integer for " + format_fw(mu));
    return d.get_num();
}

inline std::int64_t weyl_dim_i64(const RootSystem& rs, const FwVec& mu) { return to_int64(weyl_dim(rs, mu)); }

/// <mu, 2 rho^vee>: an integer that increases by 2 * height(a^vee) when a positive root is added.
inline std::int64_t level(const RootSystem& rs, const FwVec& mu) {
    std::int64_t r = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) r += rs.two_rho_check[i] * mu[i];
    return r;
}

/// W-orbit of a weight (fw coordinates), sorted.
inline std::vector<FwVec> weyl_orbit(const RootSystem& rs, const FwVec& lambda) {
    std::set<FwVec> seen{lambda};
    std::deque<FwVec> queue{lambda};
    while (!queue.empty()) {
        const FwVec v = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            if (v[i] == 0) continue;
            FwVec w = v;
            rs.reflect_fw(w, i);
            if (seen.insert(w).second) queue.push_back(w);
        }
    }
    return {seen.begin(), seen.end()};
}

/// Dominant weights lambda <= mu in the root-lattice coset of mu. Dominant weights
/// below mu are linked to mu by chains of dominant weights differing by positive roots,
/// so a search subtracting positive roots and staying dominant reaches all of them.
inline std::vector<FwVec> dominant_weights_below(const RootSystem& rs, const FwVec& mu) {
    require_dominant(rs, mu);
    std::set<FwVec> seen{mu};
    std::deque<FwVec> queue{mu};
    while (!queue.empty()) {
        const FwVec v = queue.front();
        queue.pop_front();
        for (const auto& a : rs.positive_roots_fw) {
            FwVec w = v;
            bool dom = true;
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] -= a[i];
                if (w[i] < 0) dom = false;
            }
            if (dom && seen.insert(w).second) queue.push_back(w);
        }
    }
    std::vector<FwVec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [&](const FwVec& x, const FwVec& y) {
        const auto lx = level(rs, x), ly = level(rs, y);
        return lx != ly ? lx > ly : x < y;
    });
    return out;
}

/// Multiplicities of the dominant weights of V^mu by Freudenthal's recursion.
inline Character dominant_multiplicities(const RootSystem& rs, const FwVec& mu) {
    const auto doms = dominant_weights_below(rs, mu);
    Character m;
    FwVec smu = mu;
    for (auto& x : smu) x += 1;
    const Rational top = rs.inner_fw(smu, smu);
    for (const auto& lam : doms) {
        if (lam == mu) {
            m[lam] = 1;
            continue;
        }
        Rational sum = 0;
        for (const auto& a : rs.positive_roots_fw) {
            FwVec v = lam;
            for (std::int64_t k = 1;; ++k) {
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += a[i];
                const auto it = m.find(to_dominant_fw(rs, v).first);
                if (it == m.end() || it->second == 0) break;
                sum += Rational(static_cast<long>(it->second)) * rs.inner_fw(v, a);
            }
        }
        FwVec slam = lam;
        for (auto& x : slam) x += 1;
        const Rational denom = top - rs.inner_fw(slam, slam);
        const Rational val = 2 * sum / denom;
        if (!is_integer(val) || val < 0)
            throw ConsistencyError("Freudenthal recursion gave " + to_string(val) + " at " + format_fw(lam));
        m[lam] = to_int64(val.get_num());
    }
    return m;
}

namespace detail {

struct CharacterCache {
    std::mutex lock;
    std::map<std::pair<std::string, FwVec>, std::shared_ptr<const Character>> table;
};

inline CharacterCache& character_cache() {
    static CharacterCache cache;
    return cache;
}

}  // namespace detail

/// Full weight-multiplicity table of V^mu. Results are memoized per (type, mu); the
/// cache only ever gains identical entries, so concurrent callers are safe.
inline const Character& weight_multiplicities(const RootSystem& rs, const FwVec& mu) {
    require_dominant(rs, mu);
    auto& cache = detail::character_cache();
    const auto key = std::make_pair(rs.name(), mu);
    {
        std::lock_guard<std::mutex> g(cache.lock);
        const auto it = cache.table.find(key);
        if (it != cache.table.end()) return *it->second;
    }
    auto full = std::make_shared<Character>();
    for (const auto& [lam, mult] : dominant_multiplicities(rs, mu)) {
        if (mult == 0) continue;
        for (const auto& w : weyl_orbit(rs, lam)) (*full)[w] = mult;
    }
    std::lock_guard<std::mutex> g(cache.lock);
    return *cache.table.emplace(key, std::move(full)).first->second;
}

inline std::int64_t character_dim(const Character& ch) {
    std::int64_t d = 0;
    for (const auto& [w, m] : ch) d += m;
    return d;
}

inline std::int64_t decomposition_dim(const RootSystem& rs, const Decomposition& d) {
    std::int64_t total = 0;
    for (const auto& [mu, k] : d) total += k * weyl_dim_i64(rs, mu);
    return total;
}

/// Product of two characters (weight multiset of the tensor product).
inline Character convolve(const Character& a, const Character& b) {
    Character out;
    for (const auto& [x, mx] : a)
        for (const auto& [y, my] : b) {
            FwVec z = x;
            for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
            out[z] += mx * my;
        }
    return out;
}

/// Character of a decomposition.
inline Character character_of(const RootSystem& rs, const Decomposition& d) {
    Character out;
    for (const auto& [mu, k] : d)
        for (const auto& [w, m] : weight_multiplicities(rs, mu)) out[w] += k * m;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Splits a W-invariant character into irreducibles by repeatedly removing the
/// character of the highest remaining dominant weight.
inline Decomposition decompose_character(const RootSystem& rs, Character ch) {
    Decomposition out;
    auto drop_zeros = [&] {
        for (auto it = ch.begin(); it != ch.end();) it = it->second == 0 ? ch.erase(it) : std::next(it);
    };
    drop_zeros();
    while (!ch.empty()) {
        const FwVec* best = nullptr;
        std::int64_t best_level = 0;
        for (const auto& [w, m] : ch) {
            if (std::any_of(w.begin(), w.end(), [](std::int64_t c) { return c < 0; })) continue;
            const auto l = level(rs, w);
            if (!best || l > best_level) {
                best = &w;
                best_level = l;
            }
        }
        if (!best) throw ConsistencyError("character has no dominant weight left");
        const FwVec top = *best;
        const std::int64_t k = ch.at(top);
        out[top] += k;
        for (const auto& [w, m] : weight_multiplicities(rs, top)) ch[w] -= k * m;
        drop_zeros();
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// V^mu (x) V^eta by the Brauer-Klimyk rule: each weight nu of the smaller factor
/// contributes sign(w) to the dominant w(mu + nu + delta) - delta when that point is regular.
inline Decomposition tensor_decompose(const RootSystem& rs, const FwVec& mu, const FwVec& eta) {
    require_dominant(rs, mu);
    require_dominant(rs, eta);
    const bool swap = weyl_dim(rs, mu) < weyl_dim(rs, eta);
    const FwVec& big = swap ? eta : mu;
    const FwVec& small = swap ? mu : eta;
    Decomposition out;
    for (const auto& [nu, m] : weight_multiplicities(rs, small)) {
        FwVec s = big;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += nu[i] + 1;
        const auto [dom, steps] = to_dominant_fw(rs, s);
        if (std::any_of(dom.begin(), dom.end(), [](std::int64_t c) { return c == 0; })) continue;
        FwVec hw = dom;
        for (auto& x : hw) x -= 1;
        out[hw] += (steps % 2 == 0 ? m : -m);
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second < 0) throw ConsistencyError("negative multiplicity in tensor product at " + format_fw(it->first));
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

/// Tensor product of two decompositions.
inline Decomposition tensor_decompose(const RootSystem& rs, const Decomposition& a, const Decomposition& b) {
    Decomposition out;
    for (const auto& [x, kx] : a)
        for (const auto& [y, ky] : b)
            for (const auto& [z, kz] : tensor_decompose(rs, x, y)) out[z] += kx * ky * kz;
    return out;
}

/// Adams operation psi^k: every weight is multiplied by k.
inline Character adams(const Character& ch, std::int64_t k) {
    Character out;
    for (const auto& [w, m] : ch) {
        FwVec v = w;
        for (auto& x : v) x *= k;
        out[v] += m;
    }
    return out;
}

/// Decompositions of the exterior powers of V^mu for p = 0..pmax, from the Newton
/// identity p * e_p = sum_{k=1..p} (-1)^{k-1} psi^k(chi) e_{p-k}.
inline std::vector<Decomposition> exterior_powers(const RootSystem& rs, const FwVec& mu, std::int64_t pmax) {
    require_dominant(rs, mu);
    const auto& chi = weight_multiplicities(rs, mu);
    const std::int64_t dim = character_dim(chi);
    if (pmax < 0 || pmax > dim)
        throw InvalidArgument("exterior power index " + std::to_string(pmax) + " outside 0.." + std::to_string(dim));
    std::vector<Character> e;
    e.push_back(Character{{FwVec(rs.rank(), 0), 1}});
    std::vector<Character> psi(static_cast<std::size_t>(pmax) + 1);
    for (std::int64_t k = 1; k <= pmax; ++k) psi[static_cast<std::size_t>(k)] = adams(chi, k);
    for (std::int64_t p = 1; p <= pmax; ++p) {
        Character acc;
        for (std::int64_t k = 1; k <= p; ++k) {
            const auto term = convolve(psi[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(p - k)]);
            const std::int64_t sign = (k % 2 == 1) ? 1 : -1;
            for (const auto& [w, m] : term) acc[w] += sign * m;
        }
        Character ep;
        for (const auto& [w, m] : acc) {
            if (m == 0) continue;
            if (m % p != 0) throw ConsistencyError("Newton identity left a non-divisible coefficient");
            ep[w] = m / p;
        }
        e.push_back(std::move(ep));
    }
    std::vector<Decomposition> out;
    out.reserve(e.size());
    for (auto& ch : e) out.push_back(decompose_character(rs, std::move(ch)));
    return out;
}

/// Permutation of the fundamental weights induced by -w0 (omega_i -> omega_{sigma(i)}).
inline std::vector<std::size_t> duality_permutation(const RootSystem& rs) {
    std::vector<std::size_t> sigma(rs.rank());
    for (std::size_t i = 0; i < rs.rank(); ++i) {
        FwVec w(rs.rank(), 0);
        w[i] = 1;
        const FwVec d = dual_fw(rs, w);
        const auto it = std::find(d.begin(), d.end(), 1);
        sigma[i] = static_cast<std::size_t>(it - d.begin());
    }
    return sigma;
}

/// Complex iff mu is not self-dual; otherwise real or quaternionic by the parity of
/// <mu, 2 rho^vee>.
inline RepType classify_type(const RootSystem& rs, const FwVec& mu) {
    require_dominant(rs, mu);
    if (dual_fw(rs, mu) != mu) return RepType::complex;
    return level(rs, mu) % 2 == 0 ? RepType::real : RepType::quaternionic;
}

inline const char* kBoldG = "G";
inline const char* kBoldQ8G = "Q8xG";

/// "Q8xG" when any listed irreducible is of complex or quaternionic type, else "G".
inline std::string bold_g_label(const RootSystem& rs, const std::vector<FwVec>& reps) {
    for (const auto& mu : reps)
        if (classify_type(rs, mu) != RepType::real) return kBoldQ8G;
    return kBoldG;
}

/// The same label taken over every irreducible with highest weight in the lattice.
/// Complex types occur iff -w0 is not the identity. Quaternionic types need a
/// self-dual weight of odd level; in the root lattice every level is even, and in the
/// weight lattice the self-dual sublattice is spanned by the fixed omega_i and the sums
/// omega_i + omega_sigma(i), the latter always of even level.
inline std::string bold_g_for_lattice(const RootSystem& rs, LatticeChoice lat) {
    const auto sigma = duality_permutation(rs);
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] != i) return kBoldQ8G;
    if (lat == LatticeChoice::root_lattice) return kBoldG;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (rs.two_rho_check[i] % 2 != 0) return kBoldQ8G;
    return kBoldG;
}

enum class KMode { trivial, diagonal, torus };

inline std::string kmode_name(KMode k) {
    switch (k) {
        case KMode::trivial: return "trivial";
        case KMode::diagonal: return "diagonal";
        case KMode::torus: return "torus";
    }
    return "?";
}

inline KMode parse_kmode(std::string_view s) {
    if (s == "trivial") return KMode::trivial;
    if (s == "diagonal") return KMode::diagonal;
    if (s == "torus") return KMode::torus;
    throw InvalidArgument("unsupported K mode '" + std::string(s) + "'");
}

/// The K-representation U*. For K trivial it is a plain vector space of dimension
/// `trivial_dim`; for the diagonal K = G' it is a decomposition into irreducibles of G';
/// for the maximal torus it is a multiset of torus weights (fw coordinates of G).
struct UStar {
    KMode mode = KMode::trivial;
    std::int64_t trivial_dim = 1;
    Decomposition irreps;
    Character torus_weights;

    static UStar trivial(std::int64_t dim = 1) {
        UStar u;
        u.trivial_dim = dim;
        return u;
    }
    static UStar diagonal(Decomposition d) {
        UStar u;
        u.mode = KMode::diagonal;
        u.irreps = std::move(d);
        return u;
    }
    static UStar torus(Character weights) {
        UStar u;
        u.mode = KMode::torus;
        u.torus_weights = std::move(weights);
        return u;
    }

    bool empty() const {
        switch (mode) {
            case KMode::trivial: return trivial_dim == 0;
            case KMode::diagonal: return irreps.empty();
            case KMode::torus: return torus_weights.empty();
        }
        return true;
    }

    /// Complex dimension; `rs` is the root system of K for the diagonal mode.
    std::int64_t dim(const RootSystem& rs) const {
        switch (mode) {
            case KMode::trivial: return trivial_dim;
            case KMode::diagonal: return decomposition_dim(rs, irreps);
            case KMode::torus: return character_dim(torus_weights);
        }
        return 0;
    }
};

/// dim (V^mu (x) U*)^K with K trivial.
inline std::int64_t invariant_dim_trivial(const RootSystem& rs, const FwVec& mu, const UStar& u) {
    if (u.mode != KMode::trivial) throw InvalidArgument("U* is not a representation of the trivial group");
    return weyl_dim_i64(rs, mu) * u.trivial_dim;
}

/// dim (V^mu (x) V^nu (x) U*)^{G'} for G = G' x G' and K the diagonal copy of G'.
/// The trivial irreducible occurs in V^mu (x) V^nu (x) V^eta as often as dual(eta)
/// occurs in V^mu (x) V^nu.
inline std::int64_t invariant_dim_diagonal(const RootSystem& gprime, const FwVec& mu, const FwVec& nu,
                                           const UStar& u) {
    if (u.mode != KMode::diagonal) throw InvalidArgument("U* is not a representation of the diagonal subgroup");
    const auto prod = tensor_decompose(gprime, mu, nu);
    std::int64_t total = 0;
    for (const auto& [eta, k] : u.irreps) {
        require_dominant(gprime, eta);
        const auto it = prod.find(dual_fw(gprime, eta));
        if (it != prod.end()) total += k * it->second;
    }
    return total;
}

/// dim (V^mu (x) U*)^T for the maximal torus T: the number of zero-weight vectors.
inline std::int64_t invariant_dim_torus(const RootSystem& rs, const FwVec& mu, const UStar& u) {
    if (u.mode != KMode::torus) throw InvalidArgument("U* is not a representation of the maximal torus");
    const auto& chi = weight_multiplicities(rs, mu);
    std::int64_t total = 0;
    for (const auto& [w, k] : u.torus_weights) {
        require_rank(rs, w);
        FwVec neg = w;
        for (auto& x : neg) x = -x;
        const auto it = chi.find(neg);
        if (it != chi.end()) total += k * it->second;
    }
    return total;
}

/// Dispatch on u.mode. For the diagonal mode `mu` is a weight of G' x G' (the
/// concatenation of the two G' weights) and `gprime` is the root system of G'.
inline std::int64_t invariant_dim(const RootSystem& rs, const FwVec& mu, const UStar& u,
                                  const RootSystem* gprime = nullptr) {
    switch (u.mode) {
        case KMode::trivial: return invariant_dim_trivial(rs, mu, u);
        case KMode::torus: return invariant_dim_torus(rs, mu, u);
        case KMode::diagonal: {
            if (!gprime) throw InvalidArgument("diagonal K needs the root system of the factor");
            const std::size_t r = gprime->rank();
            if (mu.size() != 2 * r) throw InvalidArgument("diagonal K needs a weight of the product group");
            const FwVec a(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(r));
            const FwVec b(mu.begin() + static_cast<std::ptrdiff_t>(r), mu.end());
            return invariant_dim_diagonal(*gprime, a, b, u);
        }
    }
    throw InvalidArgument("unsupported K mode");
}

}  // namespace casimir
