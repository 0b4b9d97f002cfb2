#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/hidden.hpp"
#include "casimir/reps.hpp"
#include "casimir/weights.hpp"

namespace casimir {

inline const char* kUncomputedCap = "uncomputed (cap)";
inline const char* kIrreducibleFlag = "(O_C x G)-irreducible";
inline const char* kFiniteSumFlag = "finite sum";

/// Caps shared by the report builders.
struct ReportCaps {
    std::size_t hidden_points = kDefaultHiddenPointCap;
    std::size_t hidden_rank = kDefaultHiddenRankCap;
    std::int64_t weyl_order = kDefaultWeylOrderCap;
};

/// The group G whose spectrum is reported. In the diagonal mode `factor` is G' and
/// G = G' x G' with K the diagonal copy; otherwise G is `factor` itself.
inline RootSystem group_root_system(const RootSystem& factor, KMode mode) {
    return mode == KMode::diagonal ? product_root_system(factor, factor) : factor;
}

inline std::int64_t isotypic_dim(const RootSystem& factor, const RootSystem& group, const FwVec& mu, const UStar& u) {
    return invariant_dim(group, mu, u, u.mode == KMode::diagonal ? &factor : nullptr);
}

struct SpectralContext {
    std::string root_system;   // G
    std::string factor;        // G' in the diagonal mode, else equal to root_system
    LatticeChoice lattice = LatticeChoice::weight_lattice;
    KMode mode = KMode::trivial;
    UStar ustar;
    std::int64_t ustar_dim = 0;
    Rational metric_scale = 1;
    std::string convention;
};

struct SpectralMember {
    FwVec mu;
    FwVec dual_mu;
    std::int64_t dim = 0;
    RepType type = RepType::real;
    std::int64_t isotypic_dim = 0;
    std::optional<std::size_t> hidden_orbit_id;  // empty when uncomputed
};

/// Hidden-symmetry data attached to a class; `computed` is false when a cap refused it.
struct HiddenInfo {
    bool computed = false;
    std::string reason;  // cap name when not computed
    std::size_t order = 0;
    std::size_t orbits = 0;
    bool transitive = false;
    bool weyl_included = false;
    bool members_in_one_orbit = false;
};

struct SpectralClass {
    Rational a_sq;
    Rational lambda;
    std::vector<SpectralMember> members;
    std::int64_t eigenspace_dim = 0;  // sum of isotypic_dim * dim V^{mu*}
    std::string structure;
    HiddenInfo hidden;
};

struct SpectralLabels {
    std::string bold_g;
    std::string symmetry_group_description;
};

struct SpectralReport {
    SpectralContext context;
    std::vector<SpectralClass> classes;
    SpectralLabels labels;
};

/// One duality class [mu] = {mu, mu*} of the real report.
struct RealMember {
    std::vector<FwVec> duality_class;  // members of S(a;U*) in [mu], sorted
    RepType type = RepType::real;
    std::int64_t isotypic_dim = 0;     // complex dimension of (V^mu (x) U*)^K, equal to the real one of its real form
    std::int64_t real_dim = 0;         // real dimension contributed to the eigenspace
    std::string real_form;             // V_R bookkeeping
    std::string orthogonal_factor;
    std::optional<std::size_t> hidden_orbit_id;
};

struct RealSpectralClass {
    Rational a_sq;
    Rational lambda;
    std::vector<RealMember> members;
    std::int64_t eigenspace_real_dim = 0;
    std::string structure;
    HiddenInfo hidden;
};

struct RealSpectralReport {
    SpectralContext context;
    std::vector<RealSpectralClass> classes;
    SpectralLabels labels;
};

namespace detail {

// Runs body(0..n-1) on a small pool; the first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, F body) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < n;) {
            try {
                body(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline std::string convention_text(KMode mode) {
    switch (mode) {
        case KMode::trivial: return "K trivial; U* is a plain vector space";
        case KMode::diagonal:
            return "G = G' x G' given by G'; K is the diagonal G'; weights are (mu', mu'') in fw coordinates; "
                   "U* is a decomposition into irreducibles of G'";
        case KMode::torus: return "K is the maximal torus of G; U* is a multiset of torus weights in fw coordinates";
    }
    return {};
}

inline HiddenInfo hidden_info(const RootSystem& group, const CasimirClass& cls, const std::vector<FwVec>& members,
                              const ReportCaps& caps, std::vector<std::optional<std::size_t>>& ids) {
    HiddenInfo info;
    ids.assign(members.size(), std::nullopt);
    try {
        const auto h = hidden_summary(group, cls, caps.hidden_points, caps.hidden_rank, caps.weyl_order);
        info.computed = true;
        info.order = h.order;
        info.orbits = h.orbit_list.size();
        info.transitive = h.transitive;
        info.weyl_included = h.weyl_included;
        for (std::size_t k = 0; k < members.size(); ++k) ids[k] = h.orbit_of(members[k]);
        info.members_in_one_orbit =
            std::all_of(ids.begin(), ids.end(), [&](const auto& id) { return id && id == ids.front(); });
    } catch (const CapExceeded& e) {
        info.reason = e.reason();
    }
    return info;
}

inline SpectralClass build_class(const RootSystem& factor, const RootSystem& group, const CasimirClass& cls,
                                 const UStar& u, const ReportCaps& caps) {
    SpectralClass out;
    out.a_sq = cls.a_sq;
    out.lambda = cls.lambda;
    for (const auto& w : cls.dominant_members) {
        const auto iso = isotypic_dim(factor, group, w.fw, u);
        if (iso <= 0) continue;
        SpectralMember m;
        m.mu = w.fw;
        m.dual_mu = dual_fw(group, w.fw);
        m.dim = weyl_dim_i64(group, w.fw);
        m.type = classify_type(group, w.fw);
        m.isotypic_dim = iso;
        out.eigenspace_dim += iso * weyl_dim_i64(group, m.dual_mu);
        out.members.push_back(std::move(m));
    }
    if (out.members.empty()) return out;
    std::vector<FwVec> mus;
    for (const auto& m : out.members) mus.push_back(m.mu);
    std::vector<std::optional<std::size_t>> ids;
    out.hidden = hidden_info(group, cls, mus, caps, ids);
    for (std::size_t k = 0; k < ids.size(); ++k) out.members[k].hidden_orbit_id = ids[k];
    out.structure = out.members.size() == 1 ? kIrreducibleFlag : kFiniteSumFlag;
    return out;
}

inline std::string symmetry_description(const std::string& bold_g, bool real) {
    const std::string o = real ? "O_R" : "O_C";
    return o + " x " + bold_g + ", " + o + " = product over members of the orthogonal groups of (V^mu (x) U*)^K";
}

}  // namespace detail

/// Spectrum of the normal metric on G/K twisted by U*, class by class up to the cap.
/// `factor` is G (or G' in the diagonal mode).
inline SpectralReport normal_spectrum_report(const RootSystem& factor, LatticeChoice lat, KMode mode, const UStar& u,
                                             const Rational& a_sq_cap, const ReportCaps& caps = {}) {
    if (u.mode != mode) throw InvalidArgument("U* is given for K mode " + kmode_name(u.mode) + ", not " + kmode_name(mode));
    const RootSystem group = group_root_system(factor, mode);
    SpectralReport rep;
    rep.context.root_system = group.name();
    rep.context.factor = factor.name();
    rep.context.lattice = lat;
    rep.context.mode = mode;
    rep.context.ustar = u;
    rep.context.ustar_dim = u.dim(factor);
    rep.context.metric_scale = group.metric_scale;
    rep.context.convention = detail::convention_text(mode);
    rep.labels.bold_g = kBoldG;
    rep.labels.symmetry_group_description = detail::symmetry_description(kBoldG, false);
    if (u.empty()) return rep;

    const auto classes = classes_up_to(group, lat, a_sq_cap);
    std::vector<SpectralClass> built(classes.size());
    detail::parallel_for(classes.size(),
                         [&](std::size_t k) { built[k] = detail::build_class(factor, group, classes[k], u, caps); });
    std::vector<FwVec> all;
    for (auto& c : built) {
        if (c.members.empty()) continue;
        for (const auto& m : c.members) all.push_back(m.mu);
        rep.classes.push_back(std::move(c));
    }
    rep.labels.bold_g = bold_g_label(group, all);
    rep.labels.symmetry_group_description = detail::symmetry_description(rep.labels.bold_g, false);
    return rep;
}

/// Fold a complex report into duality classes [mu] = {mu, mu*}.
inline RealSpectralReport fold_real(const RootSystem& factor, KMode mode, const SpectralReport& complex_report) {
    const RootSystem group = group_root_system(factor, mode);
    RealSpectralReport out;
    out.context = complex_report.context;
    out.labels = complex_report.labels;
    out.labels.symmetry_group_description = detail::symmetry_description(out.labels.bold_g, true);
    for (const auto& c : complex_report.classes) {
        RealSpectralClass rc;
        rc.a_sq = c.a_sq;
        rc.lambda = c.lambda;
        rc.hidden = c.hidden;
        std::vector<bool> used(c.members.size(), false);
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            const auto& m = c.members[i];
            RealMember rm;
            rm.type = m.type;
            rm.isotypic_dim = m.isotypic_dim;
            rm.hidden_orbit_id = m.hidden_orbit_id;
            rm.duality_class.push_back(m.mu);
            rm.real_dim = m.isotypic_dim * weyl_dim_i64(group, m.dual_mu);
            for (std::size_t j = i + 1; j < c.members.size(); ++j)
                if (!used[j] && c.members[j].mu == m.dual_mu) {
                    used[j] = true;
                    rm.duality_class.push_back(c.members[j].mu);
                    rm.real_dim += c.members[j].isotypic_dim * weyl_dim_i64(group, c.members[j].dual_mu);
                }
            std::sort(rm.duality_class.begin(), rm.duality_class.end());
            switch (m.type) {
                case RepType::real:
                    rm.real_form = "V_R real form, C (x) V_R = V";
                    rm.orthogonal_factor = "O(" + std::to_string(m.isotypic_dim) + ")";
                    break;
                case RepType::complex:
                    rm.real_form = "V_R = V viewed as real, C (x) V_R = V + V*";
                    rm.orthogonal_factor = "U(" + std::to_string(m.isotypic_dim) + ")";
                    break;
                case RepType::quaternionic:
                    rm.real_form = "V_R = V viewed as real, C (x) V_R = H (x) V = V + V";
                    rm.orthogonal_factor = m.isotypic_dim % 2 == 0 ? "Sp(" + std::to_string(m.isotypic_dim / 2) + ")"
                                                                   : "U(" + std::to_string(m.isotypic_dim) + ")";
                    break;
            }
            rc.eigenspace_real_dim += rm.real_dim;
            rc.members.push_back(std::move(rm));
        }
        rc.structure = rc.members.size() == 1 ? "(O_R x G)-irreducible" : kFiniteSumFlag;
        out.classes.push_back(std::move(rc));
    }
    return out;
}

inline RealSpectralReport real_spectrum_report(const RootSystem& factor, LatticeChoice lat, KMode mode, const UStar& u,
                                               const Rational& a_sq_cap, const ReportCaps& caps = {}) {
    return fold_real(factor, mode, normal_spectrum_report(factor, lat, mode, u, a_sq_cap, caps));
}

inline std::int64_t total_dim(const SpectralReport& r) {
    std::int64_t t = 0;
    for (const auto& c : r.classes) t += c.eigenspace_dim;
    return t;
}

inline std::int64_t total_dim(const RealSpectralReport& r) {
    std::int64_t t = 0;
    for (const auto& c : r.classes) t += c.eigenspace_real_dim;
    return t;
}

// ---------------------------------------------------------------------------------
// Generic estimate.

struct EstimateTerm {
    FwVec mu;
    FwVec dual_mu;
    std::int64_t dim = 0;           // dim V^{mu*}
    std::int64_t multiplicity = 0;  // dim (V^mu (x) U*)^K
};

struct GenericEstimate {
    FwVec mu_lambda;
    Rational a_sq;
    Rational lambda;
    std::vector<EstimateTerm> terms;
    std::int64_t distinct_term_dim = 0;  // sum of dim V^{mu*} over the terms
    std::int64_t total_dim = 0;          // sum of multiplicity * dim V^{mu*}

    const EstimateTerm* find(const FwVec& mu) const {
        for (const auto& t : terms)
            if (t.mu == mu) return &t;
        return nullptr;
    }
};

/// Upper bound for an eigenspace of a generic metric at the class of mu_lambda.
inline GenericEstimate generic_estimate(const RootSystem& factor, LatticeChoice lat, KMode mode, const UStar& u,
                                        const FwVec& mu_lambda) {
    if (u.mode != mode) throw InvalidArgument("U* is given for K mode " + kmode_name(u.mode) + ", not " + kmode_name(mode));
    const RootSystem group = group_root_system(factor, mode);
    const Weight w = make_weight(group, mu_lambda, lat);
    GenericEstimate e;
    e.mu_lambda = mu_lambda;
    e.a_sq = a_squared(group, mu_lambda);
    e.lambda = casimir_eigenvalue(group, w);
    const auto cls = sphere_set(group, lat, e.a_sq);
    for (const auto& m : cls.dominant_members) {
        const auto iso = isotypic_dim(factor, group, m.fw, u);
        if (iso <= 0) continue;
        EstimateTerm t;
        t.mu = m.fw;
        t.dual_mu = dual_fw(group, m.fw);
        t.dim = weyl_dim_i64(group, t.dual_mu);
        t.multiplicity = iso;
        e.distinct_term_dim += t.dim;
        e.total_dim += t.dim * t.multiplicity;
        e.terms.push_back(std::move(t));
    }
    return e;
}

// ---------------------------------------------------------------------------------
// Rank-1 Hodge check: G' = SU(2), G = G' x G', K the diagonal copy.

struct HodgeRow {
    std::int64_t m = 0;  // mu = m * omega
    Rational a_sq;       // of the pair (mu, mu) in G
    Rational lambda;
    std::vector<std::int64_t> invariant_dims;  // p = 0..3
    std::vector<bool> member;
    bool harmonic = false;  // lambda == 0
};

struct HodgeDiscrepancy {
    std::int64_t m = 0;
    std::int64_t p = 0;
    bool harmonic = false;
    std::string note;
};

struct HodgeCheck {
    Rational cap;
    std::vector<Decomposition> exterior;  // wedge^p of the adjoint, p = 0..3
    std::vector<HodgeRow> rows;
    std::vector<HodgeDiscrepancy> discrepancies;
};

inline HodgeCheck hodge_rank1_check(const Rational& a_sq_cap) {
    const RootSystem a1 = build_root_system({Family::A, 1});
    const RootSystem g = product_root_system(a1, a1);
    HodgeCheck out;
    out.cap = a_sq_cap;
    out.exterior = exterior_powers(a1, {2}, 3);
    for (std::int64_t m = 0;; ++m) {
        const FwVec pair{m, m};
        const Rational a2 = a_squared(g, pair);
        if (a2 > a_sq_cap) break;
        HodgeRow row;
        row.m = m;
        row.a_sq = a2;
        row.lambda = casimir_eigenvalue(g, make_weight(g, pair));
        row.harmonic = row.lambda == 0;
        for (std::int64_t p = 0; p <= 3; ++p) {
            const auto d = invariant_dim_diagonal(a1, {m}, {m}, UStar::diagonal(out.exterior[static_cast<std::size_t>(p)]));
            row.invariant_dims.push_back(d);
            row.member.push_back(d > 0);
            if (d == 0)
                out.discrepancies.push_back(
                    {m, p, row.harmonic,
                     row.harmonic ? "lambda = 0: invariant dimension 0, outside the lambda > 0 isomorphisms"
                                  : "invariant dimension 0 at lambda > 0"});
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace casimir
