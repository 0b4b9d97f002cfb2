#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "casimir/hidden.hpp"
#include "casimir/oplab.hpp"
#include "casimir/spectra.hpp"

namespace casimir::io {

using nlohmann::json;

inline const char* kSchema = "casimir-lab/1";

inline json envelope(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

inline json rat(const Rational& q) { return to_string(q); }

inline json rat_list(const QVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat(x));
    return a;
}

inline json fw(const FwVec& v) { return json(v); }

inline json poly(const Polynomial& p) { return rat_list(p.coefficients()); }

inline json matrix(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(rat(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json opt_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(kUncomputedCap); }

// ---------------------------------------------------------------------------------
// Parsing helpers.

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::int64_t parse_int(std::string_view s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not an integer: '" + std::string(s) + "'");
    }
    if (used != s.size()) throw InvalidArgument("not an integer: '" + std::string(s) + "'");
    return v;
}

/// "1,0,2" -> {1, 0, 2}. The empty string is the empty vector.
inline FwVec parse_fw(std::string_view s) {
    FwVec out;
    if (s.empty()) return out;
    for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
    return out;
}

/// Metric from "diag:1,2,3", an inline JSON object {"n": N, "entries": [[i, j, "p/q"], ...]},
/// or the path of a file holding that object. Missing entries are zero; a given entry
/// fills its mirror, and contradicting mirrors are rejected.
inline MetricParam parse_kappa(const std::string& text) {
    if (text.rfind("diag:", 0) == 0) {
        QVector d;
        for (const auto& part : split(std::string_view(text).substr(5), ',')) d.push_back(parse_rational(part));
        return MetricParam::diag(d);
    }
    std::string body = text;
    if (text.empty() || text.front() != '{') {
        std::ifstream in(text);
        if (!in) throw InvalidArgument("cannot read metric file '" + text + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("metric is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("entries") || !j["n"].is_number_integer() ||
        !j["entries"].is_array())
        throw InvalidArgument("metric JSON needs an integer \"n\" and an \"entries\" array");
    const auto n = j["n"].get<std::int64_t>();
    if (n <= 0) throw InvalidArgument("metric size must be positive");
    const auto un = static_cast<std::size_t>(n);
    QMatrix k(un, un);
    std::vector<std::vector<bool>> set(un, std::vector<bool>(un, false));
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw InvalidArgument("metric entries are [i, j, \"p/q\"]");
        const auto i = e[0].get<std::int64_t>(), c = e[1].get<std::int64_t>();
        if (i < 0 || c < 0 || i >= n || c >= n) throw InvalidArgument("metric entry index out of range");
        const Rational v = e[2].is_string() ? parse_rational(e[2].get<std::string>())
                                            : Rational(static_cast<long>(e[2].get<std::int64_t>()));
        const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(c);
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            if (set[x][y] && k(x, y) != v) throw InvalidArgument("metric entries are not symmetric");
            k(x, y) = v;
            set[x][y] = true;
        }
    }
    return {k};
}

/// U* in one of the forms "trivial:N", "diagonal:W*K;W*K" (G' dominant weights) or
/// "torus:W*K;W*K" (torus weights); W is comma separated and "*K" may be omitted.
inline UStar parse_ustar(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "trivial") return UStar::trivial(rest.empty() ? 1 : parse_int(rest));
    if (kind != "diagonal" && kind != "torus") throw InvalidArgument("unknown U* kind '" + kind + "'");
    std::map<FwVec, std::int64_t> terms;
    if (!rest.empty())
        for (const auto& item : split(rest, ';')) {
            const auto star = item.find('*');
            const auto w = parse_fw(std::string_view(item).substr(0, star));
            const auto k = star == std::string::npos ? 1 : parse_int(std::string_view(item).substr(star + 1));
            if (k < 0) throw InvalidArgument("U* multiplicities must be nonnegative");
            if (k > 0) terms[w] += k;
        }
    return kind == "diagonal" ? UStar::diagonal(terms) : UStar::torus(terms);
}

// ---------------------------------------------------------------------------------
// Serializers.

inline json ustar(const UStar& u) {
    json j{{"mode", kmode_name(u.mode)}};
    auto terms = [](const std::map<FwVec, std::int64_t>& m) {
        json a = json::array();
        for (const auto& [w, k] : m) a.push_back(json{{"weight", w}, {"multiplicity", k}});
        return a;
    };
    switch (u.mode) {
        case KMode::trivial: j["dim"] = u.trivial_dim; break;
        case KMode::diagonal: j["irreducibles"] = terms(u.irreps); break;
        case KMode::torus: j["torus_weights"] = terms(u.torus_weights); break;
    }
    return j;
}

inline json casimir_class(const RootSystem& rs, const CasimirClass& c) {
    json members = json::array();
    for (const auto& w : c.dominant_members) {
        members.push_back(json{{"mu", w.fw},
                               {"dual_mu", dual_fw(rs, w.fw)},
                               {"dim", weyl_dim(rs, w.fw).get_str()},
                               {"rep_type", rep_type_name(classify_type(rs, w.fw))}});
    }
    return json{{"a_sq", rat(c.a_sq)},
                {"lambda", rat(c.lambda)},
                {"dominant_members", members},
                {"sphere_size", c.sphere_members.size()}};
}

/// Two dominant members that are neither equal nor dual to each other.
inline bool has_coincidence(const RootSystem& rs, const CasimirClass& c) {
    for (std::size_t i = 0; i < c.dominant_members.size(); ++i)
        for (std::size_t j = i + 1; j < c.dominant_members.size(); ++j)
            if (dual_fw(rs, c.dominant_members[i].fw) != c.dominant_members[j].fw) return true;
    return false;
}

inline json root_system(const RootSystem& rs) {
    return json{{"name", rs.name()}, {"rank", rs.rank()}, {"metric_scale", rat(rs.metric_scale)}};
}

inline json hidden(const RootSystem& rs, const HiddenSummary& h) {
    json orbit_list = json::array();
    for (const auto& o : h.orbit_list) {
        json pts = json::array();
        for (auto idx : o) pts.push_back(h.config.points[idx]);
        orbit_list.push_back(pts);
    }
    return json{{"root_system", root_system(rs)},
                {"a_sq", rat(h.a_sq)},
                {"points", h.points},
                {"span", h.span},
                {"order", h.order},
                {"orbits", h.orbit_list.size()},
                {"orbit_points_shifted", orbit_list},
                {"transitive", h.transitive},
                {"weyl_included", h.weyl_included},
                {"weyl_order", h.weyl_order}};
}

inline json hidden_info(const HiddenInfo& h) {
    if (!h.computed) return json{{"status", kUncomputedCap}, {"reason", h.reason}};
    return json{{"status", "computed"},
                {"order", h.order},
                {"orbits", h.orbits},
                {"transitive", h.transitive},
                {"weyl_included", h.weyl_included},
                {"members_in_one_orbit", h.members_in_one_orbit}};
}

inline json context(const SpectralContext& c) {
    return json{{"root_system", c.root_system},  {"factor", c.factor},
                {"lattice", lattice_name(c.lattice)}, {"k_mode", kmode_name(c.mode)},
                {"ustar", ustar(c.ustar)},        {"ustar_dim", c.ustar_dim},
                {"metric_scale", rat(c.metric_scale)}, {"convention", c.convention}};
}

inline json labels(const SpectralLabels& l) {
    return json{{"bold_g", l.bold_g}, {"symmetry_group_description", l.symmetry_group_description}};
}

inline json report(const SpectralReport& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        json members = json::array();
        for (const auto& m : c.members)
            members.push_back(json{{"mu", m.mu},
                                   {"dual_mu", m.dual_mu},
                                   {"dim", m.dim},
                                   {"rep_type", rep_type_name(m.type)},
                                   {"isotypic_dim", m.isotypic_dim},
                                   {"orthogonal_factor", "U(" + std::to_string(m.isotypic_dim) + ")"},
                                   {"hidden_orbit_id", opt_index(m.hidden_orbit_id)}});
        classes.push_back(json{{"a_sq", rat(c.a_sq)},
                               {"lambda", rat(c.lambda)},
                               {"members", members},
                               {"eigenspace_dim", c.eigenspace_dim},
                               {"structure", c.structure},
                               {"hidden", hidden_info(c.hidden)}});
    }
    return json{{"context", context(r.context)},
                {"classes", classes},
                {"labels", labels(r.labels)},
                {"total_dim", total_dim(r)}};
}

inline json real_report(const RealSpectralReport& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        json members = json::array();
        for (const auto& m : c.members)
            members.push_back(json{{"duality_class", m.duality_class},
                                   {"rep_type", rep_type_name(m.type)},
                                   {"isotypic_dim", m.isotypic_dim},
                                   {"real_dim", m.real_dim},
                                   {"real_form", m.real_form},
                                   {"orthogonal_factor", m.orthogonal_factor},
                                   {"hidden_orbit_id", opt_index(m.hidden_orbit_id)}});
        classes.push_back(json{{"a_sq", rat(c.a_sq)},
                               {"lambda", rat(c.lambda)},
                               {"members", members},
                               {"eigenspace_real_dim", c.eigenspace_real_dim},
                               {"structure", c.structure},
                               {"hidden", hidden_info(c.hidden)}});
    }
    return json{{"context", context(r.context)},
                {"classes", classes},
                {"labels", labels(r.labels)},
                {"total_real_dim", total_dim(r)}};
}

inline json estimate(const GenericEstimate& e) {
    json terms = json::array();
    for (const auto& t : e.terms)
        terms.push_back(json{{"mu", t.mu}, {"dual_mu", t.dual_mu}, {"dim", t.dim}, {"multiplicity", t.multiplicity}});
    return json{{"mu_lambda", e.mu_lambda},
                {"a_sq", rat(e.a_sq)},
                {"lambda", rat(e.lambda)},
                {"terms", terms},
                {"distinct_term_dim", e.distinct_term_dim},
                {"total_dim", e.total_dim}};
}

inline json hodge(const HodgeCheck& h) {
    json rows = json::array();
    for (const auto& r : h.rows) {
        json mem = json::array();
        for (bool b : r.member) mem.push_back(b);
        rows.push_back(json{{"mu", json::array({r.m})},
                            {"a_sq", rat(r.a_sq)},
                            {"lambda", rat(r.lambda)},
                            {"harmonic", r.harmonic},
                            {"invariant_dims", r.invariant_dims},
                            {"member", mem}});
    }
    json disc = json::array();
    for (const auto& d : h.discrepancies)
        disc.push_back(json{{"mu", json::array({d.m})}, {"p", d.p}, {"harmonic", d.harmonic}, {"note", d.note}});
    json ext = json::array();
    for (const auto& d : h.exterior) {
        json terms = json::array();
        for (const auto& [w, k] : d) terms.push_back(json{{"weight", w}, {"multiplicity", k}});
        ext.push_back(terms);
    }
    return json{{"cap", rat(h.cap)},
                {"group", "SU(2)xSU(2)/diag SU(2)"},
                {"exterior_powers_of_adjoint", ext},
                {"rows", rows},
                {"discrepancies", disc}};
}

inline json irrep(const IrrepSpec& v) { return json{{"spins", v.spins}, {"torus_char", v.torus_char}}; }

inline json certificate(const Certificate& c) {
    auto entries = [](const std::vector<CertificateEntry>& es) {
        json a = json::array();
        for (const auto& e : es) {
            json j{{"kind", e.kind}, {"rep", irrep(e.v1)}, {"value", rat(e.value)}};
            if (e.v2) j["rep2"] = irrep(*e.v2);
            a.push_back(std::move(j));
        }
        return a;
    };
    json j{{"status", c.certified ? "certified" : "inconclusive"},
           {"group", c.group.name()},
           {"rep_cap", c.rep_cap},
           {"attempts", c.attempts}};
    if (c.witness) j["witness_kappa"] = matrix(c.witness->kappa);
    if (c.certified) {
        j["table"] = entries(c.table);
        j["all_nonzero"] = true;
    } else {
        j["violations"] = entries(c.violations);
    }
    return j;
}

inline json exact_spectrum(const ExactSpectrum& s, std::int64_t ustar_dim) {
    json factors = json::array();
    for (const auto& [f, k] : s.factors)
        factors.push_back(json{{"factor", poly(f)},
                               {"degree", f.degree()},
                               {"multiplicity", k},
                               {"assembled_dim_per_root", ustar_dim * k * s.rep.dim()}});
    return json{{"rep", irrep(s.rep)},
                {"dim", s.rep.dim()},
                {"rep_type", rep_type_name(irrep_type(s.rep))},
                {"char_poly", poly(s.char_poly)},
                {"squarefree_factors", factors},
                {"all_roots_real", s.all_real}};
}

inline json numeric_spectrum(const std::vector<SpectrumEntry>& entries) {
    json a = json::array();
    for (const auto& e : entries) {
        json reps = json::array();
        for (const auto& [v, m] : e.multiplicity)
            reps.push_back(json{{"rep", irrep(v)}, {"multiplicity", m}, {"assembled_dim", e.assembled.at(v)}});
        a.push_back(json{{"value", e.value},
                         {"reps", reps},
                         {"total_dim", e.total_dim()},
                         {"exact_agreement", e.exact_agreement}});
    }
    return a;
}

// ---------------------------------------------------------------------------------
// Plain-text rendering of any report: one "path  value" line per leaf.

inline void render_table(const json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_table(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
        if (flat) {
            out << path << "  " << j.dump() << "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) render_table(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << "  " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace casimir::io
