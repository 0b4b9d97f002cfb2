#pragma once

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "casimir/json_io.hpp"

namespace casimir::cli {

using io::json;

enum ExitCode : int { kOk = 0, kUsage = 2, kCap = 3, kConsistency = 4 };

/// Defaults for every cap; all must be positive.
struct CapConfig {
    std::int64_t weyl_order = kDefaultWeylOrderCap;
    std::size_t hidden_points = kDefaultHiddenPointCap;
    std::size_t hidden_rank = kDefaultHiddenRankCap;
};

namespace detail {

struct TypeArgs {
    std::string family;
    int rank = 0;
    std::string lattice = "weight";
    std::string scale = "1";

    void add(CLI::App* sub, bool with_lattice = true) {
        sub->add_option("--type", family, "Dynkin family A..G")->required();
        sub->add_option("--rank", rank, "rank of the simple factor")->required();
        if (with_lattice)
            sub->add_option("--lattice", lattice, "weight or root")->check(CLI::IsMember({"weight", "root"}));
        sub->add_option("--scale", scale, "metric scale p/q");
    }
    RootSystem build() const {
        const Rational s = parse_rational(scale);
        if (s <= 0) throw InvalidArgument("metric scale must be positive");
        return build_root_system({parse_family(family), rank}, s);
    }
    LatticeChoice lat() const { return parse_lattice(lattice); }
};

inline Rational positive_cap(const std::string& text, const char* what) {
    const Rational c = parse_rational(text);
    if (c <= 0) throw InvalidArgument(std::string(what) + " must be positive");
    return c;
}

inline json error_json(const std::string& kind, const std::string& message) {
    json j = io::envelope("error");
    j["error"] = kind;
    j["message"] = message;
    return j;
}

}  // namespace detail

/// Runs one command line (without the program name). Reports go to `out`, diagnostics
/// and usage text to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Casimir spectra, hidden symmetries and operator certificates", "casimir_lab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    CapConfig caps;
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--weyl-order-cap", caps.weyl_order, "largest Weyl group enumerated")->check(CLI::PositiveNumber);
    app.add_option("--hidden-point-cap", caps.hidden_points, "largest sphere for the stabilizer search")
        ->check(CLI::PositiveNumber);
    app.add_option("--hidden-rank-cap", caps.hidden_rank, "largest span for the stabilizer search")
        ->check(CLI::PositiveNumber);

    detail::TypeArgs classes_t, coinc_t, hidden_t, rtype_t, est_t, report_t;
    std::string classes_cap, coinc_cap, hidden_a2, weight_rt, weight_est, ustar_est = "trivial:1", report_cap,
        report_ustar = "trivial:1", hodge_cap = "50", kappa;
    int su2_cert = 0, torus_cert = 0, su2_spec = 0, torus_spec = 0;
    std::int64_t rep_cap_cert = 4, rep_cap_spec = 4, ustar_dim_spec = 1;
    std::size_t budget = WitnessStrategy{}.budget, diag_attempts = WitnessStrategy{}.diagonal_attempts;
    std::uint64_t seed = WitnessStrategy{}.seed;
    bool numeric = false, real = false;
    double tol = 1e-9;

    auto* c_classes = app.add_subcommand("classes", "Casimir classes up to a squared radius");
    classes_t.add(c_classes);
    c_classes->add_option("--cap", classes_cap, "a^2 bound p/q")->required();

    auto* c_coinc = app.add_subcommand("coincidences", "classes with two non-dual dominant members");
    coinc_t.add(c_coinc);
    c_coinc->add_option("--cap", coinc_cap, "a^2 bound p/q")->required();

    auto* c_hidden = app.add_subcommand("hidden", "stabilizer of one sphere and its orbits");
    hidden_t.add(c_hidden);
    c_hidden->add_option("--a2", hidden_a2, "squared radius p/q")->required();

    auto* c_rtype = app.add_subcommand("reptype", "real, complex or quaternionic type");
    rtype_t.add(c_rtype);
    c_rtype->add_option("--weight", weight_rt, "fw coordinates c1,c2,...")->required();

    auto* c_cert = app.add_subcommand("certify", "search a metric with every a/b/c value nonzero");
    c_cert->add_option("--su2", su2_cert, "number of SU(2) factors")->check(CLI::NonNegativeNumber);
    c_cert->add_option("--torus", torus_cert, "torus rank")->check(CLI::NonNegativeNumber);
    c_cert->add_option("--rep-cap", rep_cap_cert, "bound on spin labels and |z|")->check(CLI::NonNegativeNumber);
    c_cert->add_option("--budget", budget, "number of candidate metrics")->check(CLI::PositiveNumber);
    c_cert->add_option("--diagonal-attempts", diag_attempts, "diagonal candidates tried first");
    c_cert->add_option("--seed", seed, "seed for the off-diagonal perturbations");

    auto* c_spec = app.add_subcommand("spectrum", "spectrum of the left-invariant operator per irreducible");
    c_spec->add_option("--su2", su2_spec, "number of SU(2) factors")->check(CLI::NonNegativeNumber);
    c_spec->add_option("--torus", torus_spec, "torus rank")->check(CLI::NonNegativeNumber);
    c_spec->add_option("--kappa", kappa, "diag:c1,c2,..., inline JSON or a file")->required();
    c_spec->add_option("--rep-cap", rep_cap_spec, "bound on spin labels and |z|")->check(CLI::NonNegativeNumber);
    c_spec->add_option("--ustar-dim", ustar_dim_spec, "dim U* for the isotypic assembly")->check(CLI::PositiveNumber);
    c_spec->add_flag("--numeric", numeric, "floating-point eigenvalues");
    c_spec->add_option("--tol", tol, "relative clustering tolerance")->check(CLI::PositiveNumber);

    auto* c_est = app.add_subcommand("estimate", "generic-estimate bound at one weight");
    est_t.add(c_est);
    c_est->add_option("--weight", weight_est, "fw coordinates of mu_lambda")->required();
    c_est->add_option("--ustar", ustar_est, "trivial:N, diagonal:W*K;... or torus:W*K;...");

    auto* c_report = app.add_subcommand("report", "normal-metric spectral report");
    report_t.add(c_report);
    c_report->add_option("--cap", report_cap, "a^2 bound p/q")->required();
    c_report->add_option("--ustar", report_ustar, "trivial:N, diagonal:W*K;... or torus:W*K;...");
    c_report->add_flag("--real", real, "fold into duality classes");

    auto* c_hodge = app.add_subcommand("hodge-rank1", "rank-1 Hodge membership table");
    c_hodge->add_option("--cap", hodge_cap, "a^2 bound p/q for the pair (mu, mu)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        json j;
        if (c_classes->parsed() || c_coinc->parsed()) {
            const bool coincidences = c_coinc->parsed();
            const auto& t = coincidences ? coinc_t : classes_t;
            const auto rs = t.build();
            const auto cap = detail::positive_cap(coincidences ? coinc_cap : classes_cap, "cap");
            j = io::envelope(coincidences ? "coincidences" : "classes");
            j["root_system"] = io::root_system(rs);
            j["lattice"] = t.lattice;
            j["cap"] = io::rat(cap);
            json list = json::array();
            for (const auto& c : classes_up_to(rs, t.lat(), cap))
                if (!coincidences || io::has_coincidence(rs, c)) list.push_back(io::casimir_class(rs, c));
            j["classes"] = list;
        } else if (c_hidden->parsed()) {
            const auto rs = hidden_t.build();
            const auto a2 = detail::positive_cap(hidden_a2, "a2");
            const auto cls = sphere_set(rs, hidden_t.lat(), a2);
            if (cls.sphere_members.empty()) throw InvalidArgument("no lattice point on the sphere a^2 = " + to_string(a2));
            j = io::envelope("hidden");
            j["lattice"] = hidden_t.lattice;
            j["result"] = io::hidden(rs, hidden_summary(rs, cls, caps.hidden_points, caps.hidden_rank, caps.weyl_order));
        } else if (c_rtype->parsed()) {
            const auto rs = rtype_t.build();
            const auto w = make_weight(rs, io::parse_fw(weight_rt), rtype_t.lat());
            require_dominant(rs, w.fw);
            j = io::envelope("reptype");
            j["root_system"] = io::root_system(rs);
            j["mu"] = w.fw;
            j["dual_mu"] = dual_fw(rs, w.fw);
            j["dim"] = weyl_dim(rs, w.fw).get_str();
            j["rep_type"] = rep_type_name(classify_type(rs, w.fw));
            j["bold_g"] = bold_g_label(rs, {w.fw});
            j["bold_g_lattice"] = json{{"lattice", rtype_t.lattice}, {"label", bold_g_for_lattice(rs, rtype_t.lat())}};
        } else if (c_cert->parsed()) {
            const GroupSpec g{su2_cert, torus_cert};
            g.validate();
            WitnessStrategy s;
            s.budget = budget;
            s.diagonal_attempts = diag_attempts;
            s.seed = seed;
            j = io::envelope("certify");
            j["seed"] = seed;
            j["budget"] = budget;
            j["result"] = io::certificate(certify(g, rep_cap_cert, s));
        } else if (c_spec->parsed()) {
            const GroupSpec g{su2_spec, torus_spec};
            g.validate();
            const auto k = io::parse_kappa(kappa);
            if (k.n() != g.N()) throw InvalidArgument("metric size does not match the group");
            const auto reps = irreps_up_to(g, rep_cap_spec);
            j = io::envelope("spectrum");
            j["group"] = g.name();
            j["kappa"] = io::matrix(k.kappa);
            j["rep_cap"] = rep_cap_spec;
            j["ustar_dim"] = ustar_dim_spec;
            if (numeric) {
                j["numeric"] = true;
                j["tol"] = tol;
                j["eigenvalues"] = io::numeric_spectrum(numeric_spectrum(g, reps, k, tol, ustar_dim_spec));
            } else {
                json list = json::array();
                for (const auto& v : reps) list.push_back(io::exact_spectrum(exact_spectrum(g, v, k), ustar_dim_spec));
                j["numeric"] = false;
                j["reps"] = list;
            }
        } else if (c_est->parsed()) {
            const auto rs = est_t.build();
            const auto u = io::parse_ustar(ustar_est);
            j = io::envelope("estimate");
            j["root_system"] = io::root_system(group_root_system(rs, u.mode));
            j["ustar"] = io::ustar(u);
            j["result"] = io::estimate(generic_estimate(rs, est_t.lat(), u.mode, u, io::parse_fw(weight_est)));
        } else if (c_report->parsed()) {
            const auto rs = report_t.build();
            const auto u = io::parse_ustar(report_ustar);
            const auto cap = detail::positive_cap(report_cap, "cap");
            ReportCaps rc{caps.hidden_points, caps.hidden_rank, caps.weyl_order};
            const auto rep = normal_spectrum_report(rs, report_t.lat(), u.mode, u, cap, rc);
            j = io::envelope(real ? "report-real" : "report");
            j["cap"] = io::rat(cap);
            j["result"] = real ? io::real_report(fold_real(rs, u.mode, rep)) : io::report(rep);
        } else if (c_hodge->parsed()) {
            j = io::envelope("hodge-rank1");
            j["result"] = io::hodge(hodge_rank1_check(detail::positive_cap(hodge_cap, "cap")));
        }
        if (format == "table")
            io::render_table(j, "", out);
        else
            out << j.dump(2) << "\n";
        return kOk;
    } catch (const CapExceeded& e) {
        json j = detail::error_json("cap_exceeded", e.what());
        j["reason"] = e.reason();
        err << j.dump() << "\n";
        return kCap;
    } catch (const InvalidArgument& e) {
        err << detail::error_json("invalid_argument", e.what()).dump() << "\n";
        return kUsage;
    } catch (const ConsistencyError& e) {
        err << detail::error_json("consistency", e.what()).dump() << "\n";
        return kConsistency;
    } catch (const std::exception& e) {
        err << detail::error_json("internal", e.what()).dump() << "\n";
        return kConsistency;
    }
}

}  // namespace casimir::cli
