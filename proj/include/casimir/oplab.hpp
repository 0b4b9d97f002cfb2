#pragma once

// Explicit operators D^V(kappa) = -sum kappa_ij rho(Y_i) rho(Y_j) on irreducibles of
// SU(2)^c x T^n, their characteristic polynomials and resultant certificates, plus a
// floating-point spectrum sampler.
//
// Basis of the Lie algebra: for each SU(2) factor the three matrices Y_k = -i sigma_k / 2
// (orthonormal for -2 trace), then one generator per torus coordinate. On the spin m/2
// irreducible, realized on binary forms of degree m with monomial basis
// b_k = e1^{m-k} e2^k, a 2x2 matrix A acts as a derivation:
//   b_k -> ((m-k) A11 + k A22) b_k + (m-k) A21 b_{k+1} + k A12 b_{k-1}.
// All entries are Gaussian rationals. The basis is not unitary; the invariant Hermitian
// product is diagonal with weights 1 / binom(m, k), and D is self-adjoint for it.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/gaussian.hpp"
#include "casimir/polynomial.hpp"
#include "casimir/rational.hpp"
#include "casimir/reps.hpp"

namespace casimir {

struct GroupSpec {
    int su2_copies = 0;
    int torus_rank = 0;

    std::size_t N() const { return static_cast<std::size_t>(3 * su2_copies + torus_rank); }
    void validate() const {
        if (su2_copies < 0 || torus_rank < 0 || su2_copies + torus_rank < 1)
            throw InvalidArgument("group needs at least one SU(2) or circle factor");
    }
    std::string name() const {
        std::string s;
        for (int k = 0; k < su2_copies; ++k) s += (k ? "xSU(2)" : "SU(2)");
        if (torus_rank > 0) s += (s.empty() ? "" : "x") + std::string("T^") + std::to_string(torus_rank);
        return s;
    }
};

struct IrrepSpec {
    std::vector<std::int64_t> spins;       // m_i, spin m_i / 2
    std::vector<std::int64_t> torus_char;  // z

    std::int64_t dim() const {
        std::int64_t d = 1;
        for (auto m : spins) d *= m + 1;
        return d;
    }
    IrrepSpec dual() const {
        IrrepSpec d = *this;
        for (auto& z : d.torus_char) z = -z;
        return d;
    }
    void validate(const GroupSpec& g) const {
        if (spins.size() != static_cast<std::size_t>(g.su2_copies) ||
            torus_char.size() != static_cast<std::size_t>(g.torus_rank))
            throw InvalidArgument("irreducible does not match the group shape");
        for (auto m : spins)
            if (m < 0) throw InvalidArgument("spin labels must be nonnegative");
    }
    std::string label() const {
        std::string s = "(";
        for (std::size_t i = 0; i < spins.size(); ++i) s += (i ? "," : "") + std::to_string(spins[i]);
        s += ";";
        for (std::size_t i = 0; i < torus_char.size(); ++i) s += (i ? "," : "") + std::to_string(torus_char[i]);
        return s + ")";
    }
    friend bool operator==(const IrrepSpec& a, const IrrepSpec& b) {
        return a.spins == b.spins && a.torus_char == b.torus_char;
    }
    friend bool operator<(const IrrepSpec& a, const IrrepSpec& b) {
        return std::tie(a.spins, a.torus_char) < std::tie(b.spins, b.torus_char);
    }
};

/// Complex when the torus character is nontrivial; otherwise the outer tensor product of
/// SU(2) irreducibles, which is quaternionic iff the total spin label is odd.
inline RepType irrep_type(const IrrepSpec& v) {
    for (auto z : v.torus_char)
        if (z != 0) return RepType::complex;
    std::int64_t s = 0;
    for (auto m : v.spins) s += m;
    return s % 2 == 0 ? RepType::real : RepType::quaternionic;
}

struct MetricParam {
    QMatrix kappa;

    static MetricParam diag(const QVector& d) {
        MetricParam k;
        k.kappa = QMatrix(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) k.kappa(i, i) = d[i];
        return k;
    }
    static MetricParam identity(std::size_t n) { return {QMatrix::identity(n)}; }

    std::size_t n() const { return kappa.rows(); }
    bool symmetric() const { return is_symmetric(kappa); }
    bool positive_definite() const { return is_positive_definite(kappa); }
};

/// rho(Y_1), rho(Y_2), rho(Y_3) on binary forms of degree m.
inline std::vector<GMatrix> su2_matrices(std::int64_t m) {
    const auto half = Rational(1, 2);
    const GaussianRational z(0);
    const GaussianRational mi_half(Rational(0), -half);  // -i/2
    const GaussianRational i_half(Rational(0), half);
    // 2x2 matrices of -i sigma_k / 2, row-major (A11, A12, A21, A22).
    const std::vector<std::array<GaussianRational, 4>> ys = {
        {z, mi_half, mi_half, z},
        {z, GaussianRational(-half), GaussianRational(half), z},
        {mi_half, z, z, i_half},
    };
    const auto n = static_cast<std::size_t>(m + 1);
    std::vector<GMatrix> out;
    for (const auto& a : ys) {
        GMatrix r(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto kk = static_cast<long>(k);
            const auto mk = static_cast<long>(m) - kk;
            r(k, k) += GaussianRational(Rational(mk)) * a[0] + GaussianRational(Rational(kk)) * a[3];
            if (k + 1 < n) r(k + 1, k) += GaussianRational(Rational(mk)) * a[2];
            if (k > 0) r(k - 1, k) += GaussianRational(Rational(kk)) * a[1];
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// The N representation matrices of the basis Y_1..Y_N on V.
inline std::vector<GMatrix> irrep_matrices(const GroupSpec& g, const IrrepSpec& v) {
    g.validate();
    v.validate(g);
    const auto dim = static_cast<std::size_t>(v.dim());
    std::vector<GMatrix> out;
    for (int f = 0; f < g.su2_copies; ++f) {
        for (const auto& y : su2_matrices(v.spins[static_cast<std::size_t>(f)])) {
            GMatrix acc = GMatrix::identity(1);
            for (int h = 0; h < g.su2_copies; ++h) {
                const auto size = static_cast<std::size_t>(v.spins[static_cast<std::size_t>(h)] + 1);
                acc = kronecker(acc, h == f ? y : GMatrix::identity(size));
            }
            out.push_back(std::move(acc));
        }
    }
    for (int t = 0; t < g.torus_rank; ++t) {
        const GaussianRational s(Rational(0), Rational(static_cast<long>(v.torus_char[static_cast<std::size_t>(t)])));
        out.push_back(s * GMatrix::identity(dim));
    }
    return out;
}

/// Weights of the invariant Hermitian product in the monomial basis (Kronecker products of
/// 1 / binom(m, k)).
inline QVector hermitian_weights(const IrrepSpec& v) {
    QVector h{Rational(1)};
    for (auto m : v.spins) {
        QVector f;
        Integer b = 1;
        for (std::int64_t k = 0; k <= m; ++k) {
            f.push_back(Rational(1) / Rational(b));
            b = b * (m - k) / (k + 1);
        }
        QVector next;
        for (const auto& x : h)
            for (const auto& y : f) next.push_back(x * y);
        h = std::move(next);
    }
    return h;
}

struct ExactOperator {
    GMatrix matrix;
    IrrepSpec rep;
    MetricParam kappa;
    QVector weights;  // invariant Hermitian product, diagonal

    std::size_t dim() const { return matrix.rows(); }

    /// Self-adjointness for the weighted product: h_i D_ij = conj(D_ji) h_j.
    bool self_adjoint() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (GaussianRational(weights[i]) * matrix(i, j) != matrix(j, i).conj() * GaussianRational(weights[j]))
                    return false;
        return true;
    }
    bool hermitian() const { return conjugate_transpose(matrix) == matrix; }
};

inline ExactOperator build_operator(const GroupSpec& g, const IrrepSpec& v, const MetricParam& k) {
    const auto ms = irrep_matrices(g, v);
    if (k.kappa.rows() != g.N() || k.kappa.cols() != g.N())
        throw InvalidArgument("metric has shape " + std::to_string(k.kappa.rows()) + "x" +
                              std::to_string(k.kappa.cols()) + ", expected " + std::to_string(g.N()));
    if (!k.symmetric()) throw InvalidArgument("metric matrix is not symmetric");
    const auto dim = static_cast<std::size_t>(v.dim());
    GMatrix d(dim, dim);
    for (std::size_t i = 0; i < g.N(); ++i)
        for (std::size_t j = 0; j < g.N(); ++j) {
            if (k.kappa(i, j) == 0) continue;
            d = d - GaussianRational(k.kappa(i, j)) * (ms[i] * ms[j]);
        }
    return {std::move(d), v, k, hermitian_weights(v)};
}

/// det(t I - A) by the Faddeev-LeVerrier recursion over Q(i). The coefficients of an
/// operator with real spectrum must be real; anything else is reported as a bug.
inline Polynomial char_poly(const GMatrix& a) {
    if (!a.square()) throw InvalidArgument("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<GaussianRational> c(n + 1);
    c[n] = GaussianRational(1);
    GMatrix m(n, n);
    const GMatrix id = GMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        const GaussianRational tr = trace(a * m);
        c[n - k] = -tr / GaussianRational(Rational(static_cast<long>(k)));
    }
    QVector coeffs;
    for (const auto& x : c) {
        if (!x.is_real()) throw ConsistencyError("characteristic polynomial has a non-real coefficient " + x.str());
        coeffs.push_back(x.re);
    }
    return Polynomial(std::move(coeffs));
}

inline Polynomial char_poly(const ExactOperator& op) { return char_poly(op.matrix); }

/// Resultant values for one or two irreducibles at one metric. `b` is filled for real
/// and complex types, `c` for quaternionic ones, as required by the simplicity criterion.
struct AbcValues {
    std::optional<Rational> a;
    std::optional<Rational> b1, b2, c1, c2;
};

inline Rational b_value(const Polynomial& p) { return resultant(p, p.derivative()); }

inline Rational c_value(const Polynomial& p) {
    const Polynomial d2 = p.derivative(2);
    if (d2.is_zero()) return 1;  // degree <= 1: a simple eigenvalue, nothing to separate
    return resultant(p, d2);
}

inline AbcValues abc_values(const GroupSpec& g, const IrrepSpec& v1, const std::optional<IrrepSpec>& v2,
                            const MetricParam& k) {
    AbcValues out;
    const Polynomial p1 = char_poly(build_operator(g, v1, k));
    auto fill = [](const IrrepSpec& v, const Polynomial& p, std::optional<Rational>& b, std::optional<Rational>& c) {
        if (irrep_type(v) == RepType::quaternionic) c = c_value(p);
        else b = b_value(p);
    };
    fill(v1, p1, out.b1, out.c1);
    if (v2) {
        const Polynomial p2 = char_poly(build_operator(g, *v2, k));
        out.a = resultant(p1, p2);
        fill(*v2, p2, out.b2, out.c2);
    }
    return out;
}

/// All irreducibles with spins m_i <= cap and |z_t| <= cap, canonically ordered.
inline std::vector<IrrepSpec> irreps_up_to(const GroupSpec& g, std::int64_t cap) {
    g.validate();
    if (cap < 0) throw InvalidArgument("representation cap must be nonnegative");
    std::vector<IrrepSpec> out;
    IrrepSpec cur;
    cur.spins.assign(static_cast<std::size_t>(g.su2_copies), 0);
    cur.torus_char.assign(static_cast<std::size_t>(g.torus_rank), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        const std::size_t total = cur.spins.size() + cur.torus_char.size();
        if (pos == total) {
            out.push_back(cur);
            return;
        }
        if (pos < cur.spins.size()) {
            for (std::int64_t m = 0; m <= cap; ++m) {
                cur.spins[pos] = m;
                rec(pos + 1);
            }
        } else {
            for (std::int64_t z = -cap; z <= cap; ++z) {
                cur.torus_char[pos - cur.spins.size()] = z;
                rec(pos + 1);
            }
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

struct CertificateEntry {
    std::string kind;  // "a", "b" or "c"
    IrrepSpec v1;
    std::optional<IrrepSpec> v2;
    Rational value;
};

struct Certificate {
    bool certified = false;
    GroupSpec group;
    std::int64_t rep_cap = 0;
    std::size_t attempts = 0;
    std::optional<MetricParam> witness;
    std::vector<CertificateEntry> table;       // the full nonzero table on success
    std::vector<CertificateEntry> violations;  // vanishing values at the last attempt on failure
};

struct WitnessStrategy {
    std::size_t budget = 12;
    std::size_t diagonal_attempts = 4;
    std::uint64_t seed = 20240607;
};

namespace detail {

inline std::vector<long> primes_from_seven(std::size_t count) {
    std::vector<long> out;
    for (long p = 7; out.size() < count; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
        if (prime) out.push_back(p);
    }
    return out;
}

}  // namespace detail

/// Deterministic witness sequence: diag(1, 1 + 1/p, 1 + 2/p, ...) over primes p >= 7,
/// then the same diagonals with seeded small off-diagonal perturbations, each kept only
/// when exactly positive definite.
inline std::vector<MetricParam> witness_sequence(std::size_t n, const WitnessStrategy& s) {
    std::vector<MetricParam> out;
    const auto primes = detail::primes_from_seven(std::max<std::size_t>(s.budget, 1));
    auto base = [&](long p) {
        QVector d;
        for (std::size_t i = 0; i < n; ++i) {
            Rational x(static_cast<long>(i), p);
            x.canonicalize();
            d.push_back(1 + x);
        }
        return MetricParam::diag(d);
    };
    const std::size_t diag_count = std::min(s.diagonal_attempts, s.budget);
    for (std::size_t t = 0; t < diag_count; ++t) out.push_back(base(primes[t]));
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<long> num(-3, 3);
    std::size_t t = diag_count;
    while (out.size() < s.budget) {
        const long p = primes[t % primes.size()];
        ++t;
        MetricParam k = base(p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Rational e(num(rng), p * static_cast<long>(n + 1));
                e.canonicalize();
                k.kappa(i, j) = k.kappa(j, i) = e;
            }
        if (k.positive_definite()) out.push_back(std::move(k));
    }
    return out;
}

/// Exact table of every required value at one metric.
inline std::vector<CertificateEntry> certificate_table(const GroupSpec& g, const std::vector<IrrepSpec>& reps,
                                                       const MetricParam& k) {
    std::vector<Polynomial> polys;
    polys.reserve(reps.size());
    for (const auto& v : reps) polys.push_back(char_poly(build_operator(g, v, k)));
    std::vector<CertificateEntry> table;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (irrep_type(reps[i]) == RepType::quaternionic) table.push_back({"c", reps[i], std::nullopt, c_value(polys[i])});
        else table.push_back({"b", reps[i], std::nullopt, b_value(polys[i])});
    }
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            if (reps[j] == reps[i].dual()) continue;
            table.push_back({"a", reps[i], reps[j], resultant(polys[i], polys[j])});
        }
    return table;
}

/// Searches the witness sequence for a metric at which every a/b/c value is exactly
/// nonzero. Never reports success otherwise.
inline Certificate certify(const GroupSpec& g, std::int64_t rep_cap, const WitnessStrategy& s = {}) {
    Certificate cert;
    cert.group = g;
    cert.rep_cap = rep_cap;
    const auto reps = irreps_up_to(g, rep_cap);
    for (const auto& k : witness_sequence(g.N(), s)) {
        ++cert.attempts;
        auto table = certificate_table(g, reps, k);
        std::vector<CertificateEntry> zeros;
        for (const auto& e : table)
            if (e.value == 0) zeros.push_back(e);
        if (zeros.empty()) {
            cert.certified = true;
            cert.witness = k;
            cert.table = std::move(table);
            cert.violations.clear();
            return cert;
        }
        cert.violations = std::move(zeros);
    }
    return cert;
}

// ---------------------------------------------------------------------------------
// Floating-point sampler.

struct NumericCluster {
    double value = 0;
    std::int64_t multiplicity = 0;
    bool exact_agreement = false;  // the exact polynomial has exactly this many roots nearby
};

struct RepSpectrum {
    IrrepSpec rep;
    std::vector<NumericCluster> clusters;
};

/// Eigenvalues of one operator in double precision, from the Hermitian matrix
/// S D S^{-1} with S = diag(sqrt(weights)).
inline std::vector<double> numeric_eigenvalues(const ExactOperator& op) {
    const auto n = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXcd h(n, n);
    std::vector<double> s(op.dim());
    for (std::size_t i = 0; i < op.dim(); ++i) s[i] = std::sqrt(op.weights[i].get_d());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& x = op.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            h(i, j) = std::complex<double>(x.re.get_d(), x.im.get_d()) * s[static_cast<std::size_t>(i)] /
                      s[static_cast<std::size_t>(j)];
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConsistencyError("Hermitian eigensolver did not converge");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Groups sorted values whose consecutive gaps are within tol * max(1, |x|).
inline std::vector<std::pair<double, std::int64_t>> cluster_values(const std::vector<double>& sorted, double tol) {
    std::vector<std::pair<double, std::int64_t>> out;
    double sum = 0;
    std::int64_t count = 0;
    double last = 0;
    for (double x : sorted) {
        if (count > 0 && x - last > tol * std::max(1.0, std::abs(x))) {
            out.emplace_back(sum / static_cast<double>(count), count);
            sum = 0;
            count = 0;
        }
        sum += x;
        ++count;
        last = x;
    }
    if (count > 0) out.emplace_back(sum / static_cast<double>(count), count);
    return out;
}

/// Exact/float agreement: the exact polynomial has `mult` roots (with multiplicity) in
/// the window of half-width tol * max(1, |x|) around x.
inline bool agrees_with_exact(const Polynomial& p, double x, std::int64_t mult, double tol) {
    const double w = tol * std::max(1.0, std::abs(x));
    const Rational lo(x - w), hi(x + w);
    return static_cast<std::int64_t>(roots_in_interval(p, lo, hi)) == mult;
}

inline RepSpectrum numeric_rep_spectrum(const GroupSpec& g, const IrrepSpec& v, const MetricParam& k, double tol) {
    const auto op = build_operator(g, v, k);
    const auto p = char_poly(op);
    RepSpectrum rs;
    rs.rep = v;
    for (const auto& [x, m] : cluster_values(numeric_eigenvalues(op), tol))
        rs.clusters.push_back({x, m, agrees_with_exact(p, x, m, tol)});
    return rs;
}

/// One eigenvalue of the assembled operator: which irreducibles contribute and how often.
struct SpectrumEntry {
    double value = 0;
    std::map<IrrepSpec, std::int64_t> multiplicity;  // clustered multiplicity per rep
    std::map<IrrepSpec, std::int64_t> assembled;     // dim U* x multiplicity x dim V*
    bool exact_agreement = true;
    std::int64_t total_dim() const {
        std::int64_t t = 0;
        for (const auto& [v, d] : assembled) t += d;
        return t;
    }
};

/// Numeric spectrum over a list of irreducibles, requiring a positive definite metric.
/// Eigenvalues from different irreducibles are merged with the same tolerance.
inline std::vector<SpectrumEntry> numeric_spectrum(const GroupSpec& g, const std::vector<IrrepSpec>& reps,
                                                   const MetricParam& k, double tol = 1e-9,
                                                   std::int64_t ustar_dim = 1) {
    if (!k.positive_definite()) throw InvalidArgument("metric is not positive definite");
    if (!(tol > 0)) throw InvalidArgument("tolerance must be positive");
    struct Item {
        double x;
        IrrepSpec v;
        std::int64_t m;
        bool ok;
    };
    std::vector<Item> items;
    for (const auto& v : reps)
        for (const auto& c : numeric_rep_spectrum(g, v, k, tol).clusters) items.push_back({c.value, v, c.multiplicity, c.exact_agreement});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.x < b.x; });
    std::vector<SpectrumEntry> out;
    double last = 0;
    for (const auto& it : items) {
        if (out.empty() || it.x - last > tol * std::max(1.0, std::abs(it.x))) out.push_back({});
        auto& e = out.back();
        e.value = it.x;
        e.multiplicity[it.v] += it.m;
        e.assembled[it.v] += ustar_dim * it.m * it.v.dim();
        e.exact_agreement = e.exact_agreement && it.ok;
        last = it.x;
    }
    return out;
}

/// Exact spectrum of one irreducible: distinct roots are not computed, only the
/// square-free factorization with multiplicities.
struct ExactSpectrum {
    IrrepSpec rep;
    Polynomial char_poly;
    std::vector<std::pair<Polynomial, int>> factors;
    bool all_real = false;
};

inline ExactSpectrum exact_spectrum(const GroupSpec& g, const IrrepSpec& v, const MetricParam& k) {
    ExactSpectrum s;
    s.rep = v;
    s.char_poly = char_poly(build_operator(g, v, k));
    s.factors = squarefree_decomposition(s.char_poly);
    s.all_real = all_roots_real(s.char_poly);
    return s;
}

/// Multiplicity of the exact root nearest to x, from the square-free factors: the factor
/// having a root within the window contributes its multiplicity.
inline std::int64_t exact_multiplicity_near(const ExactSpectrum& s, double x, double tol) {
    const double w = tol * std::max(1.0, std::abs(x));
    const Rational lo(x - w), hi(x + w);
    std::int64_t total = 0;
    for (const auto& [f, k] : s.factors) total += static_cast<std::int64_t>(SturmSequence(f).count(lo, hi)) * k;
    return total;
}

}  // namespace casimir
