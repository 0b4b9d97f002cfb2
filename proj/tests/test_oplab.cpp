#include <gtest/gtest.h>

#include <random>

#include "casimir/oplab.hpp"

using namespace casimir;

namespace {

const GroupSpec kSU2{1, 0};

Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

IrrepSpec spin(std::int64_t m) { return {{m}, {}}; }

MetricParam diag123() { return MetricParam::diag({q(1), q(2), q(3)}); }

Polynomial from_roots(const std::vector<Rational>& roots) {
    Polynomial p = Polynomial::constant(1);
    for (const auto& r : roots) p = p * Polynomial::linear_root(r);
    return p;
}

GMatrix scalar(const GaussianRational& s, std::size_t n) { return s * GMatrix::identity(n); }

// Random rational symmetric matrix with small entries.
MetricParam random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    QMatrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) k(i, j) = k(j, i) = q(num(rng), den(rng));
    return {k};
}

MetricParam random_positive_definite(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        auto k = random_symmetric(rng, n);
        for (std::size_t i = 0; i < n; ++i) k.kappa(i, i) = abs(k.kappa(i, i)) + 4;
        if (k.positive_definite()) return k;
    }
}

}  // namespace

TEST(IrrepMatrices, SpinHalfIsPauli) {
    const auto ms = irrep_matrices(kSU2, spin(1));
    ASSERT_EQ(ms.size(), 3u);
    const GaussianRational mi2(q(0), q(-1, 2));
    EXPECT_EQ(ms[0], (GMatrix{{0, mi2}, {mi2, 0}}));
    EXPECT_EQ(ms[1], (GMatrix{{0, GaussianRational(q(-1, 2))}, {GaussianRational(q(1, 2)), 0}}));
    EXPECT_EQ(ms[2], (GMatrix{{mi2, 0}, {0, mi2.conj()}}));
    for (const auto& m : ms) EXPECT_EQ(m * m, scalar(GaussianRational(q(-1, 4)), 2));
}

TEST(IrrepMatrices, SpinOneDiagonalWeights) {
    const auto ms = irrep_matrices(kSU2, spin(2));
    const GaussianRational i = GaussianRational::i();
    EXPECT_EQ(ms[2], (GMatrix{{-i, 0, 0}, {0, 0, 0}, {0, 0, i}}));
}

TEST(IrrepMatrices, TorusCharacter) {
    const auto ms = irrep_matrices({0, 1}, {{}, {3}});
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(ms[0], (GMatrix{{GaussianRational(q(0), q(3))}}));
}

TEST(IrrepMatrices, BracketRelations) {
    // [Y1, Y2] = Y3 and cyclic, for -i sigma/2; checked on several spins and on a product.
    for (const auto& [g, v] : std::vector<std::pair<GroupSpec, IrrepSpec>>{
             {kSU2, spin(1)}, {kSU2, spin(3)}, {kSU2, spin(4)}, {{2, 1}, {{1, 2}, {5}}}}) {
        const auto ms = irrep_matrices(g, v);
        for (int f = 0; f < g.su2_copies; ++f) {
            const auto& y1 = ms[static_cast<std::size_t>(3 * f)];
            const auto& y2 = ms[static_cast<std::size_t>(3 * f + 1)];
            const auto& y3 = ms[static_cast<std::size_t>(3 * f + 2)];
            EXPECT_EQ(y1 * y2 - y2 * y1, y3);
            EXPECT_EQ(y2 * y3 - y3 * y2, y1);
            EXPECT_EQ(y3 * y1 - y1 * y3, y2);
        }
        // Different factors commute.
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = 0; j < ms.size(); ++j)
                if (i / 3 != j / 3) {
                    EXPECT_EQ(ms[i] * ms[j], ms[j] * ms[i]);
                }
    }
}

TEST(Operator, SpinHalfDiagonalIsScalar) {
    const auto op = build_operator(kSU2, spin(1), MetricParam::diag({q(2), q(5), q(7)}));
    EXPECT_EQ(op.matrix, scalar(GaussianRational(q(14, 4)), 2));
    EXPECT_TRUE(op.hermitian());
}

TEST(Operator, SpinOneDiagonalSpectrum) {
    const Rational c1 = q(2), c2 = q(5), c3 = q(11);
    const auto p = char_poly(build_operator(kSU2, spin(2), MetricParam::diag({c1, c2, c3})));
    EXPECT_EQ(p, from_roots({c2 + c3, c1 + c3, c1 + c2}));
}

TEST(Operator, CasimirAtIdentity) {
    const auto op = build_operator(kSU2, spin(2), MetricParam::identity(3));
    EXPECT_EQ(op.matrix, scalar(GaussianRational(q(2)), 3));
    for (std::int64_t m = 0; m <= 12; ++m) {
        const auto d = build_operator(kSU2, spin(m), MetricParam::identity(3)).matrix;
        EXPECT_EQ(d, scalar(GaussianRational(q(m * (m + 2), 4)), static_cast<std::size_t>(m + 1))) << m;
    }
}

TEST(Operator, ShapeAndSymmetryErrors) {
    EXPECT_THROW(build_operator(kSU2, spin(1), MetricParam::identity(2)), InvalidArgument);
    QMatrix k = QMatrix::identity(3);
    k(0, 1) = 1;
    EXPECT_THROW(build_operator(kSU2, spin(1), {k}), InvalidArgument);
    EXPECT_THROW(build_operator(kSU2, {{1, 1}, {}}, MetricParam::identity(3)), InvalidArgument);
    EXPECT_THROW(build_operator({0, 0}, {{}, {}}, MetricParam::identity(0)), InvalidArgument);
}

TEST(Operator, SelfAdjointForWeightedProduct) {
    std::mt19937_64 rng(7);
    for (const auto& [g, v] : std::vector<std::pair<GroupSpec, IrrepSpec>>{
             {kSU2, spin(1)}, {kSU2, spin(2)}, {kSU2, spin(4)}, {{2, 0}, {{1, 2}, {}}}, {{1, 1}, {{3}, {2}}}}) {
        for (int t = 0; t < 5; ++t) {
            const auto op = build_operator(g, v, random_symmetric(rng, g.N()));
            EXPECT_TRUE(op.self_adjoint()) << v.label();
            EXPECT_TRUE(all_roots_real(char_poly(op))) << v.label();
        }
    }
    // In the spin-1/2 (Pauli) model the weights are all 1, so D is literally Hermitian.
    for (int t = 0; t < 5; ++t) EXPECT_TRUE(build_operator(kSU2, spin(1), random_symmetric(rng, 3)).hermitian());
}

TEST(CharPoly, Examples) {
    EXPECT_EQ(char_poly(build_operator(kSU2, spin(1), diag123())), from_roots({q(3, 2), q(3, 2)}));
    EXPECT_EQ(char_poly(build_operator(kSU2, spin(2), diag123())), from_roots({q(3), q(4), q(5)}));
    const auto torus = char_poly(build_operator({0, 1}, {{}, {3}}, MetricParam::diag({q(2, 5)})));
    EXPECT_EQ(torus, from_roots({q(18, 5)}));
}

TEST(CharPoly, MatchesBareissDeterminantAtSamplePoints) {
    // Oracle: det(t I - D) at rational t via fraction-free elimination over Q(i).
    std::mt19937_64 rng(11);
    const auto op = build_operator({1, 1}, {{3}, {1}}, random_symmetric(rng, 4));
    const auto p = char_poly(op);
    for (long t : {-3L, 0L, 2L, 7L}) {
        GMatrix m = scalar(GaussianRational(q(t)), op.dim()) - op.matrix;
        const auto det = determinant_bareiss(m);
        EXPECT_EQ(det, GaussianRational(p.evaluate(q(t))));
    }
}

TEST(CharPoly, RejectsNonRealCoefficients) {
    const GMatrix m{{GaussianRational::i()}};
    EXPECT_THROW(char_poly(m), ConsistencyError);
}

TEST(CharPoly, InvariantUnderConjugation) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-4, 4);
    const auto op = build_operator(kSU2, spin(3), random_symmetric(rng, 3));
    for (int t = 0; t < 3; ++t) {
        QMatrix s(4, 4);
        do {
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) s(i, j) = q(num(rng));
        } while (determinant_bareiss(s) == 0);
        const GMatrix gs = to_gaussian(s);
        const GMatrix gi = to_gaussian(inverse(s));
        EXPECT_EQ(char_poly(gs * op.matrix * gi), char_poly(op));
    }
}

TEST(CharPoly, ScalingCovariance) {
    std::mt19937_64 rng(5);
    const auto k = random_symmetric(rng, 3);
    const auto p = char_poly(build_operator(kSU2, spin(3), k));
    for (long s : {2L, 3L}) {
        const auto ps = char_poly(build_operator(kSU2, spin(3), {q(s) * k.kappa}));
        // p_s(t) = s^d p(t / s): coefficient of t^j scales by s^(d - j).
        const int d = p.degree();
        for (int j = 0; j <= d; ++j) {
            Rational f = 1;
            for (int e = 0; e < d - j; ++e) f *= s;
            EXPECT_EQ(ps[static_cast<std::size_t>(j)], f * p[static_cast<std::size_t>(j)]);
        }
    }
}

TEST(Resultants, Examples) {
    const Polynomial a = from_roots({q(1), q(-1)});
    const Polynomial b = from_roots({q(2), q(-2)});
    EXPECT_EQ(resultant(a, b), 9);
    EXPECT_EQ(sylvester_resultant(a, b), 9);
    EXPECT_EQ(resultant(a, a), 0);
    const auto v = abc_values(kSU2, spin(1), spin(2), diag123());
    ASSERT_TRUE(v.a.has_value());
    EXPECT_EQ(*v.a, q(11025, 64));
    const auto p1 = char_poly(build_operator(kSU2, spin(1), diag123()));
    const auto p2 = char_poly(build_operator(kSU2, spin(2), diag123()));
    EXPECT_EQ(sylvester_resultant(p1, p2), q(11025, 64));
}

TEST(Resultants, TypeSelectsBOrC) {
    const auto v = abc_values(kSU2, spin(2), std::nullopt, diag123());
    ASSERT_TRUE(v.b1.has_value());
    EXPECT_FALSE(v.c1.has_value());
    EXPECT_EQ(abs(*v.b1), 4);
    const auto p = char_poly(build_operator(kSU2, spin(2), diag123()));
    EXPECT_EQ(*v.b1, sylvester_resultant(p, p.derivative()));
    const auto h = abc_values(kSU2, spin(1), std::nullopt, diag123());
    ASSERT_TRUE(h.c1.has_value());
    EXPECT_FALSE(h.b1.has_value());
    EXPECT_EQ(*h.c1, 4);
    EXPECT_EQ(irrep_type(spin(1)), RepType::quaternionic);
    EXPECT_EQ(irrep_type({{1, 1}, {}}), RepType::real);
    EXPECT_EQ(irrep_type({{}, {1}}), RepType::complex);
}

TEST(Certify, SU2UpToSpinTwo) {
    const auto cert = certify(kSU2, 4);
    ASSERT_TRUE(cert.certified);
    ASSERT_TRUE(cert.witness.has_value());
    EXPECT_EQ(cert.witness->kappa, MetricParam::diag({q(1), q(8, 7), q(9, 7)}).kappa);
    EXPECT_EQ(cert.table.size(), 5u + 10u);
    for (const auto& e : cert.table) EXPECT_NE(e.value, 0);
}

TEST(Certify, TwoTorusNeedsOffDiagonalWitness) {
    WitnessStrategy s;
    const auto cert = certify({0, 2}, 3, s);
    ASSERT_TRUE(cert.certified);
    EXPECT_GT(cert.attempts, s.diagonal_attempts);
    EXPECT_NE(cert.witness->kappa(0, 1), 0);
    // Oracle: the values z^T kappa z of non-dual characters are pairwise distinct.
    const QMatrix& k = cert.witness->kappa;
    const auto reps = irreps_up_to({0, 2}, 3);
    EXPECT_EQ(reps.size(), 49u);
    auto form = [&](const IrrepSpec& v) -> Rational {
        const Rational a(static_cast<long>(v.torus_char[0])), b(static_cast<long>(v.torus_char[1]));
        return a * a * k(0, 0) + 2 * a * b * k(0, 1) + b * b * k(1, 1);
    };
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            if (reps[j] == reps[i].dual()) {
                EXPECT_EQ(form(reps[i]), form(reps[j]));
                continue;
            }
            EXPECT_NE(form(reps[i]), form(reps[j])) << reps[i].label() << reps[j].label();
        }
}

TEST(Certify, DiagonalMetricCannotSeparateTorusCharacters) {
    WitnessStrategy s;
    s.budget = s.diagonal_attempts;
    const auto cert = certify({0, 2}, 1, s);
    EXPECT_FALSE(cert.certified);
    EXPECT_FALSE(cert.witness.has_value());
    EXPECT_FALSE(cert.violations.empty());
    for (const auto& e : cert.violations) EXPECT_EQ(e.value, 0);
}

TEST(Certify, TrivialListSucceeds) {
    const auto cert = certify({0, 1}, 0);
    EXPECT_TRUE(cert.certified);
    EXPECT_EQ(cert.table.size(), 1u);
}

TEST(Numeric, SpinOneDiag123) {
    const auto spec = numeric_spectrum(kSU2, {spin(2)}, diag123());
    ASSERT_EQ(spec.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(spec[k].value, 3.0 + static_cast<double>(k), 1e-9);
        EXPECT_EQ(spec[k].multiplicity.at(spin(2)), 1);
        EXPECT_TRUE(spec[k].exact_agreement);
    }
}

TEST(Numeric, SpinHalfSingleCluster) {
    const auto spec = numeric_spectrum(kSU2, {spin(1)}, MetricParam::diag({q(1), q(5, 3), q(9, 4)}));
    ASSERT_EQ(spec.size(), 1u);
    EXPECT_EQ(spec[0].multiplicity.at(spin(1)), 2);
}

TEST(Numeric, IdentityGivesCasimir) {
    std::vector<IrrepSpec> reps;
    for (std::int64_t m = 0; m <= 6; ++m) reps.push_back(spin(m));
    const auto spec = numeric_spectrum(kSU2, reps, MetricParam::identity(3), 1e-9, 4);
    ASSERT_EQ(spec.size(), 7u);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const auto m = static_cast<double>(k);
        EXPECT_NEAR(spec[k].value, m * (m + 2) / 4, 1e-9);
        const auto v = spin(static_cast<std::int64_t>(k));
        EXPECT_EQ(spec[k].multiplicity.at(v), v.dim());
        EXPECT_EQ(spec[k].assembled.at(v), 4 * v.dim() * v.dim());
    }
}

TEST(Numeric, RejectsIndefiniteMetric) {
    EXPECT_THROW(numeric_spectrum(kSU2, {spin(1)}, MetricParam::diag({q(1), q(-1), q(1)})), InvalidArgument);
}

TEST(Numeric, ExactFloatAgreementOnRandomMetrics) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        const auto k = random_positive_definite(rng, 4);
        for (const auto& v : std::vector<IrrepSpec>{{{2}, {1}}, {{3}, {0}}, {{4}, {-2}}}) {
            const auto rs = numeric_rep_spectrum({1, 1}, v, k, 1e-9);
            std::int64_t total = 0;
            for (const auto& c : rs.clusters) {
                EXPECT_TRUE(c.exact_agreement);
                total += c.multiplicity;
            }
            EXPECT_EQ(total, v.dim());
        }
    }
}

TEST(Numeric, QuaternionicRootsHaveEvenMultiplicity) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        const auto k = random_symmetric(rng, 3);
        for (std::int64_t m : {1, 3, 5}) {
            const auto s = exact_spectrum(kSU2, spin(m), k);
            for (const auto& [f, mult] : s.factors) EXPECT_EQ(mult % 2, 0) << m;
        }
    }
}
