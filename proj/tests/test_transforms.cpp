#include <numbers>

#include "support.hpp"

namespace kbiframe {
namespace {

using test::basis;
using test::diag;
using test::diff;
using test::pair_of;

VectorPairSystem diagonal_pair() {
    return pair_of({basis(3, 0), basis(3, 1, 0.5), basis(3, 2)}, {basis(3, 0), basis(3, 1), basis(3, 2, 1.0 / 3)});
}

VectorPairSystem parseval(std::size_t n) {
    std::vector<Vector> e;
    for (std::size_t j = 0; j < n; ++j) e.push_back(basis(n, j));
    return {e, e};
}

struct InnerInverseExample {
    Complex ea = std::polar(1.0, 0.7);
    ComplexMatrix k{{ea, std::conj(ea)}, {0, 0}};
    ComplexMatrix l{{std::conj(ea), 0}, {0, 0}};
    VectorPairSystem pair = pair_of({basis(2, 0, ea), basis(2, 1)}, {basis(2, 0, ea), basis(2, 1, 2.0)});
};

TEST(KlTransform, InnerInverseExample) {
    const InnerInverseExample ex;
    EXPECT_LT(diff(ex.k * ex.l, diag({1.0, 0.0})), 1e-15);
    const auto r = kl_transform(ex.pair, ex.k, ex.l);
    EXPECT_EQ(r.kind, TransformKind::InnerInverse);
    ASSERT_TRUE(r.output_bounds.feasible);
    EXPECT_NEAR(*r.output_bounds.alpha_opt, 0.5, 1e-10);
    EXPECT_NEAR(r.output_bounds.beta_opt, 1.0, 1e-10);
    EXPECT_NEAR(*r.input_bounds.alpha_opt, 0.5, 1e-10);
    EXPECT_NEAR(r.input_bounds.beta_opt, 2.0, 1e-10);
    EXPECT_NEAR(r.upper_bound_factor, 1.0, 1e-14);
}

TEST(KlTransform, PinvIsAnInnerInverse) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto k = gen_rank({s, 4, 4}, 2);
        const auto p = gen_k_biframe(k, {s, 4, 6});
        const auto r = kl_transform(p, k, pinv(k));
        EXPECT_TRUE(r.output_bounds.feasible);
    }
}

TEST(KlTransform, InvertibleKLeavesPairUnchanged) {
    Rng rng(2);
    const auto k = rng.ginibre(3, 3);
    const auto p = gen_k_biframe(k, {2, 3, 5});
    const auto r = kl_transform(p, k, pinv(k));
    for (std::size_t j = 0; j < p.count(); ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NEAR(std::abs(r.pair.x()[j][i] - p.x()[j][i]), 0.0, 1e-10);
            EXPECT_NEAR(std::abs(r.pair.y()[j][i] - p.y()[j][i]), 0.0, 1e-10);
        }
    }
}

TEST(KlTransform, RejectsNonInnerInverse) {
    const InnerInverseExample ex;
    try {
        (void)kl_transform(ex.pair, ex.k, 2.0 * ex.l);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InnerInverseViolated);
    }
}

TEST(KlTransform, RejectsNonKBiframeInput) {
    const auto p = pair_of({basis(2, 0)}, {basis(2, 0)});
    try {
        (void)kl_transform(p, ComplexMatrix::identity(2), ComplexMatrix::identity(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAKBiframe);
        ASSERT_EQ(e.witness().size(), 2U);
        EXPECT_NEAR(std::abs(e.witness()[1]), 1.0, 1e-12);
    }
}

TEST(Unitary, IdentityIsNoOp) {
    const auto p = diagonal_pair();
    const auto r = unitary_conjugate(p, diag({3.0, 1.0, 1.0}), ComplexMatrix::identity(3));
    EXPECT_EQ(r.pair, p);
    EXPECT_NEAR(*r.output_bounds.alpha_opt, 1.0 / 9, 1e-10);
}

TEST(Unitary, PermutationPreservesBounds) {
    const ComplexMatrix swap{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    const auto r = unitary_conjugate(diagonal_pair(), diag({3.0, 1.0, 1.0}), swap);
    ASSERT_TRUE(r.output_bounds.feasible);
    EXPECT_NEAR(*r.output_bounds.alpha_opt, 1.0 / 9, 1e-10);
    EXPECT_NEAR(r.output_bounds.beta_opt, 1.0, 1e-10);
    ASSERT_TRUE(r.phi_target_bounds.has_value());
    EXPECT_TRUE(r.phi_target_bounds->feasible);
}

TEST(Unitary, HaarConjugationInvariance) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto k = gen_rank({s, 5, 5}, 3);
        const auto p = gen_k_biframe(k, {s, 5, 7});
        const auto u = gen_unitary({s + 100, 5, 5});
        const auto r = unitary_conjugate(p, k, u);
        ASSERT_TRUE(r.output_bounds.feasible);
        EXPECT_NEAR(*r.output_bounds.alpha_opt, *r.input_bounds.alpha_opt, 1e-8);
        EXPECT_NEAR(r.output_bounds.beta_opt, r.input_bounds.beta_opt, 1e-8);
        EXPECT_LE(r.phi_identity_residual, 1e-8 * phi(k).scale());
    }
}

TEST(Unitary, RejectsNonUnitary) {
    try {
        (void)unitary_conjugate(diagonal_pair(), ComplexMatrix::identity(3), diag({1.0, 1.0, 2.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnitary);
    }
}

TEST(PhiTransform, IdentityIsNoOp) {
    const auto p = diagonal_pair();
    const auto r = phi_transform(p, ComplexMatrix::identity(3), diag({3.0, 1.0, 1.0}));
    EXPECT_EQ(r.pair, p);
    EXPECT_EQ(r.domain.dim(), 3U);
}

TEST(PhiTransform, DiagonalRankDeficient) {
    const auto r = phi_transform(diagonal_pair(), diag({2.0, 1.0, 0.0}), diag({3.0, 1.0, 1.0}));
    EXPECT_EQ(r.domain.dim(), 2U);
    EXPECT_TRUE(subspace_eq(r.domain, span_of(ComplexMatrix{{1, 0}, {0, 1}, {0, 0}})));
    EXPECT_EQ(r.pair.x()[0], basis(3, 0, 0.5));
    EXPECT_EQ(r.pair.x()[2], Vector(3));
    ASSERT_TRUE(r.output_bounds.feasible);
    // Reduced pencil diag(1/4, 1/2) vs diag(9, 1).
    EXPECT_NEAR(*r.output_bounds.alpha_opt, 1.0 / 36, 1e-10);
    EXPECT_NEAR(r.output_bounds.beta_opt, 0.5, 1e-10);
}

TEST(PhiTransform, Hypotheses) {
    const auto p = diagonal_pair();
    try {
        (void)phi_transform(p, ComplexMatrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, ComplexMatrix::identity(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotEP);
    }
    const ComplexMatrix swap{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    try {
        (void)phi_transform(p, swap, diag({3.0, 1.0, 1.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
    }
}

TEST(ShiftTransform, IdentityWithZeroShift) {
    const auto p = diagonal_pair();
    const auto r = lambda_shift_transform(p, ComplexMatrix::identity(3), diag({3.0, 1.0, 1.0}), 0.0);
    EXPECT_EQ(r.pair, p);
    EXPECT_EQ(r.domain.dim(), 3U);
}

TEST(ShiftTransform, DiagonalExample) {
    const auto r = lambda_shift_transform(parseval(2), diag({2.0, 3.0}), ComplexMatrix::identity(2), 1.0);
    EXPECT_LT(diff(pair_operator(r.pair), diag({1.0, 4.0})), 1e-14);
    ASSERT_TRUE(r.output_bounds.feasible);
    EXPECT_NEAR(*r.output_bounds.alpha_opt, 1.0, 1e-10);
    EXPECT_NEAR(r.output_bounds.beta_opt, 4.0, 1e-10);
}

TEST(ShiftTransform, Hypotheses) {
    const auto p = parseval(2);
    auto expect_violation = [&](const ComplexMatrix& t, const ComplexMatrix& k, Complex lambda) {
        try {
            (void)lambda_shift_transform(p, t, k, lambda);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::HypothesisViolated);
        }
    };
    expect_violation(diag({2.0, 3.0}), ComplexMatrix::identity(2), 2.0);          // |lambda| = gamma
    expect_violation(ComplexMatrix{{0, 1}, {0, 0}}, ComplexMatrix::identity(2), 0.0); // not semi-regular
    expect_violation(diag({2.0, 3.0}), ComplexMatrix{{0, 1}, {1, 0}}, 0.5);        // K T != T K
}

TEST(ProjectionMembership, Examples) {
    const auto m = projection_membership(diagonal_pair(), diag({3.0, 1.0, 1.0}));
    EXPECT_LT(diff(m.operator_used, ComplexMatrix::identity(3)), 1e-14);
    ASSERT_TRUE(m.bounds.feasible);
    EXPECT_NEAR(*m.bounds.alpha_opt, 1.0 / 3, 1e-10);
    EXPECT_NEAR(m.bounds.beta_opt, 1.0, 1e-10);
    EXPECT_GE(*m.bounds.alpha_opt, m.guaranteed_alpha);

    const auto u = gen_unitary({1, 3, 3});
    const auto p = gen_k_biframe(u, {1, 3, 5});
    const auto mu = projection_membership(p, u);
    const auto plain = biframe_bounds(p);
    EXPECT_NEAR(*mu.bounds.alpha_opt, *plain.alpha_opt, 1e-10);
}

// alpha / ||K||^2 is not a valid lower bound against the projector when
// gamma(K) ||K|| < 1; alpha gamma(K)^2 is.
TEST(ProjectionMembership, NormConstantCounterexample) {
    const double eps = 0.1;
    const auto k = eps * ComplexMatrix::identity(2);
    const auto p = VectorPairSystem::from_matrices(ComplexMatrix::identity(2), (eps * eps) * ComplexMatrix::identity(2));
    const auto m = projection_membership(p, k);
    ASSERT_TRUE(m.bounds.feasible);
    const double alpha = *m.input_bounds.alpha_opt;
    EXPECT_NEAR(alpha, 1.0, 1e-10);
    EXPECT_NEAR(*m.bounds.alpha_opt, eps * eps, 1e-12);
    EXPECT_LT(*m.bounds.alpha_opt, alpha / (eps * eps));
    EXPECT_GE(*m.bounds.alpha_opt, m.guaranteed_alpha * (1 - 1e-9));
}

TEST(PhiMembership, Examples) {
    const auto m = phi_membership(diagonal_pair(), diag({3.0, 1.0, 1.0}));
    EXPECT_LT(diff(m.operator_used, diag({1.0 / 3, 1.0, 1.0})), 1e-14);
    ASSERT_TRUE(m.bounds.feasible);
    EXPECT_NEAR(*m.bounds.alpha_opt, 1.0 / 3, 1e-10);
    EXPECT_GE(*m.bounds.alpha_opt, m.guaranteed_alpha);

    const auto p = parseval(3);
    const auto i = phi_membership(p, ComplexMatrix::identity(3));
    EXPECT_NEAR(*i.bounds.alpha_opt, 1.0, 1e-10);
}

TEST(IsUnitary, Basics) {
    EXPECT_TRUE(is_unitary(gen_unitary({3, 6, 6})));
    EXPECT_FALSE(is_unitary(diag({1.0, 2.0})));
    EXPECT_FALSE(is_unitary(ComplexMatrix::zeros(2, 3)));
}

} // namespace
} // namespace kbiframe
