#include <numbers>

#include "support.hpp"

namespace kbiframe {
namespace {

using test::basis;
using test::diag;
using test::diff;
using test::pair_of;

VectorPairSystem diagonal_pair(double z) {
    const Complex ph = std::polar(1.0, z);
    return pair_of({basis(3, 0, ph), basis(3, 1, 0.5), basis(3, 2)}, {basis(3, 0, ph), basis(3, 1), basis(3, 2, 1.0 / 3)});
}

VectorPairSystem cancelling_pair(std::size_t r) {
    std::vector<Vector> x{basis(r, 0), basis(r, 0)};
    std::vector<Vector> y{basis(r, 0, 0.5), basis(r, 0, -0.5)};
    for (std::size_t j = 1; j < r; ++j) {
        x.push_back(basis(r, j));
        y.push_back(basis(r, j));
    }
    return {x, y};
}

ComplexMatrix cancelling_k(std::size_t r) {
    ComplexMatrix k = ComplexMatrix::identity(r);
    k(0, 0) = std::numbers::sqrt2;
    return k;
}

VectorPairSystem standard_basis_pair(std::size_t n) {
    std::vector<Vector> e;
    for (std::size_t j = 0; j < n; ++j) e.push_back(basis(n, j));
    return {e, e};
}

const VectorPairSystem kBiframe2 = pair_of({basis(2, 0), basis(2, 1)}, {{3.0, 1.0}, {1.0, 1.0}});

TEST(PairSystem, Validation) {
    EXPECT_THROW(VectorPairSystem({basis(2, 0)}, {}), Error);
    EXPECT_THROW(VectorPairSystem({basis(2, 0)}, {basis(3, 0)}), Error);
    EXPECT_THROW(VectorPairSystem({}, {}), Error);
    EXPECT_THROW(VectorPairSystem({Vector{Complex(std::nan(""), 0)}}, {Vector{1.0}}), Error);
    EXPECT_NO_THROW(VectorPairSystem({basis(2, 0)}, {basis(2, 1)}));
}

TEST(PairSystem, MatricesAndSwap) {
    const auto p = VectorPairSystem::from_matrices(ComplexMatrix::identity(2), ComplexMatrix{{3, 1}, {1, 1}});
    EXPECT_EQ(p, kBiframe2);
    EXPECT_EQ(p.swapped().swapped(), p);
    const auto mapped = p.mapped(2.0 * ComplexMatrix::identity(2));
    EXPECT_EQ(mapped.x()[0], basis(2, 0, 2.0));
}

TEST(PairOperator, Examples) {
    EXPECT_LT(diff(pair_operator(kBiframe2), ComplexMatrix{{3, 1}, {1, 1}}), 1e-15);
    EXPECT_LT(diff(pair_operator(standard_basis_pair(4)), ComplexMatrix::identity(4)), 1e-15);
    for (double z : {0.0, 1.0, 2.5}) {
        EXPECT_LT(diff(pair_operator(diagonal_pair(z)), diag({1.0, 0.5, 1.0 / 3})), 1e-15);
    }
}

TEST(BiframeBounds, Examples) {
    auto r = biframe_bounds(standard_basis_pair(3));
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(*r.alpha_opt, 1.0, 1e-15);
    EXPECT_NEAR(r.beta_opt, 1.0, 1e-15);

    r = biframe_bounds(kBiframe2);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(*r.alpha_opt, 2 - std::numbers::sqrt2, 1e-10);
    EXPECT_NEAR(r.beta_opt, 2 + std::numbers::sqrt2, 1e-10);

    r = biframe_bounds(pair_of({Vector{1.0}}, {Vector{-1.0}}));
    EXPECT_FALSE(r.feasible);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NEAR(std::abs((*r.witness)[0]), 1.0, 1e-15);
}

TEST(KBiframeBounds, DiagonalExample) {
    for (double z : {0.0, 1.0, 2.5}) {
        const auto r = k_biframe_bounds(diagonal_pair(z), diag({3.0, 1.0, 1.0}));
        ASSERT_TRUE(r.feasible);
        EXPECT_NEAR(*r.alpha_opt, 1.0 / 9, 1e-10);
        EXPECT_NEAR(r.beta_opt, 1.0, 1e-10);
    }
}

TEST(KBiframeBounds, CancellingPairIsInfeasible) {
    for (std::size_t r : {3U, 6U}) {
        const auto rep = k_biframe_bounds(cancelling_pair(r), cancelling_k(r));
        EXPECT_FALSE(rep.feasible);
        EXPECT_FALSE(rep.alpha_opt.has_value());
        ASSERT_TRUE(rep.witness.has_value());
        EXPECT_GT(std::abs((*rep.witness)[0]), 0.999);
        EXPECT_LE(std::abs(rep.witness_form), 1e-10);
        EXPECT_NEAR(rep.witness_k_norm2, 2.0, 1e-12);
    }
}

TEST(KBiframeBounds, TruncatedShift) {
    const std::size_t n = 16;
    ComplexMatrix k(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j) k(j + 1, j) = 1.0;
    for (double a : {0.0, 1.0}) {
        const Complex ph = std::polar(1.0, a);
        std::vector<Vector> f{basis(n, 0, ph)};
        std::vector<Vector> g{basis(n, 0, ph / std::numbers::sqrt2)};
        for (std::size_t j = 1; j < n; ++j) {
            f.push_back(basis(n, j));
            g.push_back(basis(n, j));
        }
        const VectorPairSystem p(f, g);
        const auto r = k_biframe_bounds(p, k);
        ASSERT_TRUE(r.feasible);
        EXPECT_NEAR(*r.alpha_opt, 1.0, 1e-10);
        EXPECT_NEAR(r.beta_opt, 1.0, 1e-10);
        EXPECT_TRUE(verify_claimed_bounds(p, k, 1.0 / std::numbers::sqrt2, 1.0).holds);
    }
}

TEST(KBiframeBounds, RejectsZeroKAndBadShapes) {
    EXPECT_THROW((void)k_biframe_bounds(kBiframe2, ComplexMatrix::zeros(2, 2)), Error);
    EXPECT_THROW((void)k_biframe_bounds(kBiframe2, ComplexMatrix::identity(3)), Error);
}

TEST(KBiframeBounds, NonHermitianFormIsRejectedWithWitness) {
    const auto p = pair_of({basis(2, 0)}, {basis(2, 1)}); // G = e2 e1^H
    try {
        (void)k_biframe_bounds(p, ComplexMatrix::identity(2));
        FAIL() << "expected NonHermitianForm";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonHermitianForm);
        EXPECT_NEAR(e.value(), std::numbers::sqrt2, 1e-14);
        ASSERT_EQ(e.witness().size(), 2U);
        // The witness has a non-real form value.
        const auto g = pair_operator(p);
        const Vector gx = g * std::span<const Complex>(e.witness());
        EXPECT_GT(std::abs(inner(gx, e.witness()).imag()), 0.1);
    }
}

TEST(KBiframeBounds, HermitianPartMode) {
    const auto p = pair_of({basis(2, 0), basis(2, 0), basis(2, 1)}, {basis(2, 0), basis(2, 1), basis(2, 1)});
    // G = [[1, 0], [1, 1]], Hermitian part [[1, .5], [.5, 1]].
    EXPECT_THROW((void)biframe_bounds(p), Error);
    const auto r = biframe_bounds(p, {}, FormMode::HermitianPart);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(*r.alpha_opt, 0.5, 1e-14);
    EXPECT_NEAR(r.beta_opt, 1.5, 1e-14);
    EXPECT_NEAR(r.hermitian_defect, std::numbers::sqrt2, 1e-14);
}

TEST(SubspaceBounds, Examples) {
    const auto p = diagonal_pair(0.3);
    const auto k = diag({3.0, 1.0, 1.0});
    const auto full = k_biframe_bounds_on_subspace(p, k, Subspace::full(3));
    const auto plain = k_biframe_bounds(p, k);
    EXPECT_NEAR(*full.alpha_opt, *plain.alpha_opt, 1e-12);
    EXPECT_NEAR(full.beta_opt, plain.beta_opt, 1e-12);

    const auto e23 = span_of(ComplexMatrix{{0, 0}, {1, 0}, {0, 1}});
    const auto r = k_biframe_bounds_on_subspace(cancelling_pair(3), cancelling_k(3), e23);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(*r.alpha_opt, 1.0, 1e-10);
    EXPECT_NEAR(r.beta_opt, 1.0, 1e-10);

    const auto e1 = span_of(ComplexMatrix{{1}, {0}, {0}});
    const auto s = k_biframe_bounds_on_subspace(p, k, e1);
    ASSERT_TRUE(s.feasible);
    EXPECT_NEAR(*s.alpha_opt, 1.0 / 9, 1e-10);
    EXPECT_NEAR(s.beta_opt, 1.0, 1e-10);

    EXPECT_THROW((void)k_biframe_bounds_on_subspace(p, k, Subspace::zero(3)), Error);
    // K K^H vanishes on span{e1} for K = diag(0, 1, 1).
    EXPECT_THROW((void)k_biframe_bounds_on_subspace(p, diag({0.0, 1.0, 1.0}), e1), Error);
}

TEST(SubspaceBounds, WitnessIsLiftedToAmbientSpace) {
    const auto s = span_of(ComplexMatrix{{1, 0}, {0, 1}, {0, 0}});
    const auto r = k_biframe_bounds_on_subspace(cancelling_pair(3), cancelling_k(3), s);
    EXPECT_FALSE(r.feasible);
    ASSERT_TRUE(r.witness.has_value());
    ASSERT_EQ(r.witness->size(), 3U);
    EXPECT_GT(std::abs((*r.witness)[0]), 0.999);
}

TEST(Verify, Examples) {
    const Complex ea = std::polar(1.0, 0.7);
    const ComplexMatrix k{{ea, std::conj(ea)}, {0, 0}};
    const auto p = pair_of({basis(2, 0, ea), basis(2, 1)}, {basis(2, 0, ea), basis(2, 1, 2.0)});
    EXPECT_TRUE(verify_claimed_bounds(p, k, 0.5, 2.0).holds);

    const auto v = verify_claimed_bounds(kBiframe2, ComplexMatrix::identity(2), 0.5, 3.0);
    EXPECT_FALSE(v.holds);
    ASSERT_EQ(v.violations.size(), 1U);
    EXPECT_EQ(v.violations[0].side, BoundSide::Upper);
    EXPECT_NEAR(v.violations[0].margin, (2 + std::numbers::sqrt2) - 3, 1e-10);
    // Witness is the dominant eigenvector of [[3,1],[1,1]].
    const auto e = herm_eig(ComplexMatrix{{3, 1}, {1, 1}});
    EXPECT_NEAR(std::abs(inner(v.violations[0].witness, e.vectors.column(1))), 1.0, 1e-10);

    EXPECT_TRUE(verify_claimed_bounds(standard_basis_pair(3), ComplexMatrix::identity(3), 1.0, 1.0).holds);
    EXPECT_THROW((void)verify_claimed_bounds(kBiframe2, ComplexMatrix::identity(2), -1.0, 3.0), Error);
}

TEST(Verify, LowerViolationHasWitness) {
    const auto v = verify_claimed_bounds(diagonal_pair(0.0), diag({3.0, 1.0, 1.0}), 0.2, 1.0);
    EXPECT_FALSE(v.holds);
    ASSERT_EQ(v.violations.size(), 1U);
    EXPECT_EQ(v.violations[0].side, BoundSide::Lower);
    EXPECT_GT(v.violations[0].margin, 0.0);
    EXPECT_GT(v.violations[0].lower_term, v.violations[0].form);
}

TEST(PencilBounds, DiagonalPencil) {
    // G = diag(5, 1), B = diag(4, 0): alpha_opt = 5/4.
    const auto r = pencil_bounds(diag({5.0, 1.0}), diag({4.0, 0.0}), {});
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(*r.alpha_opt, 1.25, 1e-11);
    EXPECT_NEAR(r.beta_opt, 5.0, 1e-14);
}

} // namespace
} // namespace kbiframe
