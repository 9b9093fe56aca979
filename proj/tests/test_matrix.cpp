#include "support.hpp"

namespace kbiframe {
namespace {

using test::basis;

TEST(Matrix, IdentityAndZeros) {
    const auto i3 = ComplexMatrix::identity(3);
    EXPECT_EQ(i3(0, 0), Complex(1.0));
    EXPECT_EQ(i3(0, 1), Complex(0.0));
    EXPECT_EQ(ComplexMatrix::zeros(2, 3).frobenius_norm(), 0.0);
    EXPECT_EQ(ComplexMatrix::zeros(2, 3).scale(), 1.0);
}

TEST(Matrix, RaggedInitializerRejected) {
    EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), Error);
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
}

TEST(Matrix, AdjointConjugatesAndTransposes) {
    const ComplexMatrix a{{{1, 2}, {3, -1}}, {{0, 1}, 4.0}, {5.0, {0, -2}}};
    const auto ah = a.adjoint();
    ASSERT_EQ(ah.rows(), 2U);
    ASSERT_EQ(ah.cols(), 3U);
    EXPECT_EQ(ah(1, 0), Complex(3, 1));
    EXPECT_EQ(ah(0, 1), Complex(0, -1));
    EXPECT_EQ(a.transpose()(1, 0), Complex(3, -1));
    EXPECT_EQ(a.conj()(0, 0), Complex(1, -2));
}

TEST(Matrix, ProductsMatchEigen) {
    Rng rng(3);
    const auto a = rng.ginibre(3, 4);
    const auto b = rng.ginibre(4, 2);
    const Eigen::MatrixXcd ref = test::to_eigen(a) * test::to_eigen(b);
    EXPECT_LT((test::to_eigen(a * b) - ref).norm(), 1e-13);

    const Vector x = b.column(1);
    const Vector ax = a * std::span<const Complex>(x);
    const Eigen::VectorXcd axr = test::to_eigen(a) * test::to_eigen(b).col(1);
    for (std::size_t i = 0; i < ax.size(); ++i) EXPECT_LT(std::abs(ax[i] - axr(static_cast<Eigen::Index>(i))), 1e-13);
}

TEST(Matrix, ShapeErrors) {
    EXPECT_THROW(ComplexMatrix::identity(2) * ComplexMatrix::identity(3), Error);
    EXPECT_THROW(ComplexMatrix::identity(2) + ComplexMatrix::identity(3), Error);
}

TEST(Matrix, InnerProductIsLinearInFirstSlot) {
    const Vector u{{1, 1}, 2.0};
    const Vector v{{0, 1}, 1.0};
    // <u, v> = v^H u
    const Complex expected = std::conj(v[0]) * u[0] + std::conj(v[1]) * u[1];
    EXPECT_EQ(inner(u, v), expected);
    Vector iu = u;
    for (auto& z : iu) z *= Complex(0, 1);
    EXPECT_LT(std::abs(inner(iu, v) - Complex(0, 1) * expected), 1e-15);
    EXPECT_DOUBLE_EQ(norm2(u), 6.0);
}

TEST(Matrix, ColumnsRoundTrip) {
    const std::vector<Vector> cols{basis(3, 0, 2.0), basis(3, 2, Complex(0, 1))};
    const auto m = ComplexMatrix::from_columns(cols, 3);
    EXPECT_EQ(m.column(1), cols[1]);
    EXPECT_EQ(m.columns(1, 1).column(0), cols[1]);
}

TEST(Matrix, HermitianPartAndDefect) {
    const ComplexMatrix a{{1.0, 2.0}, {0.0, 1.0}};
    EXPECT_NEAR(hermitian_defect(a), std::sqrt(8.0), 1e-15);
    const auto h = hermitian_part(a);
    EXPECT_EQ(h(0, 1), Complex(1.0));
    EXPECT_EQ(hermitian_defect(h), 0.0);
}

TEST(Matrix, FiniteCheck) {
    ComplexMatrix a = ComplexMatrix::identity(2);
    EXPECT_TRUE(a.all_finite());
    a(0, 1) = Complex(std::nan(""), 0);
    EXPECT_FALSE(a.all_finite());
}

} // namespace
} // namespace kbiframe
