#pragma once

#include <cstddef>
#include <vector>

#include "kbiframe/matrix.hpp"
#include "kbiframe/tolerance.hpp"

namespace kbiframe {

struct HermitianEigen {
    std::vector<double> values; ///< ascending
    ComplexMatrix vectors;      ///< unitary; column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// The input must satisfy ‖A − Aᴴ‖_F <= eq_abs(‖A‖_F); callers holding a merely
/// approximately Hermitian matrix should pass hermitian_part(A). Each eigenvector
/// is phase-normalized so that its first non-negligible component is real positive.
/// Throws NotHermitian or NoConvergence.
HermitianEigen herm_eig(const ComplexMatrix& a, const ToleranceProfile& tol = {});

struct SingularValueDecomposition {
    ComplexMatrix u;           ///< m x m unitary
    std::vector<double> sigma; ///< min(m, n) values, descending
    ComplexMatrix v;           ///< n x n unitary
};

/// One-sided (Hestenes) Jacobi SVD: A = U diag(sigma) Vᴴ. Throws NoConvergence.
SingularValueDecomposition svd(const ComplexMatrix& a);

/// Number of singular values above rank_rel * sigma_1.
std::size_t rank(const ComplexMatrix& a, const ToleranceProfile& tol = {});
std::size_t rank(const SingularValueDecomposition& f, const ToleranceProfile& tol = {});

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Moore–Penrose pseudoinverse V diag(1/sigma_kept) Uᴴ.
ComplexMatrix pinv(const ComplexMatrix& a, const ToleranceProfile& tol = {});
ComplexMatrix pinv(const SingularValueDecomposition& f, const ToleranceProfile& tol = {});

struct PenroseResiduals {
    double a_pinv_a = 0.0;    ///< ‖AA†A − A‖ / ‖A‖
    double pinv_a_pinv = 0.0; ///< ‖A†AA† − A†‖ / ‖A†‖
    double left_sym = 0.0;    ///< ‖(AA†)ᴴ − AA†‖
    double right_sym = 0.0;   ///< ‖(A†A)ᴴ − A†A‖
    [[nodiscard]] double max() const noexcept;
};

PenroseResiduals penrose_residuals(const ComplexMatrix& a, const ComplexMatrix& a_pinv);

/// Orthonormal column basis of a subspace of C^ambient_dim.
///
/// `tol` is an estimate of the basis' angular error (from the spectral gap that
/// produced it); subspace comparisons widen their threshold by it.
struct Subspace {
    std::size_t ambient_dim = 0;
    ComplexMatrix basis; ///< ambient_dim x dim
    double tol = 0.0;

    [[nodiscard]] std::size_t dim() const noexcept { return basis.cols(); }
    [[nodiscard]] bool trivial() const noexcept { return basis.cols() == 0; }

    static Subspace full(std::size_t n);
    static Subspace zero(std::size_t n);
};

Subspace range_basis(const ComplexMatrix& a, const ToleranceProfile& tol = {});
Subspace null_basis(const ComplexMatrix& a, const ToleranceProfile& tol = {});
Subspace range_basis(const SingularValueDecomposition& f, std::size_t rows, const ToleranceProfile& tol = {});
Subspace null_basis(const SingularValueDecomposition& f, std::size_t cols, const ToleranceProfile& tol = {});

/// Orthonormalizes the column span of `columns` (rank-revealing, via svd).
Subspace span_of(const ComplexMatrix& columns, const ToleranceProfile& tol = {});

/// Orthogonal projector Q Qᴴ.
ComplexMatrix projector(const Subspace& s);

/// ‖(I − P₂) Q₁‖ — how far S1 sticks out of S2.
double subspace_excess(const Subspace& s1, const Subspace& s2);
/// S1 ⊆ S2 within max(eq_rel, S1.tol + S2.tol). Throws DimensionMismatch.
bool subspace_leq(const Subspace& s1, const Subspace& s2, const ToleranceProfile& tol = {});
bool subspace_eq(const Subspace& s1, const Subspace& s2, const ToleranceProfile& tol = {});

} // namespace kbiframe
