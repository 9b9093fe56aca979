#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "kbiframe/biframe.hpp"

namespace kbiframe {

struct TrialSeed {
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    std::size_t count = 2;
};

/// SplitMix64 finalizer; derives independent per-trial seeds from (base, index).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Deterministic random source. Uniform and normal deviates are produced
/// from raw mt19937_64 output so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                          ///< [0, 1)
    double uniform(double lo, double hi);      ///< [lo, hi)
    std::size_t index(std::size_t n);          ///< [0, n)
    double normal();                           ///< standard normal
    Complex complex_normal();                  ///< E|z|² = 1
    Complex unit_phase();
    ComplexMatrix ginibre(std::size_t rows, std::size_t cols);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-distributed unitary (QR of a Ginibre matrix, R-diagonal phases removed).
ComplexMatrix gen_unitary(const TrialSeed& t);
/// U diag(d) Uᴴ with `rank` nonzero complex eigenvalues.
ComplexMatrix gen_normal(const TrialSeed& t, std::size_t rank);
/// U (C ⊕ 0) Uᴴ with C an invertible rank x rank block (condition <= 1e6).
ComplexMatrix gen_ep(const TrialSeed& t, std::size_t rank);
/// S (I_rank ⊕ 0) S⁻¹ with S random (condition <= 1e6).
ComplexMatrix gen_idempotent(const TrialSeed& t, std::size_t rank);
/// Random matrix of the given rank (product of Ginibre factors, condition <= 1e6).
ComplexMatrix gen_rank(const TrialSeed& t, std::size_t rank);
/// Random Hermitian matrix.
ComplexMatrix gen_hermitian(const TrialSeed& t);

struct CommutingFamily {
    ComplexMatrix hermitian_seed; ///< H
    ComplexMatrix k;              ///< p(H)
    ComplexMatrix t;              ///< q(H)
};

/// K and T as cubic polynomials with random complex coefficients in one
/// random Hermitian matrix H; T is invertible (condition <= 1e6).
CommutingFamily gen_commuting_family(const TrialSeed& t);
/// As gen_commuting_family, but T = Π (H − μ_i I) over `nullity` eigenvalues
/// μ_i of H: Hermitian, rank dim − nullity, still a polynomial in H.
CommutingFamily gen_commuting_family_singular_hermitian(const TrialSeed& t, std::size_t nullity);

/// L = K† + W − K†KWKK† for random W, so KLK = K.
ComplexMatrix gen_inner_inverse(const ComplexMatrix& k, const TrialSeed& t);

/// Pair ({columns of X}, {columns of G(Xᴴ)†}) whose pair operator is exactly
/// `g_target` (X must have full row rank).
VectorPairSystem pair_with_operator(const ComplexMatrix& g_target, const ComplexMatrix& x);

/// Pair with pair operator KKᴴ + D (D random PSD), so α_opt >= 1.
VectorPairSystem gen_k_biframe(const ComplexMatrix& k, const TrialSeed& t);

/// Condition number σ₁ / σ_r over the nonzero part.
double condition_number(const ComplexMatrix& a, const ToleranceProfile& tol = {});

} // namespace kbiframe
