#pragma once

#include <complex>
#include <optional>
#include <string>

#include "kbiframe/biframe.hpp"

namespace kbiframe {

enum class TransformKind { InnerInverse, Unitary, Phi, Shift, Projection, PhiMembership };
std::string_view to_string(TransformKind kind) noexcept;

/// Result of a biframe-preserving construction: the new pair, the operator K'
/// it is a K'-biframe for, and the subspace on which the inequalities hold.
struct TransformResult {
    VectorPairSystem pair;
    ComplexMatrix target_operator;
    Subspace domain;
    TransformKind kind = TransformKind::InnerInverse;
    std::string provenance;

    BoundsReport input_bounds;  ///< original pair against the original K
    BoundsReport output_bounds; ///< new pair against target_operator on domain
    /// Factor the upper bound may grow by according to the construction
    /// (‖KL‖², ‖T†‖², ‖T − λI‖²); 1 when unchanged.
    double upper_bound_factor = 1.0;

    // Unitary conjugation only: bounds against U φ(K) Uᴴ and the residual of
    // φ(UKUᴴ) = U φ(K) Uᴴ.
    std::optional<BoundsReport> phi_target_bounds;
    double phi_identity_residual = 0.0;
};

/// x_j ↦ (KL)x_j, y_j ↦ (KL)y_j for an inner inverse L (KLK = K).
/// Throws InnerInverseViolated, NotAKBiframe.
TransformResult kl_transform(const VectorPairSystem& pair, const ComplexMatrix& k, const ComplexMatrix& l,
                             const ToleranceProfile& tol = {});

/// x_j ↦ Ux_j, y_j ↦ Uy_j; the result is a UKUᴴ- and a Uφ(K)Uᴴ-biframe.
/// Throws NotUnitary, NotAKBiframe.
TransformResult unitary_conjugate(const VectorPairSystem& pair, const ComplexMatrix& k, const ComplexMatrix& u,
                                  const ToleranceProfile& tol = {});

/// x_j ↦ φ(T)x_j for EP T with TᴴK = KTᴴ; a K-biframe on R(T).
/// Throws NotEP, HypothesisViolated, NotAKBiframe.
TransformResult phi_transform(const VectorPairSystem& pair, const ComplexMatrix& t, const ComplexMatrix& k,
                              const ToleranceProfile& tol = {});

/// x_j ↦ (T − λI)x_j for semi-regular T commuting with K and |λ| < γ(T);
/// a K-biframe on R∞(T). Throws HypothesisViolated, NotAKBiframe.
TransformResult lambda_shift_transform(const VectorPairSystem& pair, const ComplexMatrix& t, const ComplexMatrix& k,
                                       Complex lambda, const ToleranceProfile& tol = {});

/// Bounds of the same pair against the projector onto R(K).
struct MembershipResult {
    BoundsReport input_bounds;
    BoundsReport bounds;
    ComplexMatrix operator_used;
    /// Lower bound promised by the construction (α γ(K)² for the projector,
    /// α γ(K)⁴ for φ(K)).
    double guaranteed_alpha = 0.0;
};

/// Same pair against π_{R(K)}. Throws NotAKBiframe.
MembershipResult projection_membership(const VectorPairSystem& pair, const ComplexMatrix& k,
                                       const ToleranceProfile& tol = {});
/// Same pair against φ(K). Throws NotAKBiframe.
MembershipResult phi_membership(const VectorPairSystem& pair, const ComplexMatrix& k,
                                const ToleranceProfile& tol = {});

/// ‖U Uᴴ − I‖_F <= eq_rel * n and square.
bool is_unitary(const ComplexMatrix& u, const ToleranceProfile& tol = {});

} // namespace kbiframe
