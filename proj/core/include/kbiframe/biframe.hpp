#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "kbiframe/linalg.hpp"

namespace kbiframe {

/// A candidate (K-)biframe: two equal-length families of vectors in C^dim.
class VectorPairSystem {
public:
    VectorPairSystem() = default;
    /// Throws DimensionMismatch / InvalidArgument if the families are
    /// empty, of different lengths, ragged, or contain non-finite entries.
    VectorPairSystem(std::vector<Vector> x, std::vector<Vector> y);

    /// Columns of `x` and `y` become the two families.
    static VectorPairSystem from_matrices(const ComplexMatrix& x, const ComplexMatrix& y);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t count() const noexcept { return x_.size(); }
    [[nodiscard]] const std::vector<Vector>& x() const noexcept { return x_; }
    [[nodiscard]] const std::vector<Vector>& y() const noexcept { return y_; }

    /// Applies `op` to every vector of both families.
    [[nodiscard]] VectorPairSystem mapped(const ComplexMatrix& op) const;
    /// Exchanges the roles of the two families.
    [[nodiscard]] VectorPairSystem swapped() const { return {y_, x_}; }

    friend bool operator==(const VectorPairSystem&, const VectorPairSystem&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Vector> x_;
    std::vector<Vector> y_;
};

/// G = Σ_j y_j x_jᴴ, so that xᴴGx = Σ_j ⟨x, x_j⟩⟨y_j, x⟩.
ComplexMatrix pair_operator(const VectorPairSystem& pair);

/// The sum Σ_j ⟨x, x_j⟩⟨y_j, x⟩ evaluated term by term.
Complex pair_form(const VectorPairSystem& pair, std::span<const Complex> x);

/// How a non-Hermitian pair operator is treated.
enum class FormMode {
    Strict,        ///< reject with NonHermitianForm
    HermitianPart, ///< use (G + Gᴴ)/2 and report the defect
};

struct BoundsReport {
    bool feasible = false;
    std::optional<double> alpha_opt; ///< present iff feasible
    double alpha_sup = 0.0;          ///< bisection result, reported even when infeasible
    double beta_opt = 0.0;           ///< λ_max of the (reduced) pair operator
    double lambda_min_form = 0.0;    ///< λ_min of the (reduced) pair operator
    double hermitian_defect = 0.0;
    std::optional<Vector> witness;
    double witness_form = 0.0;    ///< xᴴGx at the witness
    double witness_k_norm2 = 0.0; ///< ‖Kᴴx‖² at the witness
    std::size_t bisection_steps = 0;
    ToleranceProfile tol_used;
};

/// Optimal biframe bounds: α = λ_min(G), β = λ_max(G).
BoundsReport biframe_bounds(const VectorPairSystem& pair, const ToleranceProfile& tol = {},
                            FormMode mode = FormMode::Strict);

/// Optimal K-biframe bounds: β = λ_max(G) and α = sup{α : G − αKKᴴ ⪰ 0},
/// located by bisection on the Hermitian pencil.
BoundsReport k_biframe_bounds(const VectorPairSystem& pair, const ComplexMatrix& k,
                              const ToleranceProfile& tol = {}, FormMode mode = FormMode::Strict);

/// As k_biframe_bounds, with the inequalities quantified over x ∈ S only.
BoundsReport k_biframe_bounds_on_subspace(const VectorPairSystem& pair, const ComplexMatrix& k, const Subspace& s,
                                          const ToleranceProfile& tol = {}, FormMode mode = FormMode::Strict);

/// Lower-level entry point on an already assembled pencil (g Hermitian, b ⪰ 0).
/// `s`, when given, restricts x to that subspace; the witness is lifted back.
BoundsReport pencil_bounds(const ComplexMatrix& g, const ComplexMatrix& b, const ToleranceProfile& tol,
                           const Subspace* s = nullptr);

enum class BoundSide { Lower, Upper };
std::string_view to_string(BoundSide side) noexcept;

struct BoundViolation {
    BoundSide side = BoundSide::Lower;
    Vector witness;
    double lower_term = 0.0; ///< α xᴴBx
    double form = 0.0;       ///< xᴴGx
    double upper_term = 0.0; ///< β xᴴx
    double margin = 0.0;     ///< amount by which the violated side fails (> 0)
};

struct VerifyResult {
    bool holds = true;
    std::vector<BoundViolation> violations; ///< lower side first
    double lower_slack = 0.0; ///< λ_min(G − αB)
    double upper_slack = 0.0; ///< β − λ_max(G)
};

/// Checks α‖Kᴴx‖² <= Σ_j ⟨x, x_j⟩⟨y_j, x⟩ <= β‖x‖² for all x. Pass the
/// identity for plain biframes. Throws NonHermitianForm, InvalidArgument.
VerifyResult verify_claimed_bounds(const VectorPairSystem& pair, const ComplexMatrix& k, double alpha, double beta,
                                   const ToleranceProfile& tol = {}, FormMode mode = FormMode::Strict);

} // namespace kbiframe
