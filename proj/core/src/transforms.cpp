#include "kbiframe/transforms.hpp"

#include <cmath>
#include <sstream>

#include "kbiframe/error.hpp"
#include "kbiframe/operator_analysis.hpp"

namespace kbiframe {

namespace {

/// Bounds of `pair` against K; throws NotAKBiframe with the witness when infeasible.
BoundsReport require_k_biframe(const VectorPairSystem& pair, const ComplexMatrix& k, const ToleranceProfile& tol) {
    auto report = k_biframe_bounds(pair, k, tol);
    if (!report.feasible) {
        throw Error(ErrorKind::NotAKBiframe, "input pair is not a K-biframe", report.alpha_sup,
                    report.witness.value_or(Vector{}));
    }
    return report;
}

void require_same_dim(const VectorPairSystem& pair, const ComplexMatrix& op, const char* name) {
    if (!op.is_square() || op.rows() != pair.dim()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(name) + " must be square of the pair's dimension");
    }
}

std::string describe(const char* what, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << value;
    return os.str();
}

} // namespace

std::string_view to_string(TransformKind kind) noexcept {
    switch (kind) {
    case TransformKind::InnerInverse: return "kl";
    case TransformKind::Unitary: return "unitary";
    case TransformKind::Phi: return "phi";
    case TransformKind::Shift: return "shift";
    case TransformKind::Projection: return "projection";
    case TransformKind::PhiMembership: return "phi-membership";
    }
    return "unknown";
}

bool is_unitary(const ComplexMatrix& u, const ToleranceProfile& tol) {
    if (!u.is_square()) return false;
    const auto n = static_cast<double>(u.rows());
    return (u * u.adjoint() - ComplexMatrix::identity(u.rows())).frobenius_norm() <= tol.eq_abs(std::sqrt(n));
}

TransformResult kl_transform(const VectorPairSystem& pair, const ComplexMatrix& k, const ComplexMatrix& l,
                             const ToleranceProfile& tol) {
    require_same_dim(pair, k, "K");
    require_same_dim(pair, l, "L");
    const double kn = k.frobenius_norm();
    const double residual = (k * l * k - k).frobenius_norm();
    if (residual > tol.eq_abs(std::max(kn, kn * kn * l.frobenius_norm()))) {
        throw Error(ErrorKind::InnerInverseViolated, describe("‖KLK − K‖ = ", residual), residual, {});
    }

    TransformResult out;
    out.kind = TransformKind::InnerInverse;
    out.input_bounds = require_k_biframe(pair, k, tol);
    const ComplexMatrix kl = k * l;
    out.pair = pair.mapped(kl);
    out.target_operator = k;
    out.domain = Subspace::full(pair.dim());
    const double s = spectral_norm(kl);
    out.upper_bound_factor = s * s;
    out.output_bounds = k_biframe_bounds(out.pair, k, tol);
    out.provenance = "kl: x_j -> (KL) x_j, y_j -> (KL) y_j";
    return out;
}

TransformResult unitary_conjugate(const VectorPairSystem& pair, const ComplexMatrix& k, const ComplexMatrix& u,
                                  const ToleranceProfile& tol) {
    require_same_dim(pair, k, "K");
    require_same_dim(pair, u, "U");
    if (!is_unitary(u, tol)) {
        throw Error(ErrorKind::NotUnitary, "U is not unitary");
    }

    TransformResult out;
    out.kind = TransformKind::Unitary;
    out.input_bounds = require_k_biframe(pair, k, tol);
    const ComplexMatrix uh = u.adjoint();
    out.pair = pair.mapped(u);
    out.target_operator = u * k * uh;
    out.domain = Subspace::full(pair.dim());
    out.output_bounds = k_biframe_bounds(out.pair, out.target_operator, tol);

    const ComplexMatrix phi_k = phi(k, tol);
    const ComplexMatrix conjugated_phi = u * phi_k * uh;
    out.phi_target_bounds = k_biframe_bounds(out.pair, conjugated_phi, tol);
    out.phi_identity_residual = (phi(out.target_operator, tol) - conjugated_phi).frobenius_norm();
    out.provenance = "unitary: x_j -> U x_j, y_j -> U y_j; target U K U^H (also U phi(K) U^H)";
    return out;
}

TransformResult phi_transform(const VectorPairSystem& pair, const ComplexMatrix& t, const ComplexMatrix& k,
                              const ToleranceProfile& tol) {
    require_same_dim(pair, k, "K");
    require_same_dim(pair, t, "T");
    if (!is_ep(t, tol)) {
        throw Error(ErrorKind::NotEP, "T is not EP: R(T) != R(T^H)");
    }
    if (!commutes(t.adjoint(), k, tol)) {
        throw Error(ErrorKind::HypothesisViolated, "T^H K != K T^H");
    }

    TransformResult out;
    out.kind = TransformKind::Phi;
    out.input_bounds = require_k_biframe(pair, k, tol);
    const ComplexMatrix phi_t = phi(t, tol);
    out.pair = pair.mapped(phi_t);
    out.target_operator = k;
    out.domain = range_basis(t, tol);
    const double pinv_norm = spectral_norm(phi_t);
    out.upper_bound_factor = pinv_norm * pinv_norm;
    out.output_bounds = k_biframe_bounds_on_subspace(out.pair, k, out.domain, tol);
    out.provenance = "phi: x_j -> phi(T) x_j, y_j -> phi(T) y_j on R(T)";
    return out;
}

TransformResult lambda_shift_transform(const VectorPairSystem& pair, const ComplexMatrix& t, const ComplexMatrix& k,
                                       Complex lambda, const ToleranceProfile& tol) {
    require_same_dim(pair, k, "K");
    require_same_dim(pair, t, "T");
    if (!commutes(k, t, tol)) {
        throw Error(ErrorKind::HypothesisViolated, "KT != TK");
    }
    if (!is_semi_regular(t, tol)) {
        throw Error(ErrorKind::HypothesisViolated, "T is not semi-regular");
    }
    const double g = gamma(t, tol);
    if (!(std::abs(lambda) < g)) {
        throw Error(ErrorKind::HypothesisViolated, describe("|lambda| >= gamma(T) = ", g), std::abs(lambda), {});
    }

    TransformResult out;
    out.kind = TransformKind::Shift;
    out.input_bounds = require_k_biframe(pair, k, tol);
    ComplexMatrix shifted = t;
    shifted -= lambda * ComplexMatrix::identity(t.rows());
    out.pair = pair.mapped(shifted);
    out.target_operator = k;
    out.domain = generalized_range(t, tol);
    const double s = spectral_norm(shifted);
    out.upper_bound_factor = s * s;
    out.output_bounds = k_biframe_bounds_on_subspace(out.pair, k, out.domain, tol);
    std::ostringstream os;
    os.precision(17);
    os << "shift: x_j -> (T - lambda I) x_j with lambda = (" << lambda.real() << ", " << lambda.imag()
       << "); domain R_inf(T)";
    out.provenance = os.str();
    return out;
}

MembershipResult projection_membership(const VectorPairSystem& pair, const ComplexMatrix& k,
                                       const ToleranceProfile& tol) {
    require_same_dim(pair, k, "K");
    MembershipResult out;
    out.input_bounds = require_k_biframe(pair, k, tol);
    out.operator_used = projector(range_basis(k, tol));
    out.bounds = k_biframe_bounds(pair, out.operator_used, tol);
    // ‖Kᴴx‖ >= γ(K) ‖πx‖. The weaker-looking α/‖K‖² is not valid when γ(K)‖K‖ < 1.
    const double g = gamma(k, tol);
    out.guaranteed_alpha = *out.input_bounds.alpha_opt * g * g;
    return out;
}

MembershipResult phi_membership(const VectorPairSystem& pair, const ComplexMatrix& k, const ToleranceProfile& tol) {
    require_same_dim(pair, k, "K");
    MembershipResult out;
    out.input_bounds = require_k_biframe(pair, k, tol);
    out.operator_used = phi(k, tol);
    out.bounds = k_biframe_bounds(pair, out.operator_used, tol);
    // ‖K†x‖ <= ‖Kᴴx‖ / γ(K)², so α γ(K)⁴ is a valid lower bound against φ(K).
    const double g = gamma(k, tol);
    out.guaranteed_alpha = *out.input_bounds.alpha_opt * g * g * g * g;
    return out;
}

} // namespace kbiframe
