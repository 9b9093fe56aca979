#pragma once

#include <optional>
#include <vector>

#include "kbiframe/linalg.hpp"

namespace kbiframe {

/// Reduced minimum modulus: the smallest singular value above the rank
/// cutoff, or +infinity for the zero operator.
double gamma(const ComplexMatrix& t, const ToleranceProfile& tol = {});

struct EpEvidence {
    bool is_ep = false;
    Subspace range;         ///< R(T)
    Subspace adjoint_range; ///< R(Tᴴ)
};

/// R(T) = R(Tᴴ).
EpEvidence ep_evidence(const ComplexMatrix& t, const ToleranceProfile& tol = {});
bool is_ep(const ComplexMatrix& t, const ToleranceProfile& tol = {});

/// ‖TTᴴ − TᴴT‖_F <= eq_rel * ‖T‖_F².
bool is_normal(const ComplexMatrix& t, const ToleranceProfile& tol = {});

/// R∞(T): the power range R(Tᵏ) at the first k where its dimension stops
/// dropping, obtained by repeatedly applying T to an orthonormal basis.
Subspace generalized_range(const ComplexMatrix& t, const ToleranceProfile& tol = {});

struct SemiRegularEvidence {
    bool is_semi_regular = false;
    Subspace kernel;
    Subspace generalized_range;
    /// chain[n-1] reports N(T) ⊆ R(Tⁿ) for n = 1 .. dim.
    std::vector<bool> chain;
};

SemiRegularEvidence semi_regular_evidence(const ComplexMatrix& t, const ToleranceProfile& tol = {});
bool is_semi_regular(const ComplexMatrix& t, const ToleranceProfile& tol = {});

/// Outcome of the range-inclusion test R(T) ⊆ R(G).
struct DouglasResult {
    std::optional<double> alpha; ///< largest α with α TTᴴ ⪯ GGᴴ, when the inclusion holds
    Vector witness;              ///< x with ‖Gᴴx‖ ≈ 0 < ‖Tᴴx‖, when it does not
    double witness_t_norm = 0.0; ///< ‖Tᴴx‖
    double witness_g_norm = 0.0; ///< ‖Gᴴx‖
};

DouglasResult douglas_alpha(const ComplexMatrix& t, const ComplexMatrix& g, const ToleranceProfile& tol = {});

/// φ(K) = (K†)ᴴ.
ComplexMatrix phi(const ComplexMatrix& k, const ToleranceProfile& tol = {});

/// ‖AB − BA‖_F <= eq_rel * ‖A‖_F ‖B‖_F. Throws DimensionMismatch.
bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceProfile& tol = {});

struct OperatorProfile {
    double gamma = 0.0; ///< +infinity for the zero operator
    std::size_t rank = 0;
    bool is_ep = false;
    bool is_normal = false;
    bool is_semi_regular = false;
    bool is_invertible = false;
    bool closed_range = true; ///< always true in finite dimension; gamma quantifies it
    double penrose_residual = 0.0;
    std::vector<bool> semi_regular_chain;
};

OperatorProfile profile(const ComplexMatrix& t, const ToleranceProfile& tol = {});

} // namespace kbiframe
