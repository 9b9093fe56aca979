#include "kbiframe/operator_analysis.hpp"

#include <cmath>
#include <limits>

#include "kbiframe/error.hpp"

namespace kbiframe {

namespace {

void require_square(const ComplexMatrix& t, const char* what) {
    if (!t.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": operator must be square");
    }
}

} // namespace

double gamma(const ComplexMatrix& t, const ToleranceProfile& tol) {
    const auto f = svd(t);
    const std::size_t r = rank(f, tol);
    if (r == 0) return std::numeric_limits<double>::infinity();
    return f.sigma[r - 1];
}

EpEvidence ep_evidence(const ComplexMatrix& t, const ToleranceProfile& tol) {
    require_square(t, "is_ep");
    const auto f = svd(t);
    EpEvidence ev;
    ev.range = range_basis(f, t.rows(), tol);
    // R(Tᴴ) = N(T)^⊥ is spanned by the leading right singular vectors.
    const std::size_t r = rank(f, tol);
    ev.adjoint_range = {t.cols(), f.v.columns(0, r), ev.range.tol};
    ev.is_ep = subspace_eq(ev.range, ev.adjoint_range, tol);
    return ev;
}

bool is_ep(const ComplexMatrix& t, const ToleranceProfile& tol) { return ep_evidence(t, tol).is_ep; }

bool is_normal(const ComplexMatrix& t, const ToleranceProfile& tol) {
    require_square(t, "is_normal");
    const ComplexMatrix th = t.adjoint();
    const double defect = (t * th - th * t).frobenius_norm();
    const double f = t.frobenius_norm();
    return defect <= tol.eq_abs(f * f);
}

Subspace generalized_range(const ComplexMatrix& t, const ToleranceProfile& tol) {
    require_square(t, "generalized_range");
    const std::size_t n = t.rows();
    Subspace current = Subspace::full(n);
    for (std::size_t k = 0; k <= n; ++k) {
        if (current.trivial()) return current;
        Subspace next = span_of(t * current.basis, tol);
        next.tol += current.tol;
        if (next.dim() == current.dim()) return current;
        current = std::move(next);
    }
    return current;
}

SemiRegularEvidence semi_regular_evidence(const ComplexMatrix& t, const ToleranceProfile& tol) {
    require_square(t, "is_semi_regular");
    const std::size_t n = t.rows();
    SemiRegularEvidence ev;
    ev.kernel = null_basis(t, tol);
    ev.generalized_range = generalized_range(t, tol);
    ev.is_semi_regular = subspace_leq(ev.kernel, ev.generalized_range, tol);

    ev.chain.reserve(n);
    Subspace power = Subspace::full(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Subspace next = power.trivial() ? power : span_of(t * power.basis, tol);
        next.tol += power.tol;
        power = std::move(next);
        ev.chain.push_back(subspace_leq(ev.kernel, power, tol));
    }
    return ev;
}

bool is_semi_regular(const ComplexMatrix& t, const ToleranceProfile& tol) {
    return semi_regular_evidence(t, tol).is_semi_regular;
}

DouglasResult douglas_alpha(const ComplexMatrix& t, const ComplexMatrix& g, const ToleranceProfile& tol) {
    if (t.rows() != g.rows() || t.cols() != g.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "douglas_alpha: T and G must have the same shape");
    }
    const auto gf = svd(g);
    const Subspace range_t = range_basis(t, tol);
    const Subspace range_g = range_basis(gf, g.rows(), tol);

    DouglasResult out;
    if (subspace_leq(range_t, range_g, tol)) {
        const ComplexMatrix m = pinv(gf, tol) * t;
        const double s = spectral_norm(m);
        out.alpha = s > 0.0 ? 1.0 / (s * s) : std::numeric_limits<double>::infinity();
        return out;
    }

    // x in N(Gᴴ) = R(G)^⊥ maximizing ‖Tᴴx‖.
    const std::size_t r = range_g.dim();
    const ComplexMatrix complement = gf.u.columns(r, g.rows() - r);
    const ComplexMatrix reduced = t.adjoint() * complement;
    const auto rf = svd(reduced);
    out.witness = complement * rf.v.column(0);
    out.witness_t_norm = norm(t.adjoint() * out.witness);
    out.witness_g_norm = norm(g.adjoint() * out.witness);
    return out;
}

ComplexMatrix phi(const ComplexMatrix& k, const ToleranceProfile& tol) {
    require_square(k, "phi");
    return pinv(k, tol).adjoint();
}

bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceProfile& tol) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "commutes: operands must be square of equal size");
    }
    const double defect = (a * b - b * a).frobenius_norm();
    return defect <= tol.eq_abs(a.frobenius_norm() * b.frobenius_norm());
}

OperatorProfile profile(const ComplexMatrix& t, const ToleranceProfile& tol) {
    require_square(t, "profile");
    const auto f = svd(t);
    OperatorProfile p;
    p.rank = rank(f, tol);
    p.gamma = p.rank == 0 ? std::numeric_limits<double>::infinity() : f.sigma[p.rank - 1];
    p.is_invertible = p.rank == t.rows();
    p.is_ep = is_ep(t, tol);
    p.is_normal = is_normal(t, tol);
    const auto sr = semi_regular_evidence(t, tol);
    p.is_semi_regular = sr.is_semi_regular;
    p.semi_regular_chain = sr.chain;
    p.penrose_residual = penrose_residuals(t, pinv(f, tol)).max();
    return p;
}

} // namespace kbiframe
