#include "kbiframe/biframe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kbiframe/error.hpp"

namespace kbiframe {

namespace {

// Bisection probes accept λ_min(G − αB) down to −kProbeRel * pencil scale,
// i.e. eigenvalue roundoff, not the coarser psd tolerance.
constexpr double kProbeRel = 1e-13;
constexpr double kBisectionWidth = 1e-13;
constexpr int kMaxBisectionSteps = 400;

struct CheckedForm {
    ComplexMatrix g;
    double defect = 0.0;
};

/// Pair operator with the Hermitian gate applied.
CheckedForm checked_form(const VectorPairSystem& pair, const ToleranceProfile& tol, FormMode mode) {
    ComplexMatrix g = pair_operator(pair);
    const double defect = hermitian_defect(g);
    if (defect > tol.eq_abs(g.scale())) {
        if (mode == FormMode::HermitianPart) return {hermitian_part(g), defect};
        // Im(xᴴGx) = xᴴ H x with H = (G − Gᴴ) / (2i); its extreme eigenvector is the witness.
        ComplexMatrix skew = g - g.adjoint();
        skew *= Complex(0.0, -0.5);
        const auto e = herm_eig(hermitian_part(skew), tol);
        const std::size_t idx = std::abs(e.values.front()) > std::abs(e.values.back()) ? 0 : e.values.size() - 1;
        throw Error(ErrorKind::NonHermitianForm,
                    "pair operator is not Hermitian (‖G − Gᴴ‖ = " + std::to_string(defect) +
                        "); the middle sum takes non-real values",
                    defect, e.vectors.column(idx));
    }
    return {hermitian_part(g), defect};
}

double quadratic(const ComplexMatrix& m, std::span<const Complex> x) { return inner(m * x, x).real(); }

void require_operator(const VectorPairSystem& pair, const ComplexMatrix& k) {
    if (!k.is_square() || k.rows() != pair.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "K must be a square matrix of the pair's dimension");
    }
    if (k.max_abs() == 0.0) {
        throw Error(ErrorKind::DegenerateK, "K = 0: the lower inequality is vacuous");
    }
}

double spread(const std::vector<double>& values) {
    const double s = std::max(std::abs(values.front()), std::abs(values.back()));
    return s > 0.0 ? s : 1.0;
}

} // namespace

VectorPairSystem::VectorPairSystem(std::vector<Vector> x, std::vector<Vector> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "pair system must contain at least one vector pair");
    }
    if (x_.size() != y_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "x and y families have different lengths");
    }
    dim_ = x_.front().size();
    if (dim_ == 0) {
        throw Error(ErrorKind::InvalidArgument, "vectors must have positive length");
    }
    for (const auto* family : {&x_, &y_}) {
        for (const auto& v : *family) {
            if (v.size() != dim_) {
                throw Error(ErrorKind::DimensionMismatch, "vectors of a pair system must share one length");
            }
            for (const auto& z : v) {
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                    throw Error(ErrorKind::InvalidArgument, "non-finite vector entry");
                }
            }
        }
    }
}

VectorPairSystem VectorPairSystem::from_matrices(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "x and y matrices must have the same shape");
    }
    std::vector<Vector> xs;
    std::vector<Vector> ys;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        xs.push_back(x.column(j));
        ys.push_back(y.column(j));
    }
    return {std::move(xs), std::move(ys)};
}

VectorPairSystem VectorPairSystem::mapped(const ComplexMatrix& op) const {
    if (!op.is_square() || op.rows() != dim_) {
        throw Error(ErrorKind::DimensionMismatch, "operator dimension does not match the pair system");
    }
    std::vector<Vector> xs;
    std::vector<Vector> ys;
    xs.reserve(x_.size());
    ys.reserve(y_.size());
    for (std::size_t j = 0; j < x_.size(); ++j) {
        xs.push_back(op * x_[j]);
        ys.push_back(op * y_[j]);
    }
    return {std::move(xs), std::move(ys)};
}

ComplexMatrix pair_operator(const VectorPairSystem& pair) {
    const std::size_t n = pair.dim();
    ComplexMatrix g(n, n);
    for (std::size_t j = 0; j < pair.count(); ++j) {
        const auto& xj = pair.x()[j];
        const auto& yj = pair.y()[j];
        for (std::size_t r = 0; r < n; ++r) {
            if (yj[r] == Complex{}) continue;
            for (std::size_t c = 0; c < n; ++c) g(r, c) += yj[r] * std::conj(xj[c]);
        }
    }
    return g;
}

Complex pair_form(const VectorPairSystem& pair, std::span<const Complex> x) {
    Complex s{};
    for (std::size_t j = 0; j < pair.count(); ++j) s += inner(x, pair.x()[j]) * inner(pair.y()[j], x);
    return s;
}

BoundsReport biframe_bounds(const VectorPairSystem& pair, const ToleranceProfile& tol, FormMode mode) {
    const auto form = checked_form(pair, tol, mode);
    const auto e = herm_eig(form.g, tol);

    BoundsReport report;
    report.tol_used = tol;
    report.hermitian_defect = form.defect;
    report.lambda_min_form = e.values.front();
    report.beta_opt = e.values.back();
    report.alpha_sup = e.values.front();
    report.feasible = e.values.front() > tol.psd_abs(spread(e.values));
    if (report.feasible) {
        report.alpha_opt = e.values.front();
    } else {
        report.witness = e.vectors.column(0);
        report.witness_form = e.values.front();
        report.witness_k_norm2 = norm2(*report.witness);
    }
    return report;
}

BoundsReport pencil_bounds(const ComplexMatrix& g, const ComplexMatrix& b, const ToleranceProfile& tol,
                           const Subspace* s) {
    ComplexMatrix gs = g;
    ComplexMatrix bs = b;
    if (s != nullptr) {
        if (s->trivial()) {
            throw Error(ErrorKind::TrivialSubspace, "bounds on the zero subspace are undefined");
        }
        if (s->ambient_dim != g.rows()) {
            throw Error(ErrorKind::DimensionMismatch, "subspace ambient dimension does not match the pair");
        }
        const ComplexMatrix qh = s->basis.adjoint();
        gs = hermitian_part(qh * g * s->basis);
        bs = hermitian_part(qh * b * s->basis);
    }

    const auto eg = herm_eig(gs, tol);
    const auto eb = herm_eig(bs, tol);
    const double b_max = eb.values.back();
    if (b_max <= tol.rank_rel * b.scale() || b_max <= 0.0) {
        throw Error(ErrorKind::DegenerateK, "KKᴴ vanishes on the domain: the lower inequality is vacuous");
    }
    double b_min_pos = b_max;
    for (double v : eb.values) {
        if (v > tol.rank_rel * b_max) {
            b_min_pos = v;
            break;
        }
    }

    BoundsReport report;
    report.tol_used = tol;
    report.beta_opt = eg.values.back();
    report.lambda_min_form = eg.values.front();
    const double g_scale = spread(eg.values);
    const double psd = tol.psd_abs(g_scale);

    Vector bad_vector;
    auto probe = [&](double alpha) {
        ComplexMatrix m = gs;
        if (alpha != 0.0) m -= Complex(alpha) * bs;
        const auto e = herm_eig(hermitian_part(m), tol);
        const double threshold = kProbeRel * std::max(g_scale, alpha * b_max);
        ++report.bisection_steps;
        if (e.values.front() >= -threshold) return true;
        bad_vector = e.vectors.column(0);
        return false;
    };

    double lo = 0.0;
    if (probe(0.0)) {
        double hi = (std::max(report.beta_opt, 0.0) + g_scale) / b_min_pos;
        bool hi_probed = false;
        for (int step = 0; step < kMaxBisectionSteps; ++step) {
            if (hi - lo <= kBisectionWidth * hi) break;
            if (hi * b_max <= 1e-3 * psd) break; // cannot become feasible any more
            const double mid = 0.5 * (lo + hi);
            if (probe(mid)) {
                lo = mid;
            } else {
                hi = mid;
                hi_probed = true;
            }
        }
        if (!hi_probed) probe(hi);
    }
    report.alpha_sup = lo;
    report.feasible = report.lambda_min_form >= -psd && lo * b_max > psd;

    if (report.feasible) {
        report.alpha_opt = lo;
        return report;
    }
    Vector w = bad_vector;
    if (s != nullptr) w = s->basis * w;
    report.witness_form = quadratic(g, w);
    report.witness_k_norm2 = quadratic(b, w);
    report.witness = std::move(w);
    return report;
}

BoundsReport k_biframe_bounds(const VectorPairSystem& pair, const ComplexMatrix& k, const ToleranceProfile& tol,
                              FormMode mode) {
    require_operator(pair, k);
    const auto form = checked_form(pair, tol, mode);
    auto report = pencil_bounds(form.g, hermitian_part(k * k.adjoint()), tol);
    report.hermitian_defect = form.defect;
    return report;
}

BoundsReport k_biframe_bounds_on_subspace(const VectorPairSystem& pair, const ComplexMatrix& k, const Subspace& s,
                                          const ToleranceProfile& tol, FormMode mode) {
    require_operator(pair, k);
    const auto form = checked_form(pair, tol, mode);
    auto report = pencil_bounds(form.g, hermitian_part(k * k.adjoint()), tol, &s);
    report.hermitian_defect = form.defect;
    return report;
}

std::string_view to_string(BoundSide side) noexcept { return side == BoundSide::Lower ? "lower" : "upper"; }

VerifyResult verify_claimed_bounds(const VectorPairSystem& pair, const ComplexMatrix& k, double alpha, double beta,
                                   const ToleranceProfile& tol, FormMode mode) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw Error(ErrorKind::InvalidArgument, "claimed bounds must be positive and finite");
    }
    require_operator(pair, k);
    const auto form = checked_form(pair, tol, mode);
    const ComplexMatrix b = hermitian_part(k * k.adjoint());
    const auto eg = herm_eig(form.g, tol);
    const auto eb = herm_eig(b, tol);
    ComplexMatrix lower = form.g;
    lower -= Complex(alpha) * b;
    const auto el = herm_eig(hermitian_part(lower), tol);

    const double scale = std::max({spread(eg.values), alpha * eb.values.back(), beta});
    const double psd = tol.psd_abs(scale);

    VerifyResult out;
    out.lower_slack = el.values.front();
    out.upper_slack = beta - eg.values.back();

    auto record = [&](BoundSide side, Vector x) {
        BoundViolation v;
        v.side = side;
        v.form = quadratic(form.g, x);
        v.lower_term = alpha * quadratic(b, x);
        v.upper_term = beta * norm2(x);
        v.margin = side == BoundSide::Lower ? v.lower_term - v.form : v.form - v.upper_term;
        v.witness = std::move(x);
        out.violations.push_back(std::move(v));
    };
    if (out.lower_slack < -psd) record(BoundSide::Lower, el.vectors.column(0));
    if (out.upper_slack < -psd) record(BoundSide::Upper, eg.vectors.column(eg.values.size() - 1));
    out.holds = out.violations.empty();
    return out;
}

} // namespace kbiframe
