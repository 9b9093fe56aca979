#include "kbiframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kbiframe/error.hpp"

namespace kbiframe {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxEigSweeps = 100;
constexpr int kMaxSvdSweeps = 80;
constexpr double kPhaseFloor = 1e-8;

/// Unitary 2x2 Jacobi rotation J = diag(1, w) * [[c, s], [-s, c]] that
/// diagonalizes the Hermitian block [[app, apq], [conj(apq), aqq]].
struct Rotation {
    double c = 1.0;
    double s = 0.0;
    Complex w{1.0, 0.0};
    double t = 0.0;
};

Rotation make_rotation(double app, double aqq, Complex apq) {
    const double mag = std::abs(apq);
    Rotation r;
    r.w = std::conj(apq) / mag;
    const double tau = (aqq - app) / (2.0 * mag);
    const double sign = tau >= 0.0 ? 1.0 : -1.0;
    r.t = sign / (std::abs(tau) + std::hypot(1.0, tau));
    r.c = 1.0 / std::hypot(1.0, r.t);
    r.s = r.t * r.c;
    return r;
}

/// M <- M J on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const Complex mp = m(i, p);
        const Complex mq = r.w * m(i, q);
        m(i, p) = r.c * mp - r.s * mq;
        m(i, q) = r.s * mp + r.c * mq;
    }
}

/// M <- Jᴴ M on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
    const Complex wc = std::conj(r.w);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Complex mp = m(p, j);
        const Complex mq = wc * m(q, j);
        m(p, j) = r.c * mp - r.s * mq;
        m(q, j) = r.s * mp + r.c * mq;
    }
}

void normalize_phase(ComplexMatrix& v, std::size_t col) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double mag = std::abs(v(i, col));
        if (mag > kPhaseFloor) {
            const Complex phase = std::conj(v(i, col)) / mag;
            for (std::size_t k = 0; k < v.rows(); ++k) v(k, col) *= phase;
            v(i, col) = Complex(v(i, col).real(), 0.0);
            return;
        }
    }
}

/// Extends the orthonormal columns `keep` of an m x m matrix to a full unitary
/// basis, filling the columns listed in `missing`.
void complete_basis(ComplexMatrix& u, const std::vector<std::size_t>& keep,
                    const std::vector<std::size_t>& missing) {
    const std::size_t m = u.rows();
    std::vector<Vector> basis;
    basis.reserve(m);
    for (auto k : keep) basis.push_back(u.column(k));

    auto orthogonalize = [&](Vector& v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const Complex proj = inner(v, b);
                for (std::size_t i = 0; i < m; ++i) v[i] -= proj * b[i];
            }
        }
    };

    for (auto col : missing) {
        Vector best;
        double best_norm = -1.0;
        for (std::size_t e = 0; e < m; ++e) {
            Vector cand(m, Complex{});
            cand[e] = 1.0;
            orthogonalize(cand);
            const double nrm = norm(cand);
            if (nrm > best_norm + 1e-12) {
                best_norm = nrm;
                best = std::move(cand);
            }
        }
        for (auto& z : best) z /= best_norm;
        u.set_column(col, best);
        basis.push_back(std::move(best));
    }
}

/// Angular error estimate for the invariant subspace split at `r` (Wedin-style
/// eps * sigma_1 / gap).
double split_tolerance(const std::vector<double>& sigma, std::size_t r) {
    if (sigma.empty() || sigma.front() == 0.0) return 100.0 * kEps;
    const double below = r < sigma.size() ? sigma[r] : 0.0;
    const double above = r > 0 ? sigma[r - 1] : std::numeric_limits<double>::infinity();
    const double gap = std::max(above - below, std::numeric_limits<double>::min());
    return std::min(1.0, 100.0 * kEps * sigma.front() / gap);
}

} // namespace

HermitianEigen herm_eig(const ComplexMatrix& a, const ToleranceProfile& tol) {
    if (!a.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "herm_eig: matrix is not square");
    }
    if (!a.all_finite()) {
        throw Error(ErrorKind::InvalidArgument, "herm_eig: non-finite entries");
    }
    const double defect = hermitian_defect(a);
    if (defect > tol.eq_abs(a.scale())) {
        throw Error(ErrorKind::NotHermitian, "herm_eig: ‖A − Aᴴ‖ = " + std::to_string(defect));
    }

    const std::size_t n = a.rows();
    ComplexMatrix w = hermitian_part(a);
    for (std::size_t i = 0; i < n; ++i) w(i, i) = Complex(w(i, i).real(), 0.0);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = w.frobenius_norm();

    bool converged = (scale == 0.0);
    for (int sweep = 0; sweep < kMaxEigSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = w(p, q);
                const double mag = std::abs(apq);
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                if (mag == 0.0 || mag <= 0.5 * kEps * std::sqrt(std::abs(app * aqq)) || mag <= 1e-19 * scale) {
                    continue;
                }
                rotated = true;
                const Rotation r = make_rotation(app, aqq, apq);
                rotate_columns(w, p, q, r);
                rotate_rows(w, p, q, r);
                rotate_columns(v, p, q, r);
                w(p, q) = Complex{};
                w(q, p) = Complex{};
                w(p, p) = app - r.t * mag;
                w(q, q) = aqq + r.t * mag;
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence, "herm_eig: Jacobi sweeps exhausted");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = w(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
        normalize_phase(out.vectors, k);
    }
    return out;
}

SingularValueDecomposition svd(const ComplexMatrix& a) {
    if (!a.all_finite()) {
        throw Error(ErrorKind::InvalidArgument, "svd: non-finite entries");
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n) {
        auto f = svd(a.adjoint());
        return {std::move(f.v), std::move(f.sigma), std::move(f.u)};
    }

    // Power-of-two equilibration keeps the squared column norms clear of
    // underflow and overflow; it is exact and undone on sigma below.
    int exponent = 0;
    const double peak = a.max_abs();
    if (peak > 0.0) (void)std::frexp(peak, &exponent);
    ComplexMatrix w = a;
    if (exponent != 0) w *= std::ldexp(1.0, -exponent);
    ComplexMatrix v = ComplexMatrix::identity(n);
    // Columns count as orthogonal once |<a_p, a_q>| <= m eps |a_p||a_q|; a tighter
    // threshold lets rounding keep re-triggering rotations.
    const double off_tol = static_cast<double>(m) * kEps;
    // Columns below eps ‖W‖_F are roundoff; rotating them against a parallel
    // column never reduces the relative inner product.
    const double w_norm = w.frobenius_norm();
    const double negligible = kEps * kEps * w_norm * w_norm;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSvdSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma{};
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    gamma += std::conj(w(i, p)) * w(i, q);
                }
                const double mag = std::abs(gamma);
                if (mag == 0.0 || std::min(alpha, beta) <= negligible ||
                    mag <= off_tol * std::sqrt(alpha) * std::sqrt(beta)) {
                    continue;
                }
                rotated = true;
                const Rotation r = make_rotation(alpha, beta, gamma);
                rotate_columns(w, p, q, r);
                rotate_columns(v, p, q, r);
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence, "svd: Jacobi sweeps exhausted");
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = norm(w.column(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    SingularValueDecomposition out;
    out.sigma.resize(n);
    out.u = ComplexMatrix(m, m);
    out.v = ComplexMatrix(n, n);
    const double sigma_max = n > 0 ? norms[order[0]] : 0.0;
    const double floor = sigma_max * kEps * static_cast<double>(std::max(m, n));

    std::vector<std::size_t> keep;
    std::vector<std::size_t> missing;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = std::ldexp(norms[j], exponent);
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
        if (norms[j] > floor && norms[j] > 0.0) {
            for (std::size_t i = 0; i < m; ++i) out.u(i, k) = w(i, j) / norms[j];
            keep.push_back(k);
        } else {
            missing.push_back(k);
        }
    }
    for (std::size_t k = n; k < m; ++k) missing.push_back(k);
    complete_basis(out.u, keep, missing);
    return out;
}

std::size_t rank(const SingularValueDecomposition& f, const ToleranceProfile& tol) {
    if (f.sigma.empty() || f.sigma.front() == 0.0) return 0;
    const double cutoff = tol.rank_rel * f.sigma.front();
    return static_cast<std::size_t>(
        std::count_if(f.sigma.begin(), f.sigma.end(), [&](double s) { return s > cutoff; }));
}

std::size_t rank(const ComplexMatrix& a, const ToleranceProfile& tol) { return rank(svd(a), tol); }

double spectral_norm(const ComplexMatrix& a) {
    if (a.empty()) return 0.0;
    const auto f = svd(a);
    return f.sigma.empty() ? 0.0 : f.sigma.front();
}

ComplexMatrix pinv(const SingularValueDecomposition& f, const ToleranceProfile& tol) {
    const std::size_t m = f.u.rows();
    const std::size_t n = f.v.rows();
    const std::size_t r = rank(f, tol);
    ComplexMatrix out(n, m);
    for (std::size_t k = 0; k < r; ++k) {
        const double inv = 1.0 / f.sigma[k];
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = f.v(i, k) * inv;
            for (std::size_t j = 0; j < m; ++j) out(i, j) += vik * std::conj(f.u(j, k));
        }
    }
    return out;
}

ComplexMatrix pinv(const ComplexMatrix& a, const ToleranceProfile& tol) { return pinv(svd(a), tol); }

double PenroseResiduals::max() const noexcept { return std::max({a_pinv_a, pinv_a_pinv, left_sym, right_sym}); }

PenroseResiduals penrose_residuals(const ComplexMatrix& a, const ComplexMatrix& a_pinv) {
    const ComplexMatrix aap = a * a_pinv;
    const ComplexMatrix apa = a_pinv * a;
    PenroseResiduals r;
    r.a_pinv_a = (aap * a - a).frobenius_norm() / a.scale();
    r.pinv_a_pinv = (apa * a_pinv - a_pinv).frobenius_norm() / a_pinv.scale();
    r.left_sym = hermitian_defect(aap);
    r.right_sym = hermitian_defect(apa);
    return r;
}

Subspace Subspace::full(std::size_t n) { return {n, ComplexMatrix::identity(n), 0.0}; }
Subspace Subspace::zero(std::size_t n) { return {n, ComplexMatrix(n, 0), 0.0}; }

Subspace range_basis(const SingularValueDecomposition& f, std::size_t rows, const ToleranceProfile& tol) {
    const std::size_t r = rank(f, tol);
    return {rows, f.u.columns(0, r), split_tolerance(f.sigma, r)};
}

Subspace null_basis(const SingularValueDecomposition& f, std::size_t cols, const ToleranceProfile& tol) {
    const std::size_t r = rank(f, tol);
    return {cols, f.v.columns(r, cols - r), split_tolerance(f.sigma, r)};
}

Subspace range_basis(const ComplexMatrix& a, const ToleranceProfile& tol) {
    return range_basis(svd(a), a.rows(), tol);
}

Subspace null_basis(const ComplexMatrix& a, const ToleranceProfile& tol) {
    return null_basis(svd(a), a.cols(), tol);
}

Subspace span_of(const ComplexMatrix& columns, const ToleranceProfile& tol) {
    if (columns.cols() == 0) return Subspace::zero(columns.rows());
    return range_basis(columns, tol);
}

ComplexMatrix projector(const Subspace& s) { return s.basis * s.basis.adjoint(); }

double subspace_excess(const Subspace& s1, const Subspace& s2) {
    if (s1.ambient_dim != s2.ambient_dim) {
        throw Error(ErrorKind::DimensionMismatch, "subspace comparison: ambient dimensions " +
                                                      std::to_string(s1.ambient_dim) + " vs " +
                                                      std::to_string(s2.ambient_dim));
    }
    if (s1.trivial()) return 0.0;
    if (s2.trivial()) return 1.0;
    const ComplexMatrix residual = s1.basis - s2.basis * (s2.basis.adjoint() * s1.basis);
    return spectral_norm(residual);
}

bool subspace_leq(const Subspace& s1, const Subspace& s2, const ToleranceProfile& tol) {
    const double threshold = std::max(tol.eq_rel, s1.tol + s2.tol);
    return subspace_excess(s1, s2) <= threshold;
}

bool subspace_eq(const Subspace& s1, const Subspace& s2, const ToleranceProfile& tol) {
    return subspace_leq(s1, s2, tol) && subspace_leq(s2, s1, tol);
}

} // namespace kbiframe
