#include "kbiframe/random.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kbiframe/error.hpp"
#include "kbiframe/operator_analysis.hpp"

namespace kbiframe {

namespace {

constexpr int kMaxAttempts = 32;
constexpr double kConditionCap = 1e6;

// Per-generator salts keep the streams of different generators independent
// when they are fed the same TrialSeed.
enum Salt : std::uint64_t {
    kSaltUnitary = 0x11,
    kSaltNormal = 0x12,
    kSaltEp = 0x13,
    kSaltIdempotent = 0x14,
    kSaltRank = 0x15,
    kSaltHermitian = 0x16,
    kSaltCommuting = 0x17,
    kSaltInnerInverse = 0x18,
    kSaltKBiframe = 0x19,
};

void require_dims(const TrialSeed& t, std::size_t rank) {
    if (t.dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
    if (rank > t.dim) throw Error(ErrorKind::InvalidArgument, "rank exceeds dimension");
}

[[noreturn]] void generation_failed(const char* what) {
    throw Error(ErrorKind::GenerationFailed, std::string(what) + ": predicate not met after retries");
}

ComplexMatrix haar(Rng& rng, std::size_t n) {
    const ComplexMatrix a = rng.ginibre(n, n);
    ComplexMatrix q(n, n);
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < n; ++j) {
        Vector v = a.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : cols) {
                const Complex r = inner(v, b);
                for (std::size_t i = 0; i < n; ++i) v[i] -= r * b[i];
            }
        }
        // Gram–Schmidt leaves R with a positive real diagonal, which is the
        // phase normalization that makes Q Haar distributed.
        const double r = norm(v);
        for (auto& z : v) z /= r;
        q.set_column(j, v);
        cols.push_back(std::move(v));
    }
    return q;
}

ComplexMatrix embed_block(const ComplexMatrix& block, std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) m(i, j) = block(i, j);
    return m;
}

ComplexMatrix cubic(const ComplexMatrix& h, const std::array<Complex, 4>& c) {
    const std::size_t n = h.rows();
    ComplexMatrix acc = c[3] * ComplexMatrix::identity(n);
    for (int k = 2; k >= 0; --k) {
        acc = acc * h;
        acc += c[static_cast<std::size_t>(k)] * ComplexMatrix::identity(n);
    }
    return acc;
}

ComplexMatrix scaled_hermitian(Rng& rng, std::size_t n) {
    ComplexMatrix h = hermitian_part(rng.ginibre(n, n));
    h *= 1.0 / std::sqrt(static_cast<double>(n));
    return h;
}

} // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Complex Rng::unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

ComplexMatrix Rng::ginibre(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (auto& z : m.data()) z = complex_normal();
    return m;
}

double condition_number(const ComplexMatrix& a, const ToleranceProfile& tol) {
    const auto f = svd(a);
    const std::size_t r = rank(f, tol);
    if (r == 0) return 1.0;
    return f.sigma.front() / f.sigma[r - 1];
}

ComplexMatrix gen_unitary(const TrialSeed& t) {
    require_dims(t, 0);
    Rng rng(mix_seed(t.seed, kSaltUnitary));
    const ToleranceProfile tol;
    const double scale = std::sqrt(static_cast<double>(t.dim));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        ComplexMatrix u = haar(rng, t.dim);
        const double defect = (u.adjoint() * u - ComplexMatrix::identity(t.dim)).frobenius_norm();
        if (defect <= tol.eq_abs(scale)) return u;
    }
    generation_failed("gen_unitary");
}

ComplexMatrix gen_normal(const TrialSeed& t, std::size_t rank_wanted) {
    require_dims(t, rank_wanted);
    Rng rng(mix_seed(t.seed, kSaltNormal));
    const ToleranceProfile tol;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix u = haar(rng, t.dim);
        std::vector<Complex> d(t.dim, Complex{});
        for (std::size_t i = 0; i < rank_wanted; ++i) {
            do {
                d[i] = rng.complex_normal();
            } while (std::abs(d[i]) < 1e-3);
        }
        const ComplexMatrix m = u * ComplexMatrix::diagonal(d) * u.adjoint();
        if (is_normal(m, tol) && rank(m, tol) == rank_wanted) return m;
    }
    generation_failed("gen_normal");
}

ComplexMatrix gen_ep(const TrialSeed& t, std::size_t rank_wanted) {
    require_dims(t, rank_wanted);
    Rng rng(mix_seed(t.seed, kSaltEp));
    const ToleranceProfile tol;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix u = haar(rng, t.dim);
        const ComplexMatrix c = rng.ginibre(rank_wanted, rank_wanted);
        if (rank_wanted > 0 && condition_number(c, tol) > kConditionCap) continue;
        const ComplexMatrix m = u * embed_block(c, t.dim) * u.adjoint();
        if (rank(m, tol) == rank_wanted && is_ep(m, tol)) return m;
    }
    generation_failed("gen_ep");
}

ComplexMatrix gen_idempotent(const TrialSeed& t, std::size_t rank_wanted) {
    require_dims(t, rank_wanted);
    Rng rng(mix_seed(t.seed, kSaltIdempotent));
    const ToleranceProfile tol;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix s = rng.ginibre(t.dim, t.dim);
        if (condition_number(s, tol) > 1e4 || rank(s, tol) < t.dim) continue;
        std::vector<double> d(t.dim, 0.0);
        for (std::size_t i = 0; i < rank_wanted; ++i) d[i] = 1.0;
        const ComplexMatrix m = s * ComplexMatrix::diagonal(d) * pinv(s, tol);
        const double f = m.frobenius_norm();
        if ((m * m - m).frobenius_norm() <= tol.eq_abs(std::max(1.0, f * f)) && rank(m, tol) == rank_wanted) {
            return m;
        }
    }
    generation_failed("gen_idempotent");
}

ComplexMatrix gen_rank(const TrialSeed& t, std::size_t rank_wanted) {
    require_dims(t, rank_wanted);
    Rng rng(mix_seed(t.seed, kSaltRank));
    const ToleranceProfile tol;
    if (rank_wanted == 0) return ComplexMatrix(t.dim, t.dim);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix m = rng.ginibre(t.dim, rank_wanted) * rng.ginibre(rank_wanted, t.dim);
        if (rank(m, tol) == rank_wanted && condition_number(m, tol) <= kConditionCap) return m;
    }
    generation_failed("gen_rank");
}

ComplexMatrix gen_hermitian(const TrialSeed& t) {
    require_dims(t, 0);
    Rng rng(mix_seed(t.seed, kSaltHermitian));
    return scaled_hermitian(rng, t.dim);
}

CommutingFamily gen_commuting_family(const TrialSeed& t) {
    require_dims(t, 0);
    Rng rng(mix_seed(t.seed, kSaltCommuting));
    const ToleranceProfile tol;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        CommutingFamily fam;
        fam.hermitian_seed = scaled_hermitian(rng, t.dim);
        std::array<Complex, 4> ck{};
        std::array<Complex, 4> ct{};
        for (auto& c : ck) c = rng.complex_normal();
        for (auto& c : ct) c = rng.complex_normal();
        fam.k = cubic(fam.hermitian_seed, ck);
        fam.t = cubic(fam.hermitian_seed, ct);
        if (fam.k.max_abs() == 0.0) continue;
        if (rank(fam.t, tol) < t.dim || condition_number(fam.t, tol) > kConditionCap) continue;
        if (!commutes(fam.k, fam.t, tol)) continue;
        return fam;
    }
    generation_failed("gen_commuting_family");
}

CommutingFamily gen_commuting_family_singular_hermitian(const TrialSeed& t, std::size_t nullity) {
    if (nullity == 0 || nullity >= t.dim) {
        throw Error(ErrorKind::InvalidArgument, "nullity must lie in [1, dim)");
    }
    Rng rng(mix_seed(t.seed, kSaltCommuting ^ 0xA5));
    const ToleranceProfile tol;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        CommutingFamily fam;
        fam.hermitian_seed = scaled_hermitian(rng, t.dim);
        const auto e = herm_eig(fam.hermitian_seed, tol);
        std::array<Complex, 4> ck{};
        for (auto& c : ck) c = rng.complex_normal();
        fam.k = cubic(fam.hermitian_seed, ck);

        const std::size_t first = rng.index(t.dim - nullity + 1);
        ComplexMatrix prod = ComplexMatrix::identity(t.dim);
        for (std::size_t i = 0; i < nullity; ++i) {
            prod = prod * (fam.hermitian_seed - Complex(e.values[first + i]) * ComplexMatrix::identity(t.dim));
        }
        fam.t = hermitian_part(prod);
        if (fam.k.max_abs() == 0.0) continue;
        if (rank(fam.t, tol) != t.dim - nullity || condition_number(fam.t, tol) > kConditionCap) continue;
        if (!commutes(fam.t.adjoint(), fam.k, tol)) continue;
        return fam;
    }
    generation_failed("gen_commuting_family_singular_hermitian");
}

ComplexMatrix gen_inner_inverse(const ComplexMatrix& k, const TrialSeed& t) {
    if (!k.is_square()) throw Error(ErrorKind::DimensionMismatch, "gen_inner_inverse: K must be square");
    Rng rng(mix_seed(t.seed, kSaltInnerInverse));
    const ToleranceProfile tol;
    const ComplexMatrix kp = pinv(k, tol);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix w = rng.ginibre(k.rows(), k.rows());
        const ComplexMatrix l = kp + w - kp * k * w * k * kp;
        const double kn = k.frobenius_norm();
        const double residual = (k * l * k - k).frobenius_norm();
        if (residual <= tol.eq_abs(std::max(kn * kn * l.frobenius_norm(), kn) + 1e-300)) return l;
    }
    generation_failed("gen_inner_inverse");
}

VectorPairSystem pair_with_operator(const ComplexMatrix& g_target, const ComplexMatrix& x) {
    if (!g_target.is_square() || g_target.rows() != x.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "pair_with_operator: shapes do not agree");
    }
    const ToleranceProfile tol;
    if (rank(x, tol) != x.rows()) {
        throw Error(ErrorKind::GenerationFailed, "pair_with_operator: X lacks full row rank");
    }
    const ComplexMatrix y = g_target * pinv(x.adjoint(), tol);
    return VectorPairSystem::from_matrices(x, y);
}

VectorPairSystem gen_k_biframe(const ComplexMatrix& k, const TrialSeed& t) {
    if (!k.is_square() || k.rows() != t.dim) {
        throw Error(ErrorKind::DimensionMismatch, "gen_k_biframe: K must be dim x dim");
    }
    if (k.max_abs() == 0.0) throw Error(ErrorKind::DegenerateK, "gen_k_biframe: K = 0");
    if (t.count < t.dim) throw Error(ErrorKind::InvalidArgument, "gen_k_biframe: count must be >= dim");
    Rng rng(mix_seed(t.seed, kSaltKBiframe));
    const ToleranceProfile tol;
    const std::size_t n = t.dim;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const ComplexMatrix c = rng.ginibre(n, n);
        ComplexMatrix d = c * c.adjoint();
        d *= 1.0 / static_cast<double>(n);
        const ComplexMatrix g = hermitian_part(k * k.adjoint() + d);
        const ComplexMatrix x = rng.ginibre(n, t.count);
        if (rank(x, tol) < n || condition_number(x, tol) > kConditionCap) continue;
        auto pair = pair_with_operator(g, x);
        if ((pair_operator(pair) - g).frobenius_norm() <= tol.eq_abs(g.scale())) return pair;
    }
    generation_failed("gen_k_biframe");
}

} // namespace kbiframe
