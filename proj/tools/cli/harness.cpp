#include "cli/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

namespace kbiframe::cli {

namespace {

constexpr std::array<std::string_view, 11> kTheorems = {
    "t2.1", "t2.2", "t2.3-phi", "t2.3-proj", "t2.4", "p2.1", "p2.2", "l2.1", "t1.3", "p1.4", "finite-sr",
};

/// Collects the failures of one trial.
class TrialLog {
public:
    explicit TrialLog(double slack) : slack_(slack) {}

    void fail(std::string stage, std::string detail, Vector witness = {}, std::map<std::string, double> margins = {}) {
        TrialFailure f;
        f.stage = std::move(stage);
        f.detail = std::move(detail);
        f.witness = std::move(witness);
        f.margins = std::move(margins);
        failures_.push_back(std::move(f));
    }

    /// Records an infeasible bounds report.
    bool require_feasible(const std::string& stage, const BoundsReport& r) {
        if (r.feasible) return true;
        fail(stage, "bounds infeasible", r.witness.value_or(Vector{}),
             {{"alpha_sup", r.alpha_sup},
              {"lambda_min_form", r.lambda_min_form},
              {"witness_form", r.witness_form},
              {"witness_k_norm2", r.witness_k_norm2}});
        return false;
    }

    /// value >= floor within the harness slack (relative and absolute).
    void require_at_least(const std::string& stage, double value, double floor) {
        if (value >= floor * (1.0 - slack_) - slack_) return;
        fail(stage, "value below the guaranteed constant", {}, {{"value", value}, {"guaranteed", floor}});
    }

    void require_at_most(const std::string& stage, double value, double ceiling) {
        if (value <= ceiling * (1.0 + slack_) + slack_) return;
        fail(stage, "value above the guaranteed constant", {}, {{"value", value}, {"guaranteed", ceiling}});
    }

    [[nodiscard]] double slack() const noexcept { return slack_; }
    std::vector<TrialFailure> take() { return std::move(failures_); }

private:
    double slack_;
    std::vector<TrialFailure> failures_;
};

struct TrialContext {
    TrialSeed seed;
    Rng rng;
    const ToleranceProfile& tol;
    TrialLog& log;
};

std::size_t random_rank(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.index(hi - lo + 1); }

Complex random_shift(Rng& rng, double radius) {
    return std::polar(radius * rng.uniform() * (1.0 - 1e-6), 2.0 * std::numbers::pi * rng.uniform());
}

ComplexMatrix random_cubic(Rng& rng, const ComplexMatrix& t) {
    const std::size_t n = t.rows();
    ComplexMatrix acc = rng.complex_normal() * ComplexMatrix::identity(n);
    for (int k = 0; k < 3; ++k) {
        acc = acc * t;
        acc += rng.complex_normal() * ComplexMatrix::identity(n);
    }
    return acc;
}

void trial_kl(TrialContext& c) {
    const ComplexMatrix k = gen_rank(c.seed, random_rank(c.rng, 1, c.seed.dim));
    const ComplexMatrix l = gen_inner_inverse(k, c.seed);
    const auto pair = gen_k_biframe(k, c.seed);
    const auto res = kl_transform(pair, k, l, c.tol);
    if (!c.log.require_feasible("output-feasible", res.output_bounds)) return;
    c.log.require_at_least("lower-bound", *res.output_bounds.alpha_opt, *res.input_bounds.alpha_opt);
    c.log.require_at_most("upper-bound", res.output_bounds.beta_opt,
                          res.input_bounds.beta_opt * res.upper_bound_factor);
}

void trial_shift(TrialContext& c) {
    const auto fam = gen_commuting_family(c.seed);
    const double g = gamma(fam.t, c.tol);
    const Complex lambda = random_shift(c.rng, g);
    const auto pair = gen_k_biframe(fam.k, c.seed);
    const auto res = lambda_shift_transform(pair, fam.t, fam.k, lambda, c.tol);
    if (res.domain.dim() != c.seed.dim) {
        c.log.fail("domain-full", "generalized range of an invertible T is not the full space", {},
                   {{"domain_dim", static_cast<double>(res.domain.dim())}});
    }
    if (!c.log.require_feasible("output-feasible", res.output_bounds)) return;
    ComplexMatrix shifted = fam.t;
    shifted -= lambda * ComplexMatrix::identity(c.seed.dim);
    const auto sf = svd(shifted);
    const double smin = sf.sigma.back();
    c.log.require_at_least("lower-bound", *res.output_bounds.alpha_opt, *res.input_bounds.alpha_opt * smin * smin);
    c.log.require_at_most("upper-bound", res.output_bounds.beta_opt,
                          res.input_bounds.beta_opt * res.upper_bound_factor);
}

void trial_phi_membership(TrialContext& c) {
    const ComplexMatrix k = gen_rank(c.seed, random_rank(c.rng, 1, c.seed.dim));
    const auto pair = gen_k_biframe(k, c.seed);
    const auto res = phi_membership(pair, k, c.tol);
    if (!c.log.require_feasible("phi-feasible", res.bounds)) return;
    c.log.require_at_least("lower-bound", *res.bounds.alpha_opt, res.guaranteed_alpha);
}

void trial_projection_membership(TrialContext& c) {
    const ComplexMatrix k = gen_rank(c.seed, random_rank(c.rng, 1, c.seed.dim));
    const auto pair = gen_k_biframe(k, c.seed);
    const auto res = projection_membership(pair, k, c.tol);
    if (!c.log.require_feasible("projection-feasible", res.bounds)) return;
    c.log.require_at_least("lower-bound", *res.bounds.alpha_opt, res.guaranteed_alpha);
}

void trial_phi_transform(TrialContext& c) {
    const std::size_t nullity = random_rank(c.rng, 1, c.seed.dim - 1);
    const auto fam = gen_commuting_family_singular_hermitian(c.seed, nullity);
    const auto pair = gen_k_biframe(fam.k, c.seed);
    const auto res = phi_transform(pair, fam.t, fam.k, c.tol);
    if (res.domain.dim() != c.seed.dim - nullity) {
        c.log.fail("domain-rank", "R(T) has unexpected dimension", {},
                   {{"domain_dim", static_cast<double>(res.domain.dim())},
                    {"expected", static_cast<double>(c.seed.dim - nullity)}});
    }
    if (!c.log.require_feasible("output-feasible", res.output_bounds)) return;
    const double tn = spectral_norm(fam.t);
    c.log.require_at_least("lower-bound", *res.output_bounds.alpha_opt, *res.input_bounds.alpha_opt / (tn * tn));
    c.log.require_at_most("upper-bound", res.output_bounds.beta_opt,
                          res.input_bounds.beta_opt * res.upper_bound_factor);
}

void trial_unitary(TrialContext& c) {
    const ComplexMatrix k = gen_rank(c.seed, random_rank(c.rng, 1, c.seed.dim));
    const auto pair = gen_k_biframe(k, c.seed);
    const ComplexMatrix u = gen_unitary(c.seed);
    const auto res = unitary_conjugate(pair, k, u, c.tol);
    const bool conj_ok = c.log.require_feasible("conjugated-feasible", res.output_bounds);
    c.log.require_feasible("phi-conjugated-feasible", *res.phi_target_bounds);
    const double phi_scale = phi(k, c.tol).scale();
    if (res.phi_identity_residual > c.log.slack() * phi_scale) {
        c.log.fail("phi-identity", "phi(UKU^H) != U phi(K) U^H", {},
                   {{"residual", res.phi_identity_residual}, {"scale", phi_scale}});
    }
    if (!conj_ok) return;
    const double da = std::abs(*res.output_bounds.alpha_opt - *res.input_bounds.alpha_opt);
    const double db = std::abs(res.output_bounds.beta_opt - res.input_bounds.beta_opt);
    if (da > c.log.slack() * std::max(1.0, *res.input_bounds.alpha_opt) ||
        db > c.log.slack() * std::max(1.0, res.input_bounds.beta_opt)) {
        c.log.fail("invariance", "conjugation changed the optimal bounds", {},
                   {{"alpha_delta", da}, {"beta_delta", db}});
    }
}

void trial_phi_ep(TrialContext& c) {
    const ComplexMatrix t = gen_ep(c.seed, random_rank(c.rng, 1, c.seed.dim));
    const auto ev = ep_evidence(phi(t, c.tol), c.tol);
    if (!ev.is_ep) {
        c.log.fail("phi-ep", "phi(T) is not EP", {},
                   {{"excess_range_in_adjoint", subspace_excess(ev.range, ev.adjoint_range)},
                    {"excess_adjoint_in_range", subspace_excess(ev.adjoint_range, ev.range)}});
    }
}

void trial_phi_range(TrialContext& c) {
    const ComplexMatrix k = gen_rank(c.seed, random_rank(c.rng, 0, c.seed.dim));
    const Subspace rk = range_basis(k, c.tol);
    const Subspace rphi = range_basis(phi(k, c.tol), c.tol);
    if (!subspace_eq(rphi, rk, c.tol)) {
        c.log.fail("range-equality", "R(phi(K)) != R(K)", {},
                   {{"excess_phi_in_k", subspace_excess(rphi, rk)}, {"excess_k_in_phi", subspace_excess(rk, rphi)}});
    }
}

void trial_pinv_commutation(TrialContext& c) {
    // Even trials: Gaussian T (invertible almost surely). Odd trials: singular EP T.
    const bool singular = (c.seed.seed & 1U) != 0 && c.seed.dim > 1;
    const ComplexMatrix t = singular ? gen_ep(c.seed, random_rank(c.rng, 1, c.seed.dim - 1))
                                     : c.rng.ginibre(c.seed.dim, c.seed.dim);
    const ComplexMatrix g = random_cubic(c.rng, t);
    if (!commutes(g, t, c.tol)) {
        c.log.fail("setup", "polynomial in T does not commute with T");
        return;
    }
    const ComplexMatrix tp = pinv(t, c.tol);
    if (!commutes(g, tp, c.tol)) {
        c.log.fail("commute-pinv", "G does not commute with pinv(T)", {},
                   {{"defect", (g * tp - tp * g).frobenius_norm()},
                    {"scale", g.frobenius_norm() * tp.frobenius_norm()}});
    }
}

void trial_normal_ep(TrialContext& c) {
    const ComplexMatrix t = gen_normal(c.seed, random_rank(c.rng, 0, c.seed.dim));
    if (!is_normal(t, c.tol)) {
        c.log.fail("setup", "generated matrix is not normal");
        return;
    }
    const auto ev = ep_evidence(t, c.tol);
    if (!ev.is_ep) {
        c.log.fail("normal-ep", "normal T is not EP", {},
                   {{"excess", std::max(subspace_excess(ev.range, ev.adjoint_range),
                                        subspace_excess(ev.adjoint_range, ev.range))}});
    }
}

void trial_finite_semi_regular(TrialContext& c) {
    const bool singular = (c.seed.seed & 1U) != 0;
    const ComplexMatrix t = singular ? gen_rank(c.seed, random_rank(c.rng, 0, c.seed.dim - 1))
                                     : c.rng.ginibre(c.seed.dim, c.seed.dim);
    const auto f = svd(t);
    const bool invertible = rank(f, c.tol) == c.seed.dim;
    const auto ev = semi_regular_evidence(t, c.tol);
    if (ev.is_semi_regular != invertible) {
        c.log.fail("equivalence", "semi-regular and invertible disagree", {},
                   {{"semi_regular", ev.is_semi_regular ? 1.0 : 0.0},
                    {"invertible", invertible ? 1.0 : 0.0},
                    {"kernel_excess", subspace_excess(ev.kernel, ev.generalized_range)}});
    }
    if (invertible) {
        const Complex lambda = random_shift(c.rng, gamma(t, c.tol));
        ComplexMatrix shifted = t;
        shifted -= lambda * ComplexMatrix::identity(c.seed.dim);
        if (!is_semi_regular(shifted, c.tol)) {
            c.log.fail("shift-semi-regular", "T - lambda I not semi-regular for |lambda| < gamma(T)", {},
                       {{"lambda_abs", std::abs(lambda)}, {"gamma", gamma(t, c.tol)}});
        }
    }
}

using TrialFn = void (*)(TrialContext&);

TrialFn trial_function(std::string_view id) {
    if (id == "t2.1") return trial_kl;
    if (id == "t2.2") return trial_shift;
    if (id == "t2.3-phi") return trial_phi_membership;
    if (id == "t2.3-proj") return trial_projection_membership;
    if (id == "t2.4") return trial_phi_transform;
    if (id == "p2.1") return trial_unitary;
    if (id == "p2.2") return trial_phi_ep;
    if (id == "l2.1") return trial_phi_range;
    if (id == "t1.3") return trial_pinv_commutation;
    if (id == "p1.4") return trial_normal_ep;
    if (id == "finite-sr") return trial_finite_semi_regular;
    return nullptr;
}

std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::span<const std::string_view> theorem_ids() { return kTheorems; }

bool is_theorem_id(std::string_view id) { return trial_function(id) != nullptr; }

std::uint64_t trial_seed(std::string_view id, std::uint64_t base, std::size_t index) {
    return mix_seed(mix_seed(base, fnv1a(id)), index);
}

std::vector<TrialFailure> run_trial(std::string_view id, std::size_t index, std::uint64_t seed, std::size_t dim,
                                    std::size_t count, const ToleranceProfile& tol, double slack) {
    const TrialFn fn = trial_function(id);
    if (fn == nullptr) throw InputError("unknown theorem id '" + std::string(id) + "'");
    TrialLog log(slack);
    TrialContext ctx{TrialSeed{seed, dim, count}, Rng(mix_seed(seed, 0xC0FFEE)), tol, log};
    try {
        fn(ctx);
    } catch (const Error& e) {
        log.fail("exception:" + std::string(to_string(e.kind())), e.what(), e.witness(), {{"value", e.value()}});
    }
    auto failures = log.take();
    for (auto& f : failures) {
        f.trial = index;
        f.seed = seed;
    }
    return failures;
}

TheoremReport check_theorem(const HarnessOptions& options) {
    if (!is_theorem_id(options.theorem_id)) {
        throw InputError("unknown theorem id '" + options.theorem_id + "'");
    }
    if (options.trials < 1) throw InputError("--trials must be >= 1");
    if (options.dim < 2) throw InputError("--dim must be >= 2");
    const std::size_t count = options.count == 0 ? options.dim + 2 : options.count;
    if (count < options.dim) throw InputError("--count must be >= --dim");

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<TrialFailure>> per_trial(options.trials);
    auto work = [&](std::size_t i) {
        per_trial[i] = run_trial(options.theorem_id, i, trial_seed(options.theorem_id, options.seed, i), options.dim,
                                 count, options.tol, options.slack);
    };

    if (options.parallel) {
        unsigned workers = options.threads != 0 ? options.threads : std::max(2U, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, options.trials));
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < options.trials; i = next++) work(i);
            });
        }
    } else {
        for (std::size_t i = 0; i < options.trials; ++i) work(i);
    }

    TheoremReport report;
    report.theorem_id = options.theorem_id;
    report.trials = options.trials;
    report.dim = options.dim;
    report.count = count;
    report.seed = options.seed;
    report.tolerances = options.tol;
    report.slack = options.slack;
    for (auto& f : per_trial) {
        for (auto& x : f) report.failures.push_back(std::move(x));
    }
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

Json theorem_report_to_json(const TheoremReport& r, bool include_timing) {
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json e;
        e["trial"] = f.trial;
        e["seed"] = f.seed;
        e["stage"] = f.stage;
        e["detail"] = f.detail;
        e["witness"] = f.witness.empty() ? Json(nullptr) : vector_to_json(f.witness);
        Json m = Json::object();
        for (const auto& [k, v] : f.margins) m[k] = v;
        e["margins"] = std::move(m);
        failures.push_back(std::move(e));
    }
    Json j;
    j["theorem_id"] = r.theorem_id;
    j["trials"] = r.trials;
    j["dim"] = r.dim;
    j["count"] = r.count;
    j["seed"] = r.seed;
    j["failures"] = std::move(failures);
    j["tolerances"] = tolerances_to_json(r.tolerances);
    j["slack"] = r.slack;
    if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

} // namespace kbiframe::cli
