#include "cli/commands.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "cli/harness.hpp"
#include "cli/io.hpp"

namespace kbiframe::cli {

namespace {

struct BoundsArgs {
    std::string pair;
    std::string k;
    std::string subspace;
    bool hermitian_part = false;
};

struct VerifyArgs {
    std::string pair;
    std::string k;
    double alpha = 0.0;
    double beta = 0.0;
    bool hermitian_part = false;
};

struct TransformArgs {
    std::string kind;
    std::string pair;
    std::string k;
    std::string l;
    std::string u;
    std::string t;
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    std::string out;
};

struct GenArgs {
    std::string kind;
    std::size_t dim = 0;
    std::optional<std::size_t> rank;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::string k;
    std::string out;
};

struct CheckArgs {
    std::string theorem;
    std::size_t trials = 200;
    std::size_t dim = 6;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    bool parallel = false;
    unsigned threads = 0;
    double slack = 1e-8;
    bool no_timing = false;
};

FormMode form_mode(bool hermitian_part) { return hermitian_part ? FormMode::HermitianPart : FormMode::Strict; }

ComplexMatrix identity_for(const VectorPairSystem& pair) { return ComplexMatrix::identity(pair.dim()); }

std::string require_path(const std::string& path, const char* flag) {
    if (path.empty()) throw InputError(std::string(flag) + " is required for this kind");
    return path;
}

void emit(std::ostream& out, const Json& j) { out << dump(j); }

int cmd_classify(const std::string& file, const ToleranceProfile& tol, std::ostream& out) {
    const ComplexMatrix m = read_matrix(file);
    if (!m.is_square()) throw InputError(file + ": classification needs a square matrix");
    emit(out, profile_to_json(profile(m, tol)));
    return kExitOk;
}

int cmd_bounds(const BoundsArgs& a, const ToleranceProfile& tol, std::ostream& out) {
    const VectorPairSystem pair = read_pair(a.pair);
    const FormMode mode = form_mode(a.hermitian_part);
    BoundsReport r;
    if (!a.subspace.empty()) {
        const ComplexMatrix basis = read_matrix(a.subspace);
        if (basis.rows() != pair.dim()) throw InputError(a.subspace + ": basis rows must equal the pair dimension");
        const ComplexMatrix k = a.k.empty() ? identity_for(pair) : read_matrix(a.k);
        r = k_biframe_bounds_on_subspace(pair, k, span_of(basis, tol), tol, mode);
    } else if (!a.k.empty()) {
        r = k_biframe_bounds(pair, read_matrix(a.k), tol, mode);
    } else {
        r = biframe_bounds(pair, tol, mode);
    }
    emit(out, bounds_to_json(r));
    return r.feasible ? kExitOk : kExitNegative;
}

int cmd_verify(const VerifyArgs& a, const ToleranceProfile& tol, std::ostream& out) {
    if (!(a.alpha > 0.0) || !(a.beta > 0.0)) throw InputError("--alpha and --beta must be positive");
    const VectorPairSystem pair = read_pair(a.pair);
    const ComplexMatrix k = a.k.empty() ? identity_for(pair) : read_matrix(a.k);
    const VerifyResult v = verify_claimed_bounds(pair, k, a.alpha, a.beta, tol, form_mode(a.hermitian_part));
    emit(out, verify_to_json(v));
    return v.holds ? kExitOk : kExitNegative;
}

Json transform_to_json(const TransformResult& r, bool include_pair) {
    Json j;
    j["kind"] = std::string(to_string(r.kind));
    j["provenance"] = r.provenance;
    j["input_bounds"] = bounds_to_json(r.input_bounds);
    j["bounds"] = bounds_to_json(r.output_bounds);
    j["upper_bound_factor"] = r.upper_bound_factor;
    j["domain_dim"] = r.domain.dim();
    j["target_operator"] = matrix_to_json(r.target_operator);
    if (r.phi_target_bounds) {
        j["phi_target_bounds"] = bounds_to_json(*r.phi_target_bounds);
        j["phi_identity_residual"] = r.phi_identity_residual;
    }
    if (include_pair) j["pair"] = pair_to_json(r.pair);
    return j;
}

int cmd_transform(const TransformArgs& a, const ToleranceProfile& tol, std::ostream& out) {
    const VectorPairSystem pair = read_pair(require_path(a.pair, "--pair"));
    const ComplexMatrix k = read_matrix(require_path(a.k, "--k"));
    TransformResult r;
    if (a.kind == "kl") {
        r = kl_transform(pair, k, read_matrix(require_path(a.l, "--l")), tol);
    } else if (a.kind == "unitary") {
        r = unitary_conjugate(pair, k, read_matrix(require_path(a.u, "--u")), tol);
    } else if (a.kind == "phi") {
        r = phi_transform(pair, read_matrix(require_path(a.t, "--t")), k, tol);
    } else if (a.kind == "shift") {
        r = lambda_shift_transform(pair, read_matrix(require_path(a.t, "--t")), k, {a.lambda_re, a.lambda_im}, tol);
    } else {
        // projection: the pair is unchanged; the operator becomes the projector onto R(K).
        const MembershipResult m = projection_membership(pair, k, tol);
        r.kind = TransformKind::Projection;
        r.pair = pair;
        r.target_operator = m.operator_used;
        r.domain = Subspace::full(pair.dim());
        r.input_bounds = m.input_bounds;
        r.output_bounds = m.bounds;
        r.provenance = "projection: same pair against the projector onto R(K)";
    }
    if (!a.out.empty()) write_json_file(a.out, pair_to_json(r.pair));
    emit(out, transform_to_json(r, a.out.empty()));
    return r.output_bounds.feasible ? kExitOk : kExitNegative;
}

int cmd_check(const CheckArgs& a, const ToleranceProfile& tol, std::ostream& out) {
    HarnessOptions o;
    o.theorem_id = a.theorem;
    o.trials = a.trials;
    o.dim = a.dim;
    o.count = a.count;
    o.seed = a.seed;
    o.parallel = a.parallel;
    o.threads = a.threads;
    o.tol = tol;
    o.slack = a.slack;
    const TheoremReport r = check_theorem(o);
    emit(out, theorem_report_to_json(r, !a.no_timing));
    return r.failures.empty() ? kExitOk : kExitNegative;
}

int cmd_gen(const GenArgs& a, const ToleranceProfile& tol, std::ostream& out) {
    std::size_t dim = a.dim;
    std::optional<ComplexMatrix> k;
    if (!a.k.empty()) {
        k = read_matrix(a.k);
        if (!k->is_square()) throw InputError(a.k + ": K must be square");
        if (dim != 0 && dim != k->rows()) throw InputError("--dim disagrees with the K file");
        dim = k->rows();
    }
    if (dim < 1) throw InputError("--dim must be >= 1 (or pass --k)");
    const std::size_t rank = a.rank.value_or(dim);
    if (rank > dim) throw InputError("--rank must not exceed --dim");
    const std::size_t count = a.count == 0 ? dim + 2 : a.count;
    if (count < dim) throw InputError("--count must be >= the dimension");
    const TrialSeed seed{a.seed, dim, count};

    Json result;
    if (a.kind == "unitary") {
        result = matrix_to_json(gen_unitary(seed));
    } else if (a.kind == "ep") {
        result = matrix_to_json(gen_ep(seed, rank));
    } else if (a.kind == "normal") {
        result = matrix_to_json(gen_normal(seed, rank));
    } else if (a.kind == "idempotent") {
        result = matrix_to_json(gen_idempotent(seed, rank));
    } else if (a.kind == "inner-inverse") {
        if (!k) throw InputError("--k is required for inner-inverse");
        result = matrix_to_json(gen_inner_inverse(*k, seed));
    } else {
        const ComplexMatrix op = k ? *k : ComplexMatrix::identity(dim);
        result = pair_to_json(gen_k_biframe(op, seed));
    }
    (void)tol;
    if (a.out.empty()) {
        emit(out, result);
    } else {
        write_json_file(a.out, result);
    }
    return kExitOk;
}

int exit_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::GenerationFailed:
    case ErrorKind::NotHermitian: return kExitNumerical;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DegenerateK:
    case ErrorKind::TrivialSubspace: return kExitUsage;
    default: return kExitNegative;
    }
}

int report_error(const Error& e, std::ostream& out, std::ostream& err) {
    const int code = exit_for(e.kind());
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (code != kExitNegative) return code;
    Json j;
    j["error"] = std::string(to_string(e.kind()));
    j["message"] = e.what();
    if (e.kind() == ErrorKind::NonHermitianForm) j["hermitian_defect"] = e.value();
    j["witness"] = e.witness().empty() ? Json(nullptr) : vector_to_json(e.witness());
    emit(out, j);
    return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal bounds, classification and transforms for biframes and K-biframes"};
    app.name("kbiframe");
    app.require_subcommand(1);

    std::string classify_file;
    auto* classify = app.add_subcommand("classify", "Profile a square matrix (gamma, EP, normal, semi-regular)");
    classify->add_option("matrix", classify_file, "Matrix file")->required();

    BoundsArgs bounds_args;
    auto* bounds = app.add_subcommand("bounds", "Optimal biframe or K-biframe bounds of a pair");
    bounds->add_option("pair", bounds_args.pair, "Pair file")->required();
    bounds->add_option("--k", bounds_args.k, "Matrix file for K (omit for plain biframe bounds)");
    bounds->add_option("--subspace", bounds_args.subspace, "Matrix whose columns span the domain");
    bounds->add_flag("--hermitian-part", bounds_args.hermitian_part, "Use the Hermitian part of a non-Hermitian form");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Check claimed bounds (alpha, beta)");
    verify->add_option("pair", verify_args.pair, "Pair file")->required();
    verify->add_option("--k", verify_args.k, "Matrix file for K (identity when omitted)");
    verify->add_option("--alpha", verify_args.alpha, "Claimed lower bound")->required();
    verify->add_option("--beta", verify_args.beta, "Claimed upper bound")->required();
    verify->add_flag("--hermitian-part", verify_args.hermitian_part, "Use the Hermitian part of a non-Hermitian form");

    TransformArgs transform_args;
    auto* transform = app.add_subcommand("transform", "Apply a bound-preserving construction to a K-biframe");
    transform->add_option("--kind", transform_args.kind, "Construction")
        ->required()
        ->check(CLI::IsMember({"kl", "unitary", "phi", "shift", "projection"}));
    transform->add_option("--pair", transform_args.pair, "Pair file")->required();
    transform->add_option("--k", transform_args.k, "Matrix file for K")->required();
    transform->add_option("--l", transform_args.l, "Inner inverse of K (kl)");
    transform->add_option("--u", transform_args.u, "Unitary (unitary)");
    transform->add_option("--t", transform_args.t, "Operator T (phi, shift)");
    transform->add_option("--lambda", transform_args.lambda_re, "Real part of the shift (shift)");
    transform->add_option("--lambda-im", transform_args.lambda_im, "Imaginary part of the shift (shift)");
    transform->add_option("--out", transform_args.out, "Write the transformed pair here");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check-theorems", "Seeded randomized search for counterexamples");
    check->add_option("--theorem", check_args.theorem, "Suite id")->required();
    check->add_option("--trials", check_args.trials, "Number of trials");
    check->add_option("--dim", check_args.dim, "Ambient dimension");
    check->add_option("--count", check_args.count, "Vectors per family (default dim + 2)");
    check->add_option("--seed", check_args.seed, "Base seed");
    check->add_flag("--parallel", check_args.parallel, "Run trials on worker threads");
    check->add_option("--threads", check_args.threads, "Worker count for --parallel");
    check->add_option("--slack", check_args.slack, "Slack on the guaranteed constants")
        ->check(CLI::PositiveNumber);
    check->add_flag("--no-timing", check_args.no_timing, "Omit elapsed_ms from the report");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate seeded test inputs");
    gen->add_option("--kind", gen_args.kind, "What to generate")
        ->required()
        ->check(CLI::IsMember({"unitary", "ep", "normal", "idempotent", "inner-inverse", "kbiframe"}));
    gen->add_option("--dim", gen_args.dim, "Dimension");
    gen->add_option("--rank", gen_args.rank, "Rank (default full)");
    gen->add_option("--seed", gen_args.seed, "Seed");
    gen->add_option("--count", gen_args.count, "Vectors per family for kbiframe (default dim + 2)");
    gen->add_option("--k", gen_args.k, "Matrix file for K (inner-inverse, kbiframe)");
    gen->add_option("--out", gen_args.out, "Output file (stdout when omitted)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const ToleranceProfile tol = tolerances_from_env();
        if (classify->parsed()) return cmd_classify(classify_file, tol, out);
        if (bounds->parsed()) return cmd_bounds(bounds_args, tol, out);
        if (verify->parsed()) return cmd_verify(verify_args, tol, out);
        if (transform->parsed()) return cmd_transform(transform_args, tol, out);
        if (check->parsed()) return cmd_check(check_args, tol, out);
        if (gen->parsed()) return cmd_gen(gen_args, tol, out);
        return kExitUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        return report_error(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace kbiframe::cli
