#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cli/io.hpp"

namespace kbiframe::cli {

struct TrialFailure {
    std::size_t trial = 0;
    std::uint64_t seed = 0; ///< the derived per-trial seed; regenerates the trial's inputs
    std::string stage;
    std::string detail;
    Vector witness;
    std::map<std::string, double> margins;
};

struct TheoremReport {
    std::string theorem_id;
    std::size_t trials = 0;
    std::size_t dim = 0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::vector<TrialFailure> failures;
    ToleranceProfile tolerances;
    double slack = 0.0;
    std::int64_t elapsed_ms = 0;
};

struct HarnessOptions {
    std::string theorem_id;
    std::size_t trials = 200;
    std::size_t dim = 6;
    std::size_t count = 0; ///< 0 selects dim + 2
    std::uint64_t seed = 0;
    bool parallel = false;
    unsigned threads = 0; ///< 0 selects hardware concurrency (at least 2) when parallel
    ToleranceProfile tol;
    /// Slack for the explicit constants promised by the constructions.
    double slack = 1e-8;
};

/// t2.1, t2.2, t2.3-phi, t2.3-proj, t2.4, p2.1, p2.2, l2.1, t1.3, p1.4, finite-sr
std::span<const std::string_view> theorem_ids();
bool is_theorem_id(std::string_view id);

/// Seed of trial `index` for theorem `id`; a counter-based split so results do
/// not depend on execution order.
std::uint64_t trial_seed(std::string_view id, std::uint64_t base, std::size_t index);

/// Runs one trial and returns its failures (empty on success).
std::vector<TrialFailure> run_trial(std::string_view id, std::size_t index, std::uint64_t seed, std::size_t dim,
                                    std::size_t count, const ToleranceProfile& tol, double slack);

/// Throws InputError for unknown ids or invalid sizes.
TheoremReport check_theorem(const HarnessOptions& options);

/// `include_timing = false` omits elapsed_ms so reports can be compared byte for byte.
Json theorem_report_to_json(const TheoremReport& r, bool include_timing = true);

} // namespace kbiframe::cli
