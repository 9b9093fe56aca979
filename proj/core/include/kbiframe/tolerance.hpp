#pragma once

namespace kbiframe {

/// Relative tolerance factors. Absolute thresholds are obtained by
/// multiplying with the scale of the matrix under test.
struct ToleranceProfile {
    double rank_rel = 1e-10; ///< singular values <= rank_rel * sigma_1 are dropped
    double psd_rel = 1e-9;   ///< eigenvalue floor for positive semidefiniteness
    double eq_rel = 1e-9;    ///< elementwise / normwise equality

    [[nodiscard]] double psd_abs(double scale) const noexcept { return psd_rel * scale; }
    [[nodiscard]] double eq_abs(double scale) const noexcept { return eq_rel * scale; }

    /// Throws InvalidArgument unless every factor is strictly positive and finite.
    void validate() const;
};

} // namespace kbiframe
