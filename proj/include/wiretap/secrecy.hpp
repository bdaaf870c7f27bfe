#pragma once
// Closed-form compound secrecy capacity under the isotropic worst-case
// eavesdropper: the two-channel rate function, eigenmode power allocation
// with its water-level multiplier, activation thresholds, the beamforming
// condition and the high/low-SNR asymptotes. All rates are in nats.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "wiretap/matops.hpp"

namespace wiretap::secrecy {

/// Eigenmodes of the legitimate channel: power gains g_i (descending) and
/// the unitary eigenvector basis they live on.
struct LegitimateSpectrum {
    std::vector<double> gains;
    mat::ComplexMatrix basis;
};

inline LegitimateSpectrum spectrum_of(const mat::HermitianPSD& w1) {
    mat::EigDecomposition e = mat::hermitian_eig(w1);
    return {std::move(e.eigenvalues), std::move(e.eigenvectors)};
}

/// Eigenmode transmit powers with the Lagrange multiplier that produced
/// them. A mode is active exactly when g_i > water_level + epsilon.
struct PowerAllocation {
    std::vector<double> powers;    // lambda_i^*, aligned with the spectrum
    double water_level = 0.0;      // lambda; reported as g_1 - eps when nothing is active
    std::vector<int> active_set;   // indices with positive power
    double total = 0.0;            // sum of powers
};

struct CapacityReport {
    double capacity = 0.0;  // nats
    PowerAllocation allocation;
    mat::HermitianPSD optimal_covariance = mat::HermitianPSD::zero(1);
    mat::HermitianPSD worst_eaves = mat::HermitianPSD::zero(1);
    double high_snr_asymptote = 0.0;
    int active_count = 0;
    // filled by the double-sided scenarios
    std::optional<mat::HermitianPSD> worst_legit_gram;
    std::optional<mat::ComplexMatrix> worst_eaves_channel;  // representative H_2w
};

/// ln|I + W1 R| - ln|I + W2 R|; may be negative for arbitrary arguments.
inline double secrecy_rate(const mat::HermitianPSD& r, const mat::HermitianPSD& w1,
                           const mat::HermitianPSD& w2) {
    if (w1.dim() != w2.dim() || w1.dim() != r.dim())
        throw validation_error("secrecy_rate: dimension mismatch");
    return mat::logdet_ipwr(w1, r) - mat::logdet_ipwr(w2, r);
}

/// Optimal power on a single eigenmode of gain g at multiplier `level`.
/// For eps > 0 this is the closed form
///   lambda^* = (eps+g)/(2 eps g) * (sqrt(1 + 4 eps g/(eps+g)^2 *
///              ((g-eps)/level - 1)_+) - 1),
/// whose eps -> 0 limit is the classical water-filling (1/level - 1/g)_+.
inline double mode_power(double gain, double epsilon, double level) {
    if (gain <= epsilon || gain <= 0.0) return 0.0;
    if (epsilon == 0.0) return std::max(1.0 / level - 1.0 / gain, 0.0);
    const double excess = (gain - epsilon) / level - 1.0;
    if (excess <= 0.0) return 0.0;
    const double sum = epsilon + gain;
    const double z = std::sqrt(1.0 + 4.0 * epsilon * gain / (sum * sum) * excess) - 1.0;
    return sum / (2.0 * epsilon * gain) * z;
}

/// Multiplier lambda in (0, g_1 - eps) solving sum_i lambda_i^*(lambda) = P_T.
/// The total power is continuous and strictly decreasing in lambda, so
/// bisection (cap 200, relative tolerance 1e-12) always converges.
inline double water_level(const LegitimateSpectrum& spectrum, double epsilon, double total_power) {
    if (total_power <= 0.0) throw validation_error("water_level: total power must be positive");
    if (epsilon < 0.0) throw validation_error("water_level: negative epsilon");
    if (spectrum.gains.empty() || spectrum.gains.front() <= epsilon)
        throw validation_error("water_level: no eigenmode is stronger than the eavesdropper bound");

    const auto total_at = [&](double level) {
        double s = 0.0;
        for (double g : spectrum.gains) s += mode_power(g, epsilon, level);
        return s;
    };

    double lo = 1e-300;  // total(lo) -> +inf
    double hi = spectrum.gains.front() - epsilon;
    double mid = hi;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double t = total_at(mid);
        if (std::abs(t - total_power) <= 1e-12 * std::max(1.0, total_power)) return mid;
        (t > total_power ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Eigenmode power allocation for total power P_T against an isotropic
/// eavesdropper of gain epsilon. All-zero with an empty active set when no
/// mode clears epsilon or P_T = 0.
inline PowerAllocation power_allocation(const LegitimateSpectrum& spectrum, double epsilon,
                                        double total_power) {
    if (total_power < 0.0 || epsilon < 0.0)
        throw validation_error("power_allocation: negative power or epsilon");
    PowerAllocation out;
    out.powers.assign(spectrum.gains.size(), 0.0);
    const double g1 = spectrum.gains.empty() ? 0.0 : spectrum.gains.front();
    if (total_power == 0.0 || g1 <= epsilon) {
        out.water_level = g1 - epsilon;  // the P_T -> 0 limit of the multiplier
        return out;
    }
    out.water_level = water_level(spectrum, epsilon, total_power);
    for (std::size_t i = 0; i < spectrum.gains.size(); ++i) {
        const double p = mode_power(spectrum.gains[i], epsilon, out.water_level);
        out.powers[i] = p;
        if (p > 0.0) out.active_set.push_back(static_cast<int>(i));
        out.total += p;
    }
    return out;
}

/// Capacity of the allocation: sum over active modes of
/// ln((1 + g_i lambda_i^*)/(1 + eps lambda_i^*)).
inline double allocation_capacity(const LegitimateSpectrum& spectrum, double epsilon,
                                  const PowerAllocation& alloc) {
    double c = 0.0;
    for (int i : alloc.active_set) {
        const double p = alloc.powers[static_cast<std::size_t>(i)];
        c += std::log((1.0 + spectrum.gains[static_cast<std::size_t>(i)] * p) / (1.0 + epsilon * p));
    }
    return c;
}

/// Saturation level sum_{g_i > eps} ln(g_i / eps); +inf when eps = 0 and a
/// positive gain exists.
inline double high_snr_asymptote(const std::vector<double>& gains, double epsilon) {
    double s = 0.0;
    for (double g : gains) {
        if (g <= epsilon) continue;
        if (epsilon == 0.0) return std::numeric_limits<double>::infinity();
        s += std::log(g / epsilon);
    }
    return s;
}

/// Compound secrecy capacity for a spectrum already in eigen-coordinates.
/// The report's worst-case eavesdropper is the isotropic eps I.
inline CapacityReport capacity_for_spectrum(const LegitimateSpectrum& spectrum, double epsilon,
                                            double total_power) {
    CapacityReport rep;
    rep.allocation = power_allocation(spectrum, epsilon, total_power);
    rep.capacity = allocation_capacity(spectrum, epsilon, rep.allocation);
    rep.active_count = static_cast<int>(rep.allocation.active_set.size());
    rep.optimal_covariance = mat::HermitianPSD::from_eigensystem(spectrum.basis, rep.allocation.powers);
    rep.worst_eaves = mat::HermitianPSD::scaled_identity(spectrum.basis.rows(), epsilon);
    rep.high_snr_asymptote = high_snr_asymptote(spectrum.gains, epsilon);
    return rep;
}

/// Compound secrecy capacity with known W1 and an eavesdropper bounded by
/// lambda_1(W2) <= epsilon. Signaling is on the eigenmodes of W1 and the
/// worst case is isotropic.
inline CapacityReport capacity_isotropic(const mat::HermitianPSD& w1, double epsilon,
                                         double total_power) {
    if (epsilon < 0.0 || total_power < 0.0)
        throw validation_error("capacity_isotropic: negative inputs");
    return capacity_for_spectrum(spectrum_of(w1), epsilon, total_power);
}

/// Minimum total power that activates at least `mode_count` eigenmodes;
/// +inf when mode `mode_count` can never activate (its gain <= eps).
inline double threshold_power(const LegitimateSpectrum& spectrum, double epsilon, int mode_count) {
    if (epsilon <= 0.0) throw validation_error("threshold_power: epsilon must be positive");
    const int modes = static_cast<int>(spectrum.gains.size());
    if (mode_count < 2 || mode_count > modes)
        throw validation_error("threshold_power: mode index out of range");
    const double gm = spectrum.gains[static_cast<std::size_t>(mode_count - 1)];
    if (gm <= epsilon) return std::numeric_limits<double>::infinity();
    double p = 0.0;
    for (int i = 0; i < mode_count - 1; ++i) {
        const double g = spectrum.gains[static_cast<std::size_t>(i)];
        const double sum = epsilon + g;
        const double rad = 1.0 + 4.0 * epsilon * g / (sum * sum) * (g - gm) / (gm - epsilon);
        p += sum / (2.0 * epsilon * g) * (std::sqrt(rad) - 1.0);
    }
    return p;
}

/// True when a single active eigenmode (rank-one signaling) is optimal,
/// i.e. P_T does not exceed the second mode's activation threshold.
inline bool beamforming_optimal(const LegitimateSpectrum& spectrum, double epsilon,
                                double total_power) {
    if (total_power <= 0.0) throw validation_error("beamforming_optimal: total power must be positive");
    if (spectrum.gains.empty() || spectrum.gains.front() <= epsilon)
        throw validation_error("beamforming_optimal: strongest mode not above epsilon");
    if (spectrum.gains.size() < 2) return true;
    return total_power <= threshold_power(spectrum, epsilon, 2);
}

/// Single-active-mode capacity ln((1 + g_1 P_T)/(1 + eps P_T)); approximately
/// (g_1 - eps) P_T when that product is small.
inline double low_snr_capacity(double g1, double epsilon, double total_power) {
    if (total_power < 0.0) throw validation_error("low_snr_capacity: negative power");
    return std::log((1.0 + g1 * total_power) / (1.0 + epsilon * total_power));
}

inline int active_mode_count(const LegitimateSpectrum& spectrum, double epsilon,
                             double total_power) {
    return static_cast<int>(power_allocation(spectrum, epsilon, total_power).active_set.size());
}

}  // namespace wiretap::secrecy
