#pragma once
// Worst-case channel constructions and compound capacities for the
// rank-constrained and double-sided uncertainty models, plus the
// equality-achieving perturbation of the singular-value lower bound.
//
// Convention: every internal epsilon is a *power* gain bound on
// lambda_1(W2). The EavesdropperUncertainty constructors normalize the two
// conventions found in the problem statements (a voltage bound sigma_1(H2)
// <= e corresponds to the power bound e^2).

#include <cmath>
#include <optional>
#include <vector>

#include "wiretap/matops.hpp"
#include "wiretap/secrecy.hpp"

namespace wiretap::uncertainty {

/// Bound on the eavesdropper channel, normalized to a power gain, with an
/// optional rank cap.
class EavesdropperUncertainty {
public:
    static EavesdropperUncertainty power_gain(double epsilon, std::optional<int> rank_bound = {}) {
        return EavesdropperUncertainty(epsilon, rank_bound);
    }
    static EavesdropperUncertainty voltage_gain(double epsilon, std::optional<int> rank_bound = {}) {
        if (epsilon < 0.0) throw validation_error("EavesdropperUncertainty: negative bound");
        return EavesdropperUncertainty(epsilon * epsilon, rank_bound);
    }

    double epsilon_power() const { return epsilon_power_; }
    const std::optional<int>& rank_bound() const { return rank_bound_; }

private:
    EavesdropperUncertainty(double eps_power, std::optional<int> rank_bound)
        : epsilon_power_(eps_power), rank_bound_(rank_bound) {
        if (epsilon_power_ < 0.0) throw validation_error("EavesdropperUncertainty: negative bound");
        if (rank_bound_ && *rank_bound_ < 1)
            throw validation_error("EavesdropperUncertainty: rank bound must be >= 1");
    }
    double epsilon_power_;
    std::optional<int> rank_bound_;
};

/// Additive uncertainty of the legitimate channel: H1 = H0 + dH with
/// sigma_1(dH) <= epsilon1 (a voltage-gain bound).
struct LegitimateUncertainty {
    mat::ComplexMatrix nominal;
    double epsilon1 = 0.0;
};

/// Numeric rank: count of values above 1e-10 relative to the largest.
inline int numeric_rank(const std::vector<double>& values) {
    double top = 0.0;
    for (double v : values) top = std::max(top, v);
    const double thr = mat::kRankTol * std::max(1.0, top);
    int r = 0;
    for (double v : values) r += (v > thr) ? 1 : 0;
    return r;
}

/// Worst-case eavesdropper under the bare spectral-norm bound: eps I.
inline mat::HermitianPSD worst_eaves_isotropic(int n, double epsilon_power) {
    return mat::HermitianPSD::scaled_identity(n, epsilon_power);
}

/// Worst-case eavesdropper under the rank constraint: eps projected onto
/// the range of W1 (the gain is "omni-directional" on that subspace).
inline mat::HermitianPSD worst_eaves_rank(const mat::HermitianPSD& w1, double epsilon_power) {
    mat::EigDecomposition e = mat::hermitian_eig(w1);
    const double top = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
    const double thr = mat::kRankTol * std::max(1.0, top);
    std::vector<double> proj(e.eigenvalues.size(), 0.0);
    for (std::size_t i = 0; i < e.eigenvalues.size(); ++i)
        if (e.eigenvalues[i] > thr) proj[i] = epsilon_power;
    return mat::HermitianPSD::from_eigensystem(e.eigenvectors, proj);
}

/// Worst-case legitimate channel: shrink every singular value of the nominal
/// channel by epsilon1 (clipped at zero), keeping its singular bases.
inline mat::ComplexMatrix worst_legit(const LegitimateUncertainty& uncert) {
    if (uncert.epsilon1 < 0.0) throw validation_error("worst_legit: negative epsilon1");
    const mat::SVDResult s = mat::svd(uncert.nominal);
    std::vector<double> shrunk(s.singulars.size());
    for (std::size_t i = 0; i < s.singulars.size(); ++i)
        shrunk[i] = std::max(s.singulars[i] - uncert.epsilon1, 0.0);
    const mat::ComplexMatrix sigma =
        mat::ComplexMatrix::diagonal_rect(uncert.nominal.rows(), uncert.nominal.cols(), shrunk);
    return s.left * sigma * s.right.adjoint();
}

/// Eigenmode gains of the worst-case legitimate channel:
/// (sigma_i(H0) - epsilon1)^2 clipped at zero, still descending.
inline std::vector<double> degraded_gains(const std::vector<double>& singulars_h0, double epsilon1) {
    if (epsilon1 < 0.0) throw validation_error("degraded_gains: negative epsilon1");
    std::vector<double> g(singulars_h0.size());
    for (std::size_t i = 0; i < singulars_h0.size(); ++i) {
        const double d = std::max(singulars_h0[i] - epsilon1, 0.0);
        g[i] = d * d;
    }
    return g;
}

/// Compound capacity when the eavesdropper is additionally rank-limited to
/// r2 >= rank(W1). The rank constraint has no effect on the capacity value;
/// the worst case becomes the subspace projector construction. Inputs with
/// rank(W1) > r2 are refused: the worst-case/compound equivalence underlying
/// this closed form breaks down in that regime, so no value is returned.
inline secrecy::CapacityReport capacity_rank_constrained(const mat::HermitianPSD& w1,
                                                         const EavesdropperUncertainty& eaves,
                                                         double total_power) {
    if (!eaves.rank_bound())
        throw validation_error("capacity_rank_constrained: uncertainty carries no rank bound");
    const secrecy::LegitimateSpectrum spec = secrecy::spectrum_of(w1);
    const int r1 = numeric_rank(spec.gains);
    if (r1 > *eaves.rank_bound())
        throw validation_error(
            "capacity_rank_constrained: rank(W1) = " + std::to_string(r1) + " exceeds the eavesdropper rank bound r2 = " +
            std::to_string(*eaves.rank_bound()) +
            "; the worst-case/compound equivalence fails for r1 > r2 and no closed form applies");
    secrecy::CapacityReport rep = secrecy::capacity_for_spectrum(spec, eaves.epsilon_power(), total_power);
    rep.worst_eaves = worst_eaves_rank(w1, eaves.epsilon_power());
    return rep;
}

/// Compound capacity under double-sided uncertainty (Gaussian noise, nominal
/// legitimate channel H0 with additive spectral-norm uncertainty, isotropic
/// eavesdropper bound). Signaling is on the eigenmodes of the degraded
/// nominal channel.
inline secrecy::CapacityReport capacity_double_sided(const LegitimateUncertainty& legit,
                                                     const EavesdropperUncertainty& eaves,
                                                     double total_power) {
    if (eaves.rank_bound())
        throw validation_error("capacity_double_sided: use capacity_double_rank for rank bounds");
    const mat::SVDResult s0 = mat::svd(legit.nominal);
    secrecy::LegitimateSpectrum spec{degraded_gains(s0.singulars, legit.epsilon1), s0.right};
    // pad with zero gains when H0 is wide/tall so the basis dimension matches
    spec.gains.resize(static_cast<std::size_t>(s0.right.rows()), 0.0);
    secrecy::CapacityReport rep =
        secrecy::capacity_for_spectrum(spec, eaves.epsilon_power(), total_power);
    rep.worst_legit_gram = mat::HermitianPSD::gram(worst_legit(legit));
    return rep;
}

/// Double-sided uncertainty with a rank-limited eavesdropper. Requires
/// rank(H0) <= r2; also emits a representative worst-case eavesdropper
/// channel V Sigma_w U0^+ with V drawn from the supplied stream (the
/// capacity does not depend on that choice).
inline secrecy::CapacityReport capacity_double_rank(const LegitimateUncertainty& legit,
                                                    const EavesdropperUncertainty& eaves,
                                                    double total_power, RngStream& rng) {
    if (!eaves.rank_bound())
        throw validation_error("capacity_double_rank: uncertainty carries no rank bound");
    const mat::SVDResult s0 = mat::svd(legit.nominal);
    const int r1 = numeric_rank(s0.singulars);
    if (r1 > *eaves.rank_bound())
        throw validation_error(
            "capacity_double_rank: rank(H0) = " + std::to_string(r1) + " exceeds the eavesdropper rank bound r2 = " +
            std::to_string(*eaves.rank_bound()) +
            "; the worst-case/compound equivalence fails for r1 > r2 and no closed form applies");

    secrecy::LegitimateSpectrum spec{degraded_gains(s0.singulars, legit.epsilon1), s0.right};
    spec.gains.resize(static_cast<std::size_t>(s0.right.rows()), 0.0);
    secrecy::CapacityReport rep =
        secrecy::capacity_for_spectrum(spec, eaves.epsilon_power(), total_power);
    rep.worst_legit_gram = mat::HermitianPSD::gram(worst_legit(legit));

    const int n = s0.right.rows();
    std::vector<double> eig(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sv(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < r1; ++i) {
        eig[static_cast<std::size_t>(i)] = eaves.epsilon_power();
        sv[static_cast<std::size_t>(i)] = std::sqrt(eaves.epsilon_power());
    }
    rep.worst_eaves = mat::HermitianPSD::from_eigensystem(s0.right, eig);
    const mat::ComplexMatrix v = mat::random_unitary(n, rng);
    rep.worst_eaves_channel =
        v * mat::ComplexMatrix::diagonal_rect(n, n, sv) * s0.right.adjoint();
    return rep;
}

/// Perturbation achieving equality in the singular-value lower bound
/// sigma_i((A+B)C) >= (sigma_i(A) - sigma_1(B))_+ sigma_i(C):
/// B = -U diag(min(sigma_i(A), eps)) V^+ in A's singular bases.
inline mat::ComplexMatrix equality_perturbation(const mat::SVDResult& a_svd, double epsilon) {
    if (epsilon < 0.0) throw validation_error("equality_perturbation: negative epsilon");
    std::vector<double> clipped(a_svd.singulars.size());
    for (std::size_t i = 0; i < a_svd.singulars.size(); ++i)
        clipped[i] = std::min(a_svd.singulars[i], epsilon);
    const int m = a_svd.left.rows(), n = a_svd.right.rows();
    return -1.0 * (a_svd.left * mat::ComplexMatrix::diagonal_rect(m, n, clipped) * a_svd.right.adjoint());
}

}  // namespace wiretap::uncertainty
