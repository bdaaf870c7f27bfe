#pragma once
// Independent verification machinery: Monte-Carlo saddle-point checks for
// all four uncertainty scenarios, a brute-force grid oracle for the
// closed-form capacity, and maximum/maximal-element experiments on finite
// PSD families.
//
// The samplers deterministically inject boundary members (the worst-case
// channels, the zero matrix, the equality perturbation) alongside random
// draws; random sampling alone rarely touches the binding constraints that
// make the saddle inequalities tight.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "wiretap/matops.hpp"
#include "wiretap/secrecy.hpp"
#include "wiretap/uncertainty.hpp"

namespace wiretap::verify {

enum class Scenario { isotropic, rank_constrained, double_sided, double_rank };

inline const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::isotropic: return "isotropic";
        case Scenario::rank_constrained: return "rank_constrained";
        case Scenario::double_sided: return "double_sided";
        case Scenario::double_rank: return "double_rank";
    }
    return "?";
}

/// Outcome of a Monte-Carlo saddle check. Violations are signed slacks: the
/// left one is max over sampled R of C(R, worst channels) - C_c, the right
/// one is max over sampled channels of C_c - C(R*, channel). A pass is both
/// <= 1e-9.
struct SaddleReport {
    long samples = 0;
    double max_left_violation = 0.0;
    double max_right_violation = 0.0;
    std::uint64_t seed = 0;
    Scenario scenario = Scenario::isotropic;
    double capacity = 0.0;
    bool equality_perturbation_sampled = false;

    bool pass(double tol = 1e-9) const {
        return max_left_violation <= tol && max_right_violation <= tol;
    }
};

/// Random PSD with trace <= total_power. Mixes draws with trace exactly at
/// the budget, uniformly scaled traces, rank-deficient members and (when
/// supplied) the exact matrix `special`.
inline mat::HermitianPSD sample_covariance(int n, double total_power, RngStream& rng,
                                           const mat::HermitianPSD* special = nullptr) {
    if (total_power < 0.0) throw validation_error("sample_covariance: negative power budget");
    if (total_power == 0.0) return mat::HermitianPSD::zero(n);
    const double mode = uniform_unit(rng);
    if (special != nullptr && mode >= 0.875) return *special;

    const mat::ComplexMatrix u = mat::random_unitary(n, rng);
    std::vector<double> d(static_cast<std::size_t>(n));
    for (double& x : d) x = uniform_unit(rng);
    if (mode < 0.25) {
        // rank-deficient: zero a random strict subset of the eigenvalues
        const int zeros = 1 + static_cast<int>(uniform_unit(rng) * (n - 1));
        for (int i = 0; i < std::min(zeros, n - 1); ++i) d[static_cast<std::size_t>(i)] = 0.0;
    }
    double tr = 0.0;
    for (double x : d) tr += x;
    if (tr <= 0.0) d[static_cast<std::size_t>(n - 1)] = tr = 1.0;
    // trace pinned to the budget, or uniform in (0, P_T]
    const double target = mode < 0.55 ? total_power : (1.0 - uniform_unit(rng)) * total_power;
    const double scale = target / tr;
    for (double& x : d) x *= scale;
    return mat::HermitianPSD::from_eigensystem(u, d);
}

/// Random feasible eavesdropper Gram matrix: lambda_1 <= eps_power and, when
/// given, rank <= rank_bound. Includes the zero matrix and full-gain
/// boundary members.
inline mat::HermitianPSD sample_eaves(int n, double eps_power, std::optional<int> rank_bound,
                                      RngStream& rng) {
    if (eps_power < 0.0) throw validation_error("sample_eaves: negative gain bound");
    if (eps_power == 0.0) return mat::HermitianPSD::zero(n);
    const int r = rank_bound ? std::min(*rank_bound, n) : n;
    const double mode = uniform_unit(rng);
    if (mode < 0.1) return mat::HermitianPSD::zero(n);
    const mat::ComplexMatrix u = mat::random_unitary(n, rng);
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    const bool boundary = mode < 0.35;
    for (int i = 0; i < r; ++i)
        d[static_cast<std::size_t>(i)] = boundary ? eps_power : uniform_unit(rng) * eps_power;
    return mat::HermitianPSD::from_eigensystem(u, d);
}

struct DeltaSample {
    mat::ComplexMatrix delta;
    bool equality_case = false;
};

/// Random legitimate-channel perturbation with sigma_1 <= epsilon1. The
/// equality-achieving perturbation is drawn with fixed probability 1/8 and
/// flagged.
inline DeltaSample sample_delta_h(const mat::SVDResult& nominal_svd, double epsilon1,
                                  RngStream& rng) {
    if (epsilon1 < 0.0) throw validation_error("sample_delta_h: negative epsilon1");
    const int m = nominal_svd.left.rows(), n = nominal_svd.right.rows();
    if (epsilon1 == 0.0) return {mat::ComplexMatrix(m, n), false};
    if (uniform_unit(rng) < 0.125)
        return {uncertainty::equality_perturbation(nominal_svd, epsilon1), true};
    mat::ComplexMatrix g(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = mat::standard_complex_normal(rng);
    const double s1 = mat::spectral_norm(g);
    const double target = uniform_unit(rng) * epsilon1;
    return {(s1 > 0.0 ? target / s1 : 0.0) * g, false};
}

/// Scenario description for a saddle check; use the factory functions.
struct ScenarioConfig {
    Scenario scenario = Scenario::isotropic;
    mat::HermitianPSD w1 = mat::HermitianPSD::zero(1);        // single-sided scenarios
    mat::ComplexMatrix h0;                                    // double-sided scenarios
    double eps_power = 0.0;
    double eps1 = 0.0;
    std::optional<int> rank_bound;

    static ScenarioConfig isotropic(mat::HermitianPSD w1, double eps_power) {
        ScenarioConfig c;
        c.scenario = Scenario::isotropic;
        c.w1 = std::move(w1);
        c.eps_power = eps_power;
        return c;
    }
    static ScenarioConfig rank_constrained(mat::HermitianPSD w1, double eps_power, int r2) {
        ScenarioConfig c;
        c.scenario = Scenario::rank_constrained;
        c.w1 = std::move(w1);
        c.eps_power = eps_power;
        c.rank_bound = r2;
        return c;
    }
    static ScenarioConfig double_sided(mat::ComplexMatrix h0, double eps1, double eps_power) {
        ScenarioConfig c;
        c.scenario = Scenario::double_sided;
        c.h0 = std::move(h0);
        c.eps1 = eps1;
        c.eps_power = eps_power;
        return c;
    }
    static ScenarioConfig double_rank(mat::ComplexMatrix h0, double eps1, double eps_power, int r2) {
        ScenarioConfig c;
        c.scenario = Scenario::double_rank;
        c.h0 = std::move(h0);
        c.eps1 = eps1;
        c.eps_power = eps_power;
        c.rank_bound = r2;
        return c;
    }
};

/// Monte-Carlo check of the saddle inequalities
///   C(R, worst channels) <= C_c <= C(R*, any feasible channels)
/// over `samples` draws on each side, with the worst-case members, the zero
/// matrix and the equality perturbation injected deterministically. The
/// work is chunked into `workers` independent streams derived from `seed`
/// and merged by max-reduction, so the report is deterministic for a fixed
/// (seed, workers) pair.
inline SaddleReport verify_saddle(const ScenarioConfig& cfg, double total_power, long samples,
                                  std::uint64_t seed, int workers = 1) {
    if (samples < 0) throw validation_error("verify_saddle: negative sample count");
    if (workers < 1) throw validation_error("verify_saddle: workers must be >= 1");

    SaddleReport rep;
    rep.samples = samples;
    rep.seed = seed;
    rep.scenario = cfg.scenario;

    const bool double_sided =
        cfg.scenario == Scenario::double_sided || cfg.scenario == Scenario::double_rank;

    // closed form: capacity, optimal covariance, worst-case channels
    secrecy::CapacityReport closed;
    RngStream rep_rng(derive_seed(seed, 0xd0d0));
    switch (cfg.scenario) {
        case Scenario::isotropic:
            closed = secrecy::capacity_isotropic(cfg.w1, cfg.eps_power, total_power);
            break;
        case Scenario::rank_constrained:
            closed = uncertainty::capacity_rank_constrained(
                cfg.w1, uncertainty::EavesdropperUncertainty::power_gain(cfg.eps_power, cfg.rank_bound),
                total_power);
            break;
        case Scenario::double_sided:
            closed = uncertainty::capacity_double_sided(
                {cfg.h0, cfg.eps1}, uncertainty::EavesdropperUncertainty::power_gain(cfg.eps_power),
                total_power);
            break;
        case Scenario::double_rank:
            closed = uncertainty::capacity_double_rank(
                {cfg.h0, cfg.eps1},
                uncertainty::EavesdropperUncertainty::power_gain(cfg.eps_power, cfg.rank_bound),
                total_power, rep_rng);
            break;
    }
    rep.capacity = closed.capacity;

    const mat::HermitianPSD& rstar = closed.optimal_covariance;
    const mat::HermitianPSD left_w1 =
        double_sided ? *closed.worst_legit_gram : cfg.w1;  // W_1w substitutes W1 on the left
    const int n = rstar.dim();

    const std::optional<mat::SVDResult> h0_svd =
        double_sided ? std::optional<mat::SVDResult>(mat::svd(cfg.h0)) : std::nullopt;

    double left = -std::numeric_limits<double>::infinity();
    double right = -std::numeric_limits<double>::infinity();

    auto check_left = [&](const mat::HermitianPSD& r) {
        left = std::max(left, secrecy::secrecy_rate(r, left_w1, closed.worst_eaves) - rep.capacity);
    };
    auto check_right = [&](const mat::HermitianPSD& w1_draw, const mat::HermitianPSD& w2_draw) {
        right = std::max(right, rep.capacity - secrecy::secrecy_rate(rstar, w1_draw, w2_draw));
    };

    if (samples > 0) {
        // deterministic corner cases first
        check_left(rstar);
        check_left(mat::HermitianPSD::zero(n));
        check_right(left_w1, closed.worst_eaves);
        check_right(left_w1, mat::HermitianPSD::zero(n));
        if (double_sided) {
            const mat::ComplexMatrix dh = uncertainty::equality_perturbation(*h0_svd, cfg.eps1);
            check_right(mat::HermitianPSD::gram(cfg.h0 + dh),
                        mat::HermitianPSD::scaled_identity(n, cfg.eps_power));
            rep.equality_perturbation_sampled = true;
        }

        const long base = samples / workers;
        long rem = samples % workers;
        for (int w = 0; w < workers; ++w) {
            RngStream rng(derive_seed(seed, static_cast<std::uint64_t>(w)));
            const long count = base + (w < rem ? 1 : 0);
            for (long i = 0; i < count; ++i) {
                check_left(sample_covariance(n, total_power, rng, &rstar));
                mat::HermitianPSD w2 = sample_eaves(n, cfg.eps_power, cfg.rank_bound, rng);
                if (double_sided) {
                    const DeltaSample ds = sample_delta_h(*h0_svd, cfg.eps1, rng);
                    rep.equality_perturbation_sampled |= ds.equality_case;
                    check_right(mat::HermitianPSD::gram(cfg.h0 + ds.delta), w2);
                } else {
                    check_right(cfg.w1, w2);
                }
            }
        }
    }
    rep.max_left_violation = samples > 0 ? left : 0.0;
    rep.max_right_violation = samples > 0 ? right : 0.0;
    return rep;
}

/// Exhaustive grid search of sum_i ln((1+g_i l_i)/(1+eps l_i)) over the
/// power simplex {l >= 0, sum l_i = P_T} (plus the all-zero point), in
/// increments of `step`. Independent oracle for the closed-form capacity;
/// restricted to <= 3 modes.
inline double brute_force_capacity(const std::vector<double>& gains, double eps_power,
                                   double total_power, double step) {
    if (gains.empty() || gains.size() > 3)
        throw validation_error("brute_force_capacity: supports 1..3 modes only");
    if (step <= 0.0 || total_power < 0.0)
        throw validation_error("brute_force_capacity: bad step or power");

    auto value = [&](double g, double p) {
        return std::log((1.0 + g * p) / (1.0 + eps_power * p));
    };
    double best = 0.0;  // the zero allocation is always feasible
    const long k = std::lround(std::ceil(total_power / step));
    if (gains.size() == 1) {
        best = std::max(best, value(gains[0], total_power));
    } else if (gains.size() == 2) {
        for (long i = 0; i <= k; ++i) {
            const double l1 = std::min(static_cast<double>(i) * step, total_power);
            best = std::max(best, value(gains[0], l1) + value(gains[1], total_power - l1));
        }
    } else {
        for (long i = 0; i <= k; ++i) {
            const double l1 = std::min(static_cast<double>(i) * step, total_power);
            const double v1 = value(gains[0], l1);
            for (long j = 0; i + j <= k; ++j) {
                const double l2 = std::min(static_cast<double>(j) * step, total_power - l1);
                best = std::max(best,
                                v1 + value(gains[1], l2) + value(gains[2], total_power - l1 - l2));
            }
        }
    }
    return best;
}

/// Finite family of PSD matrices of a common dimension.
struct PSDFamily {
    std::vector<mat::HermitianPSD> members;

    int dim() const { return members.front().dim(); }
    void validate() const {
        if (members.empty()) throw validation_error("PSDFamily: empty family");
        for (const auto& m : members)
            if (m.dim() != members.front().dim())
                throw validation_error("PSDFamily: mixed dimensions");
    }
};

/// PSD order A >= B, decided by the smallest eigenvalue of A - B with the
/// single documented tolerance -1e-10.
inline bool psd_geq(const mat::HermitianPSD& a, const mat::HermitianPSD& b) {
    return mat::min_eigenvalue(a.matrix() - b.matrix()) >= -mat::kOrderTol;
}

/// Index of the member dominating every other member, if one exists.
inline std::optional<std::size_t> maximum_element(const PSDFamily& family) {
    family.validate();
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        bool dominates = true;
        for (std::size_t j = 0; j < family.members.size() && dominates; ++j)
            if (j != i && !psd_geq(family.members[i], family.members[j])) dominates = false;
        if (dominates) return i;
    }
    return std::nullopt;
}

/// Indices of members not strictly dominated by any other member. Nonempty
/// for every finite family.
inline std::vector<std::size_t> maximal_elements(const PSDFamily& family) {
    family.validate();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < family.members.size() && !dominated; ++j) {
            if (j == i) continue;
            // strictly greater: j >= i but not i >= j
            if (psd_geq(family.members[j], family.members[i]) &&
                !psd_geq(family.members[i], family.members[j]))
                dominated = true;
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

struct MaximalReductionReport {
    long draws = 0;
    long agreements = 0;              // min over family == min over maximal elements (1e-12)
    double max_discrepancy = 0.0;
    bool has_maximum = false;
    std::optional<std::size_t> maximum_index;
    bool maximum_always_minimizes = true;  // meaningful only when has_maximum
};

/// Checks, over sampled transmit covariances, that minimizing the rate over
/// the whole family equals minimizing over its maximal elements, and that a
/// maximum element (when present) attains the minimum.
inline MaximalReductionReport check_min_over_maximal(const PSDFamily& family,
                                                     const mat::HermitianPSD& w1_fixed,
                                                     double total_power, long r_samples,
                                                     std::uint64_t seed) {
    family.validate();
    MaximalReductionReport rep;
    rep.draws = r_samples;
    rep.maximum_index = maximum_element(family);
    rep.has_maximum = rep.maximum_index.has_value();
    const std::vector<std::size_t> maximal = maximal_elements(family);

    RngStream rng(seed);
    const int n = family.dim();
    for (long it = 0; it < r_samples; ++it) {
        const mat::HermitianPSD r = sample_covariance(n, total_power, rng);
        double min_all = std::numeric_limits<double>::infinity();
        for (const auto& w2 : family.members)
            min_all = std::min(min_all, secrecy::secrecy_rate(r, w1_fixed, w2));
        double min_maximal = std::numeric_limits<double>::infinity();
        for (std::size_t j : maximal)
            min_maximal = std::min(min_maximal, secrecy::secrecy_rate(r, w1_fixed, family.members[j]));
        const double disc = std::abs(min_all - min_maximal);
        rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
        if (disc <= 1e-12) ++rep.agreements;
        if (rep.has_maximum) {
            const double at_max =
                secrecy::secrecy_rate(r, w1_fixed, family.members[*rep.maximum_index]);
            if (std::abs(at_max - min_all) > 1e-12) rep.maximum_always_minimizes = false;
        }
    }
    return rep;
}

}  // namespace wiretap::verify
