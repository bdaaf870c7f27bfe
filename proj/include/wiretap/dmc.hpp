#pragma once
// Finite-alphabet compound wiretap computations: mutual information, the
// compound achievable-rate lower bound on small alphabets, channel
// quantization onto the 1/L grid with its approximation-bound checks,
// closed-form reliability/leakage bound evaluators, and the channel
// orderings (degraded, less capable, noisier-via-concavity).
//
// All entropies and rates are in nats.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wiretap/matops.hpp"  // errors + RngStream

namespace wiretap::dmc {

inline constexpr double kRowSumTol = 1e-12;

/// Binary entropy in nats; defined on [0, 1], zero at the endpoints.
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw validation_error("binary_entropy: argument outside [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

/// Row-stochastic conditional distribution P(out | in).
class FiniteChannel {
public:
    FiniteChannel(int in_size, int out_size, std::vector<double> probs)
        : in_(in_size), out_(out_size), p_(std::move(probs)) {
        if (in_ < 1 || out_ < 1) throw validation_error("FiniteChannel: empty alphabet");
        if (p_.size() != static_cast<std::size_t>(in_) * out_)
            throw validation_error("FiniteChannel: matrix size mismatch");
        for (int x = 0; x < in_; ++x) {
            double s = 0.0;
            for (int y = 0; y < out_; ++y) {
                const double v = (*this)(x, y);
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw validation_error("FiniteChannel: negative or non-finite entry in row " +
                                           std::to_string(x));
                s += v;
            }
            if (std::abs(s - 1.0) > kRowSumTol)
                throw validation_error("FiniteChannel: row " + std::to_string(x) + " sums to " +
                                       std::to_string(s) + ", not 1");
        }
    }

    static FiniteChannel bsc(double flip) {
        return FiniteChannel(2, 2, {1.0 - flip, flip, flip, 1.0 - flip});
    }

    int in_size() const { return in_; }
    int out_size() const { return out_; }
    double operator()(int x, int y) const { return p_[static_cast<std::size_t>(x) * out_ + y]; }

private:
    int in_, out_;
    std::vector<double> p_;
};

struct WiretapPair {
    FiniteChannel legit;
    FiniteChannel eaves;
};

/// State-indexed wiretap pairs over shared alphabets.
struct CompoundDMCFamily {
    std::vector<WiretapPair> states;

    void validate() const {
        if (states.empty()) throw validation_error("CompoundDMCFamily: no states");
        const int x = states.front().legit.in_size();
        const int y = states.front().legit.out_size();
        const int z = states.front().eaves.out_size();
        for (std::size_t s = 0; s < states.size(); ++s) {
            const WiretapPair& w = states[s];
            if (w.legit.in_size() != x || w.eaves.in_size() != x || w.legit.out_size() != y ||
                w.eaves.out_size() != z)
                throw validation_error("CompoundDMCFamily: state " + std::to_string(s) +
                                       " has mismatched alphabet sizes");
        }
    }
};

/// Probability distribution over the input alphabet.
class InputDistribution {
public:
    explicit InputDistribution(std::vector<double> probs) : p_(std::move(probs)) {
        if (p_.empty()) throw validation_error("InputDistribution: empty");
        double s = 0.0;
        for (double v : p_) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw validation_error("InputDistribution: negative or non-finite entry");
            s += v;
        }
        if (std::abs(s - 1.0) > kRowSumTol)
            throw validation_error("InputDistribution: entries sum to " + std::to_string(s));
    }

    static InputDistribution uniform(int n) {
        return InputDistribution(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    }
    static InputDistribution vertex(int n, int x) {
        std::vector<double> p(static_cast<std::size_t>(n), 0.0);
        p[static_cast<std::size_t>(x)] = 1.0;
        return InputDistribution(std::move(p));
    }
    /// Uniform sample from the simplex (normalized exponentials).
    static InputDistribution sample(int n, RngStream& rng) {
        std::vector<double> p(static_cast<std::size_t>(n));
        double s = 0.0;
        for (double& v : p) {
            v = -std::log(1.0 - uniform_unit(rng));
            s += v;
        }
        if (s <= 0.0) return uniform(n);
        for (double& v : p) v /= s;
        return InputDistribution(std::move(p));
    }

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
};

/// I(X;Y) in nats, with 0 ln 0 = 0. Nonnegative, at most ln(min(|X|, |Y|)).
inline double mutual_information(const InputDistribution& p, const FiniteChannel& ch) {
    if (p.size() != ch.in_size()) throw validation_error("mutual_information: size mismatch");
    std::vector<double> out(static_cast<std::size_t>(ch.out_size()), 0.0);
    for (int x = 0; x < ch.in_size(); ++x)
        for (int y = 0; y < ch.out_size(); ++y) out[static_cast<std::size_t>(y)] += p[x] * ch(x, y);
    double mi = 0.0;
    for (int x = 0; x < ch.in_size(); ++x) {
        if (p[x] == 0.0) continue;
        for (int y = 0; y < ch.out_size(); ++y) {
            const double w = ch(x, y);
            if (w > 0.0) mi += p[x] * w * std::log(w / out[static_cast<std::size_t>(y)]);
        }
    }
    return std::max(mi, 0.0);
}

/// min over states of I(X;Y_s) minus max over states of I(X;Z_s).
inline double compound_rate_objective(const InputDistribution& p, const CompoundDMCFamily& family) {
    double min_legit = std::numeric_limits<double>::infinity();
    double max_eaves = -std::numeric_limits<double>::infinity();
    for (const WiretapPair& s : family.states) {
        min_legit = std::min(min_legit, mutual_information(p, s.legit));
        max_eaves = std::max(max_eaves, mutual_information(p, s.eaves));
    }
    return min_legit - max_eaves;
}

namespace detail {

// Enumerate the lattice {k / K : sum k = K} in lexicographic order.
inline void for_each_lattice_point(int dims, long resolution,
                                   const std::function<void(const std::vector<double>&)>& fn) {
    std::vector<long> k(static_cast<std::size_t>(dims), 0);
    std::vector<double> p(static_cast<std::size_t>(dims), 0.0);
    std::function<void(int, long)> rec = [&](int dim, long left) {
        if (dim == dims - 1) {
            k[static_cast<std::size_t>(dim)] = left;
            for (int i = 0; i < dims; ++i)
                p[static_cast<std::size_t>(i)] =
                    static_cast<double>(k[static_cast<std::size_t>(i)]) / static_cast<double>(resolution);
            fn(p);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            k[static_cast<std::size_t>(dim)] = v;
            rec(dim + 1, left - v);
        }
    };
    rec(0, resolution);
}

}  // namespace detail

/// Achievable-rate lower bound max over P_X of
/// (min_s I(X;Y_s) - max_s I(X;Z_s)), clamped below at zero. Grid search over
/// the input simplex with step `grid_step`, refined by one coordinate-ascent
/// pass from the best grid point. The objective is neither concave nor
/// smooth where the binding state switches, so the global pass uses no
/// derivatives. Restricted to |X| <= 4.
inline std::pair<double, InputDistribution> compound_rate_lower_bound(
    const CompoundDMCFamily& family, double grid_step) {
    family.validate();
    const int x = family.states.front().legit.in_size();
    if (x > 4) throw validation_error("compound_rate_lower_bound: input alphabet too large for grid");
    if (grid_step <= 0.0 || grid_step > 1.0)
        throw validation_error("compound_rate_lower_bound: bad grid step");

    const long resolution = std::lround(std::ceil(1.0 / grid_step));
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_p;
    detail::for_each_lattice_point(x, resolution, [&](const std::vector<double>& p) {
        const double v = compound_rate_objective(InputDistribution(p), family);
        if (v > best) {
            best = v;
            best_p = p;
        }
    });

    // one coordinate-ascent pass with shrinking moves between coordinate pairs
    for (double delta = grid_step / 2.0; delta >= grid_step / 1024.0; delta /= 2.0) {
        for (int i = 0; i < x; ++i) {
            for (int j = 0; j < x; ++j) {
                if (i == j) continue;
                std::vector<double> q = best_p;
                const double move = std::min(delta, q[static_cast<std::size_t>(j)]);
                if (move <= 0.0) continue;
                q[static_cast<std::size_t>(i)] += move;
                q[static_cast<std::size_t>(j)] -= move;
                const double v = compound_rate_objective(InputDistribution(q), family);
                if (v > best) {
                    best = v;
                    best_p = q;
                }
            }
        }
    }
    return {std::max(best, 0.0), InputDistribution(best_p)};
}

/// Rounds every entry to the nearest multiple of 1/L and repairs each row
/// sum by adjusting the row's largest entry. Satisfies the additive bound
/// |W - W_L| <= |Y||Z|/L entrywise; the multiplicative lower bound on tiny
/// entries is checked separately (see quantization_check) rather than
/// guaranteed. `paired_out_size` is the output alphabet of the companion
/// channel in the wiretap pair (defaults to this channel's own).
inline FiniteChannel quantize_channel(const FiniteChannel& ch, long levels,
                                      int paired_out_size = 0) {
    const long y = ch.out_size();
    const long z = paired_out_size > 0 ? paired_out_size : y;
    if (levels < 2 * y * y * z * z)
        throw validation_error("quantize_channel: L below 2 |Y|^2 |Z|^2");
    std::vector<double> q(static_cast<std::size_t>(ch.in_size()) * ch.out_size());
    for (int xi = 0; xi < ch.in_size(); ++xi) {
        long sum = 0;
        long largest = 0;
        std::vector<long> counts(static_cast<std::size_t>(ch.out_size()));
        for (int yi = 0; yi < ch.out_size(); ++yi) {
            counts[static_cast<std::size_t>(yi)] =
                std::lround(ch(xi, yi) * static_cast<double>(levels));
            sum += counts[static_cast<std::size_t>(yi)];
            if (counts[static_cast<std::size_t>(yi)] > counts[static_cast<std::size_t>(largest)])
                largest = yi;
        }
        counts[static_cast<std::size_t>(largest)] += levels - sum;  // repair the row sum
        for (int yi = 0; yi < ch.out_size(); ++yi)
            q[static_cast<std::size_t>(xi) * ch.out_size() + yi] =
                static_cast<double>(counts[static_cast<std::size_t>(yi)]) / static_cast<double>(levels);
    }
    return FiniteChannel(ch.in_size(), ch.out_size(), std::move(q));
}

/// One checked approximation bound: `margin` = limit minus the worst
/// observed deviation (nonnegative iff the bound holds).
struct BoundCheck {
    bool holds = true;
    double margin = 0.0;
};

struct MultiplicativeViolation {
    int state_x = 0;
    int state_y = 0;
    double original = 0.0;
    double quantized = 0.0;
};

/// Per-bound outcome of comparing a wiretap pair against its quantized
/// version: the additive entrywise bounds, the multiplicative bounds (with
/// violating entries listed explicitly; possible for near-zero entries under
/// nearest-grid rounding), and the mutual-information bounds evaluated over
/// random input distributions.
struct QuantizationReport {
    BoundCheck additive_legit, additive_eaves;
    BoundCheck mult_legit, mult_eaves;
    BoundCheck mi_legit, mi_eaves;
    std::vector<MultiplicativeViolation> mult_violations_legit, mult_violations_eaves;
    double additive_limit = 0.0;
    double mi_limit = 0.0;
};

namespace detail {

inline void check_additive(const FiniteChannel& a, const FiniteChannel& b, double limit,
                           BoundCheck& out) {
    double worst = 0.0;
    for (int x = 0; x < a.in_size(); ++x)
        for (int y = 0; y < a.out_size(); ++y) worst = std::max(worst, std::abs(a(x, y) - b(x, y)));
    out.margin = limit - worst;
    out.holds = out.margin >= 0.0;
}

inline void check_multiplicative(const FiniteChannel& orig, const FiniteChannel& quant,
                                 double factor, BoundCheck& out,
                                 std::vector<MultiplicativeViolation>& violations) {
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int x = 0; x < orig.in_size(); ++x)
        for (int y = 0; y < orig.out_size(); ++y) {
            const double margin = factor * quant(x, y) - orig(x, y);
            worst_margin = std::min(worst_margin, margin);
            if (margin < 0.0) violations.push_back({x, y, orig(x, y), quant(x, y)});
        }
    out.margin = worst_margin;
    out.holds = violations.empty();
}

}  // namespace detail

/// Compares a wiretap pair against its quantized pair on every
/// grid-approximation bound, sampling `p_samples` random input
/// distributions for the mutual-information bounds.
inline QuantizationReport quantization_check(const FiniteChannel& legit, const FiniteChannel& eaves,
                                             const FiniteChannel& legit_q,
                                             const FiniteChannel& eaves_q, long levels,
                                             long p_samples, std::uint64_t seed) {
    if (legit.in_size() != eaves.in_size() || legit.in_size() != legit_q.in_size() ||
        legit.out_size() != legit_q.out_size() || eaves.out_size() != eaves_q.out_size() ||
        eaves.in_size() != eaves_q.in_size())
        throw validation_error("quantization_check: shape mismatch");

    const double y = legit.out_size();
    const double z = eaves.out_size();
    QuantizationReport rep;
    rep.additive_limit = y * z / static_cast<double>(levels);
    rep.mi_limit = 2.0 * std::pow(y * z, 1.5) / std::sqrt(static_cast<double>(levels));
    const double factor = std::exp2(2.0 * y * y * z * z / static_cast<double>(levels));

    detail::check_additive(legit, legit_q, rep.additive_limit, rep.additive_legit);
    detail::check_additive(eaves, eaves_q, rep.additive_limit, rep.additive_eaves);
    detail::check_multiplicative(legit, legit_q, factor, rep.mult_legit, rep.mult_violations_legit);
    detail::check_multiplicative(eaves, eaves_q, factor, rep.mult_eaves, rep.mult_violations_eaves);

    RngStream rng(seed);
    double worst_legit = 0.0, worst_eaves = 0.0;
    for (long i = 0; i < p_samples; ++i) {
        const InputDistribution p = InputDistribution::sample(legit.in_size(), rng);
        worst_legit = std::max(worst_legit, std::abs(mutual_information(p, legit) -
                                                     mutual_information(p, legit_q)));
        worst_eaves = std::max(worst_eaves, std::abs(mutual_information(p, eaves) -
                                                     mutual_information(p, eaves_q)));
    }
    rep.mi_legit = {rep.mi_limit - worst_legit >= 0.0, rep.mi_limit - worst_legit};
    rep.mi_eaves = {rep.mi_limit - worst_eaves >= 0.0, rep.mi_limit - worst_eaves};
    return rep;
}

/// Parameters of the reliability/leakage bound evaluators.
struct BoundParams {
    long n = 0;        // blocklength
    long levels = 0;   // quantization levels L
    int x_size = 0, y_size = 0, z_size = 0;
    double alpha = 0.0, beta = 0.0;  // error/secrecy exponents
    double a = 0.0;                  // scaling constant for L = a n^2
};

struct LeakageBounds {
    double error_bound = 0.0;          // finite-state code error at L levels
    double leakage_bound = 0.0;        // leakage transfer term at L levels (nats)
    double approx_error_bound = 0.0;   // error after approximation with L = a n^2
    double approx_leakage_bound = 0.0; // total leakage with L = a n^2 (nats)
};

/// Evaluates the four closed-form reliability/leakage bounds:
///   error:          (L+1)^{|X||Y||Z|/4} 2^{-n alpha}
///   leakage:        4n (|Y||Z|^2 ln|Z| / L + H2(|Y||Z|^2 / L))
///   approx error:   (L'+1)^{|X||Y||Z|/4} 2^{-n (alpha - 2|Y|^2|Z|^2/L')}
///   approx leakage: 2^{-n beta} + the leakage term, both with L' = a n^2.
inline LeakageBounds leakage_bound(const BoundParams& p) {
    if (p.n < 1 || p.levels < 1 || p.x_size < 1 || p.y_size < 1 || p.z_size < 1 ||
        p.alpha <= 0.0 || p.beta <= 0.0 || p.a <= 0.0)
        throw validation_error("leakage_bound: parameters must be positive");
    const double y = p.y_size, z = p.z_size;
    if (p.a <= 2.0 * y * y * z * z * std::max(1.0, 1.0 / p.alpha))
        throw validation_error("leakage_bound: a must exceed 2 |Y|^2 |Z|^2 max{1, 1/alpha}");

    const double exponent = static_cast<double>(p.x_size) * y * z / 4.0;
    const double n = static_cast<double>(p.n);

    auto transfer = [&](double lev) {
        const double arg = y * z * z / lev;
        if (arg >= 1.0)
            throw validation_error("leakage_bound: |Y||Z|^2 / L >= 1 is outside the entropy bound's domain");
        return 4.0 * n * (y * z * z * std::log(z) / lev + binary_entropy(arg));
    };

    LeakageBounds out;
    const double lev = static_cast<double>(p.levels);
    out.error_bound = std::pow(lev + 1.0, exponent) * std::exp2(-n * p.alpha);
    out.leakage_bound = transfer(lev);
    const double scaled = p.a * n * n;
    out.approx_error_bound =
        std::pow(scaled + 1.0, exponent) * std::exp2(-n * (p.alpha - 2.0 * y * y * z * z / scaled));
    out.approx_leakage_bound = std::exp2(-n * p.beta) + transfer(scaled);
    return out;
}

/// Physical degradedness: true iff a row-stochastic D with ||V - W D||_inf
/// <= tol exists. Solved as a feasibility problem by alternating projections
/// between the affine constraint W D = V and the per-row probability
/// simplex; iteration cap 1e5, declared infeasible when the residual
/// stagnates (relative improvement < 1e-12 over 1000 iterations) above tol.
inline bool is_degraded(const FiniteChannel& legit, const FiniteChannel& eaves, double tol = 1e-9) {
    if (legit.in_size() != eaves.in_size())
        throw validation_error("is_degraded: input alphabets differ");
    const int x = legit.in_size(), y = legit.out_size(), z = eaves.out_size();

    // pseudoinverse of W through the Gram-based SVD (real data, complex carrier)
    mat::ComplexMatrix w(x, y);
    for (int i = 0; i < x; ++i)
        for (int j = 0; j < y; ++j) w(i, j) = legit(i, j);
    const mat::SVDResult ws = mat::svd(w);
    const double top = ws.singulars.empty() ? 0.0 : ws.singulars.front();
    std::vector<double> inv(ws.singulars.size(), 0.0);
    for (std::size_t i = 0; i < ws.singulars.size(); ++i)
        if (ws.singulars[i] > mat::kRankTol * std::max(1.0, top)) inv[i] = 1.0 / ws.singulars[i];
    const mat::ComplexMatrix pinv =
        ws.right * mat::ComplexMatrix::diagonal_rect(y, x, inv) * ws.left.adjoint();

    // rows of D live on the z-simplex; columns satisfy W d_col = v_col
    std::vector<std::vector<double>> d(static_cast<std::size_t>(y),
                                       std::vector<double>(static_cast<std::size_t>(z), 1.0 / z));

    auto residual = [&]() {
        double r = 0.0;
        for (int i = 0; i < x; ++i)
            for (int k = 0; k < z; ++k) {
                double s = 0.0;
                for (int j = 0; j < y; ++j)
                    s += legit(i, j) * d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                r = std::max(r, std::abs(s - eaves(i, k)));
            }
        return r;
    };

    auto project_simplex_row = [&](std::vector<double>& row) {
        // Euclidean projection onto {x >= 0, sum x = 1}
        std::vector<double> sorted = row;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        double cum = 0.0, theta = 0.0;
        int support = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            cum += sorted[i];
            const double t = (cum - 1.0) / static_cast<double>(i + 1);
            if (sorted[i] - t > 0.0) {
                theta = t;
                support = static_cast<int>(i + 1);
            }
        }
        (void)support;
        for (double& v : row) v = std::max(v - theta, 0.0);
    };

    double best = residual();
    double last_check = best;
    const long cap = 100000;
    for (long it = 1; it <= cap; ++it) {
        // affine projection, column by column: d <- d - W^+ (W d - v)
        for (int k = 0; k < z; ++k) {
            std::vector<double> wd(static_cast<std::size_t>(x), 0.0);
            for (int i = 0; i < x; ++i) {
                for (int j = 0; j < y; ++j)
                    wd[static_cast<std::size_t>(i)] +=
                        legit(i, j) * d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                wd[static_cast<std::size_t>(i)] -= eaves(i, k);
            }
            for (int j = 0; j < y; ++j) {
                double corr = 0.0;
                for (int i = 0; i < x; ++i) corr += pinv(j, i).real() * wd[static_cast<std::size_t>(i)];
                d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -= corr;
            }
        }
        for (auto& row : d) project_simplex_row(row);

        const double r = residual();
        best = std::min(best, r);
        if (r <= tol) return true;
        if (it % 1000 == 0) {
            if (last_check - best < 1e-12 * std::max(1.0, last_check)) return false;  // stagnated
            last_check = best;
        }
    }
    return false;
}

/// Sampled certificate for a channel-ordering property: `holds` is a sampled
/// (not proven) claim; a `false` comes with a concrete witness.
struct OrderingCertificate {
    bool holds = true;
    bool sampled = true;  // positive results are certificates over the sampled inputs only
    long samples_checked = 0;
    std::optional<InputDistribution> witness;
    std::optional<std::pair<InputDistribution, InputDistribution>> witness_pair;
};

/// Less capable: I(X;Y) >= I(X;Z) for every input, checked on all vertices,
/// the uniform distribution and `p_samples` random distributions.
inline OrderingCertificate is_less_capable(const FiniteChannel& legit, const FiniteChannel& eaves,
                                           long p_samples, std::uint64_t seed) {
    if (legit.in_size() != eaves.in_size())
        throw validation_error("is_less_capable: input alphabets differ");
    OrderingCertificate cert;
    RngStream rng(seed);
    const int x = legit.in_size();
    auto check = [&](const InputDistribution& p) {
        ++cert.samples_checked;
        if (mutual_information(p, legit) - mutual_information(p, eaves) < -1e-10) {
            cert.holds = false;
            cert.witness = p;
            return false;
        }
        return true;
    };
    for (int v = 0; v < x; ++v)
        if (!check(InputDistribution::vertex(x, v))) return cert;
    if (!check(InputDistribution::uniform(x))) return cert;
    for (long i = 0; i < p_samples; ++i)
        if (!check(InputDistribution::sample(x, rng))) return cert;
    return cert;
}

/// Noisier, via the testable surrogate: I(X;Y) - I(X;Z) must be concave in
/// the input distribution. Checks midpoint concavity on all vertex pairs and
/// `pair_samples` random pairs.
inline OrderingCertificate is_noisier_concavity(const FiniteChannel& legit,
                                                const FiniteChannel& eaves, long pair_samples,
                                                std::uint64_t seed) {
    if (legit.in_size() != eaves.in_size())
        throw validation_error("is_noisier_concavity: input alphabets differ");
    OrderingCertificate cert;
    RngStream rng(seed);
    const int x = legit.in_size();
    auto f = [&](const InputDistribution& p) {
        return mutual_information(p, legit) - mutual_information(p, eaves);
    };
    auto check = [&](const InputDistribution& p, const InputDistribution& q) {
        ++cert.samples_checked;
        std::vector<double> mid(static_cast<std::size_t>(x));
        for (int i = 0; i < x; ++i) mid[static_cast<std::size_t>(i)] = 0.5 * (p[i] + q[i]);
        if (f(InputDistribution(mid)) < 0.5 * (f(p) + f(q)) - 1e-10) {
            cert.holds = false;
            cert.witness_pair = {p, q};
            return false;
        }
        return true;
    };
    for (int i = 0; i < x; ++i)
        for (int j = i + 1; j < x; ++j)
            if (!check(InputDistribution::vertex(x, i), InputDistribution::vertex(x, j))) return cert;
    for (long i = 0; i < pair_samples; ++i)
        if (!check(InputDistribution::sample(x, rng), InputDistribution::sample(x, rng)))
            return cert;
    return cert;
}

}  // namespace wiretap::dmc
