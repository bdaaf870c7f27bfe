#pragma once
// Dense complex matrix primitives for desk-scale (n <= 32) secrecy
// computations: Hermitian eigendecomposition via cyclic Jacobi rotations,
// SVD through the Gram matrix, log-determinants via Cholesky, spectral
// norms and Haar-distributed random unitaries. Everything is dependency
// free and deterministic for a fixed input / seed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiretap {

/// Input violates a documented invariant or precondition.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method exceeded its iteration cap.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using RngStream = std::mt19937_64;

/// Uniform double in [0, 1), built from the top 53 bits of the stream so the
/// value sequence is identical on every platform.
inline double uniform_unit(RngStream& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard real normal via Box-Muller (one value per pair of uniforms).
inline double standard_normal(RngStream& rng) {
    const double u1 = 1.0 - uniform_unit(rng);  // (0, 1]
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

/// Derives an independent stream seed for worker `index` from a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the combined state
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace mat {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;  // entrywise |A - A^+| bound
inline constexpr double kPsdEigTol = 1e-10;     // eigenvalues >= -kPsdEigTol
inline constexpr double kOrderTol = 1e-10;      // PSD-order comparisons
inline constexpr double kRankTol = 1e-10;       // rank cutoff, relative to top

/// Standard complex normal CN(0,1): E|z|^2 = 1.
inline cplx standard_complex_normal(RngStream& rng) {
    const double u1 = 1.0 - uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

/// Row-major dense complex matrix. Entries are expected to stay finite;
/// parsers and the PSD wrapper enforce this at the boundary.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 1 || cols < 1)
            throw validation_error("matrix dimensions must be at least 1x1");
        a_.assign(static_cast<std::size_t>(rows) * cols, cplx{0.0, 0.0});
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    /// Rectangular matrix with `d` on the main diagonal, zero elsewhere.
    static ComplexMatrix diagonal_rect(int rows, int cols, const std::vector<double>& d) {
        ComplexMatrix m(rows, cols);
        const int k = std::min({rows, cols, static_cast<int>(d.size())});
        for (int i = 0; i < k; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cplx trace() const {
        cplx t{0.0, 0.0};
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const cplx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw validation_error("matrix product: inner dimensions differ");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw validation_error("matrix sum: shapes differ");
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw validation_error("matrix difference: shapes differ");
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return cplx{s, 0.0} * a; }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw validation_error("max_abs_diff: shapes differ");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

/// Entrywise max |A - A^+|; zero for exactly Hermitian input.
inline double hermitian_deviation(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw validation_error("hermitian_deviation: matrix not square");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

inline ComplexMatrix symmetrized(const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        r(i, i) = a(i, i).real();
        for (int j = i + 1; j < a.cols(); ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            r(i, j) = v;
            r(j, i) = std::conj(v);
        }
    }
    return r;
}

struct EigDecomposition {
    std::vector<double> eigenvalues;  // descending, ties keep input order
    ComplexMatrix eigenvectors;       // unitary, columns
};

namespace detail {

// Cyclic Jacobi for a Hermitian matrix: repeatedly annihilate off-diagonal
// pairs with a phase rotation followed by a real Jacobi rotation. Off-diagonal
// Frobenius threshold 1e-13 (relative to the matrix scale), rotation cap
// 100 n^2.
inline EigDecomposition jacobi_hermitian(const ComplexMatrix& input) {
    const int n = input.rows();
    ComplexMatrix a = symmetrized(input);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());
    const double tol = 1e-13 * scale;
    const long cap = 100L * n * n;
    long rotations = 0;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
        return std::sqrt(s);
    };

    while (n > 1 && off_norm() > tol) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx beta = a(p, q);
                const double b = std::abs(beta);
                if (b < 1e-300) continue;
                if (++rotations > cap)
                    throw convergence_error("hermitian_eig: Jacobi rotation cap exceeded");
                const cplx phase = std::conj(beta) / b;  // makes a(p,q) real positive
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // columns: [p q] <- [p q] * [[c, s], [-s e^{i phi}, c e^{i phi}]]
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * phase * akq;
                    a(k, q) = s * akp + c * phase * akq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * phase * vkq;
                    v(k, q) = s * vkp + c * phase * vkq;
                }
                // rows: conjugate-transposed rotation from the left
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * std::conj(phase) * aqk;
                    a(q, k) = s * apk + c * std::conj(phase) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.eigenvectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[static_cast<std::size_t>(j)] = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]).real();
        for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
    }
    return out;
}

}  // namespace detail

/// Eigendecomposition of a general (possibly indefinite) Hermitian matrix.
inline EigDecomposition hermitian_eig_general(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw validation_error("hermitian_eig: matrix not square");
    if (!a.all_finite()) throw validation_error("hermitian_eig: non-finite entries");
    if (hermitian_deviation(a) > kHermitianTol * std::max(1.0, a.max_abs()))
        throw validation_error("hermitian_eig: matrix not Hermitian within tolerance");
    return detail::jacobi_hermitian(a);
}

/// Smallest eigenvalue of a Hermitian matrix (used for PSD-order tests).
inline double min_eigenvalue(const ComplexMatrix& a) {
    const auto e = hermitian_eig_general(a);
    return e.eigenvalues.back();
}

/// Positive semi-definite Hermitian matrix. Construction validates the
/// Hermitian deviation (<= 1e-12 entrywise) and the eigenvalue floor
/// (>= -1e-10); the stored matrix is exactly Hermitian.
class HermitianPSD {
public:
    static HermitianPSD from_matrix(const ComplexMatrix& a) {
        if (a.rows() != a.cols()) throw validation_error("HermitianPSD: matrix not square");
        if (!a.all_finite()) throw validation_error("HermitianPSD: non-finite entries");
        if (hermitian_deviation(a) > kHermitianTol)
            throw validation_error("HermitianPSD: |A - A^+| exceeds 1e-12");
        ComplexMatrix h = symmetrized(a);
        const auto e = detail::jacobi_hermitian(h);
        if (e.eigenvalues.back() < -kPsdEigTol)
            throw validation_error("HermitianPSD: eigenvalue " + std::to_string(e.eigenvalues.back()) +
                                   " below -1e-10");
        return HermitianPSD(std::move(h));
    }

    /// Gram matrix H^+ H of an arbitrary channel matrix (PSD by construction).
    static HermitianPSD gram(const ComplexMatrix& h) {
        if (!h.all_finite()) throw validation_error("HermitianPSD::gram: non-finite entries");
        return HermitianPSD(symmetrized(h.adjoint() * h));
    }

    /// U diag(eigs) U^+ for a unitary basis and nonnegative eigenvalues.
    static HermitianPSD from_eigensystem(const ComplexMatrix& basis, const std::vector<double>& eigs) {
        if (basis.rows() != basis.cols() || basis.rows() != static_cast<int>(eigs.size()))
            throw validation_error("HermitianPSD::from_eigensystem: shape mismatch");
        std::vector<double> clamped = eigs;
        for (double& g : clamped) {
            if (g < -kPsdEigTol)
                throw validation_error("HermitianPSD::from_eigensystem: negative eigenvalue");
            g = std::max(g, 0.0);
        }
        return HermitianPSD(symmetrized(basis * ComplexMatrix::diagonal(clamped) * basis.adjoint()));
    }

    static HermitianPSD scaled_identity(int n, double s) {
        if (s < 0.0) throw validation_error("HermitianPSD: negative scale");
        std::vector<double> d(static_cast<std::size_t>(n), s);
        return HermitianPSD(ComplexMatrix::diagonal(d));
    }

    static HermitianPSD zero(int n) { return scaled_identity(n, 0.0); }

    int dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& operator()(int i, int j) const { return m_(i, j); }
    double trace_real() const { return m_.trace().real(); }

private:
    explicit HermitianPSD(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Eigendecomposition of a PSD matrix; eigenvalues in [-1e-10, 0) are
/// clamped to 0, anything more negative is an error.
inline EigDecomposition hermitian_eig(const HermitianPSD& a) {
    EigDecomposition e = detail::jacobi_hermitian(a.matrix());
    for (double& g : e.eigenvalues) {
        if (g < -kPsdEigTol)
            throw validation_error("hermitian_eig: PSD input has eigenvalue below -1e-10");
        if (g < 0.0) g = 0.0;
    }
    return e;
}

struct SVDResult {
    ComplexMatrix left;             // rows x rows unitary
    std::vector<double> singulars;  // min(rows, cols) values, descending
    ComplexMatrix right;            // cols x cols unitary; A = left Sigma right^+
};

namespace detail {

// Fill the not-yet-assigned columns of u (from index `filled`) with an
// orthonormal completion. Each round takes the standard basis vector with
// the largest residual against the current columns; that residual norm is
// at least 1/sqrt(m), so the completion always succeeds.
inline void complete_basis(ComplexMatrix& u, int filled) {
    const int m = u.rows();
    for (int next = filled; next < m; ++next) {
        std::vector<cplx> best;
        double best_norm = -1.0;
        for (int cand = 0; cand < m; ++cand) {
            std::vector<cplx> w(static_cast<std::size_t>(m), cplx{0.0, 0.0});
            w[static_cast<std::size_t>(cand)] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (int j = 0; j < next; ++j) {
                    cplx dot{0.0, 0.0};
                    for (int i = 0; i < m; ++i)
                        dot += std::conj(u(i, j)) * w[static_cast<std::size_t>(i)];
                    for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] -= dot * u(i, j);
                }
            }
            double nrm = 0.0;
            for (const cplx& x : w) nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(w);
            }
        }
        if (best_norm < 1e-8) throw convergence_error("svd: basis completion failed");
        for (int i = 0; i < m; ++i) u(i, next) = best[static_cast<std::size_t>(i)] / best_norm;
    }
}

// Orthonormalize column j of u against columns [0, j) and normalize.
inline void reorthonormalize_column(ComplexMatrix& u, int j) {
    const int m = u.rows();
    for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < j; ++k) {
            cplx dot{0.0, 0.0};
            for (int i = 0; i < m; ++i) dot += std::conj(u(i, k)) * u(i, j);
            for (int i = 0; i < m; ++i) u(i, j) -= dot * u(i, k);
        }
    }
    double nrm = 0.0;
    for (int i = 0; i < m; ++i) nrm += std::norm(u(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-300) throw convergence_error("svd: degenerate singular vector");
    for (int i = 0; i < m; ++i) u(i, j) = u(i, j) / nrm;
}

}  // namespace detail

/// Full SVD A = U Sigma V^+ through the eigendecomposition of the smaller
/// Gram matrix. Gram eigenvalues below 1e-13 relative to the top are treated
/// as exact zeros (singular values of A below ~1e-7 relative are not
/// resolvable along this route, which is acceptable at desk scale).
inline SVDResult svd(const ComplexMatrix& a) {
    if (!a.all_finite()) throw validation_error("svd: non-finite entries");
    const int m = a.rows(), n = a.cols();
    const int k = std::min(m, n);
    const bool tall = m >= n;
    const ComplexMatrix small_gram = tall ? symmetrized(a.adjoint() * a) : symmetrized(a * a.adjoint());
    EigDecomposition e = detail::jacobi_hermitian(small_gram);

    const double top = std::max(e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front(), 0.0);
    const double floor = 1e-13 * std::max(1.0, top);
    std::vector<double> sigma(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < k; ++i) {
        const double lam = e.eigenvalues[static_cast<std::size_t>(i)];
        sigma[static_cast<std::size_t>(i)] = lam > floor ? std::sqrt(lam) : 0.0;
    }

    SVDResult out;
    out.singulars = sigma;
    if (tall) {
        out.right = e.eigenvectors;  // n x n
        out.left = ComplexMatrix(m, m);
        int filled = 0;
        for (int i = 0; i < n; ++i) {
            if (sigma[static_cast<std::size_t>(i)] <= 0.0) break;  // descending
            for (int r = 0; r < m; ++r) {
                cplx s{0.0, 0.0};
                for (int c = 0; c < n; ++c) s += a(r, c) * out.right(c, i);
                out.left(r, i) = s / sigma[static_cast<std::size_t>(i)];
            }
            detail::reorthonormalize_column(out.left, i);
            ++filled;
        }
        detail::complete_basis(out.left, filled);
    } else {
        out.left = e.eigenvectors;  // m x m
        out.right = ComplexMatrix(n, n);
        const ComplexMatrix ah = a.adjoint();
        int filled = 0;
        for (int i = 0; i < m; ++i) {
            if (sigma[static_cast<std::size_t>(i)] <= 0.0) break;
            for (int r = 0; r < n; ++r) {
                cplx s{0.0, 0.0};
                for (int c = 0; c < m; ++c) s += ah(r, c) * out.left(c, i);
                out.right(r, i) = s / sigma[static_cast<std::size_t>(i)];
            }
            detail::reorthonormalize_column(out.right, i);
            ++filled;
        }
        detail::complete_basis(out.right, filled);
    }
    return out;
}

/// Largest singular value sigma_1(A) = max_{|x|=1} |Ax|.
inline double spectral_norm(const ComplexMatrix& a) {
    if (!a.all_finite()) throw validation_error("spectral_norm: non-finite entries");
    const bool tall = a.rows() >= a.cols();
    const ComplexMatrix g = tall ? symmetrized(a.adjoint() * a) : symmetrized(a * a.adjoint());
    const auto e = detail::jacobi_hermitian(g);
    return std::sqrt(std::max(e.eigenvalues.front(), 0.0));
}

/// Hermitian square root of a PSD matrix.
inline ComplexMatrix psd_sqrt(const HermitianPSD& w) {
    EigDecomposition e = hermitian_eig(w);
    for (double& g : e.eigenvalues) g = std::sqrt(g);
    return symmetrized(e.eigenvectors * ComplexMatrix::diagonal(e.eigenvalues) * e.eigenvectors.adjoint());
}

namespace detail {

// Cholesky log-determinant of a Hermitian positive definite matrix.
inline double cholesky_logdet(const ComplexMatrix& m) {
    const int n = m.rows();
    ComplexMatrix l(n, n);
    double logdet = 0.0;
    for (int j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (int p = 0; p < j; ++p) d -= std::norm(l(j, p));
        if (!(d > 0.0)) throw convergence_error("logdet: positive-definite factorization broke down");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        logdet += std::log(ljj);
        for (int i = j + 1; i < n; ++i) {
            cplx s = m(i, j);
            for (int p = 0; p < j; ++p) s -= l(i, p) * std::conj(l(j, p));
            l(i, j) = s / ljj;
        }
    }
    return 2.0 * logdet;
}

}  // namespace detail

/// ln|I + W R| for PSD W, R, evaluated on the symmetrized positive definite
/// form I + R^{1/2} W R^{1/2}. Always nonnegative.
inline double logdet_ipwr(const HermitianPSD& w, const HermitianPSD& r) {
    if (w.dim() != r.dim()) throw validation_error("logdet_ipwr: dimension mismatch");
    const ComplexMatrix s = psd_sqrt(r);
    ComplexMatrix m = symmetrized(s * w.matrix() * s);
    for (int i = 0; i < m.rows(); ++i) m(i, i) += 1.0;
    return std::max(0.0, detail::cholesky_logdet(m));
}

/// Haar-distributed n x n random unitary: Gram-Schmidt orthonormalization of
/// a complex Ginibre matrix (the R factor has a positive real diagonal, which
/// makes the Q factor exactly Haar).
inline ComplexMatrix random_unitary(int n, RngStream& rng) {
    if (n < 1) throw validation_error("random_unitary: n must be >= 1");
    ComplexMatrix u(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) u(i, j) = standard_complex_normal(rng);
        detail::reorthonormalize_column(u, j);
    }
    return u;
}

}  // namespace mat
}  // namespace wiretap
