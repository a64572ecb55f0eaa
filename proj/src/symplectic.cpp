#include "symtoep/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "symtoep/errors.hpp"

namespace symtoep {

namespace {

void require_even_square(const Matrix& a) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << "expected a square matrix, got " << a.rows() << "x" << a.cols();
        throw DimensionError(os.str());
    }
    if (a.rows() == 0 || a.rows() % 2 != 0) {
        std::ostringstream os;
        os << "expected an even dimension 2k >= 2, got " << a.rows();
        throw DimensionError(os.str());
    }
}

// Eigen-decomposition of -K^2 with K = A^{1/2} J A^{1/2}; shared by the
// spectrum and the factorization.
struct SkewCore {
    Matrix K;
    Vector lambda;  // ascending eigenvalues of -K^2
    Matrix V;
};

SkewCore skew_core(const PositiveDefiniteMatrix& a) {
    const int k = static_cast<int>(a.modes());
    const Matrix s = a.sqrt();
    Matrix K = s * symplectic_form(k) * s;
    K = 0.5 * (K - K.transpose());
    Matrix N = K.transpose() * K;
    N = 0.5 * (N + N.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(N);
    if (es.info() != Eigen::Success) {
        throw PairingError("symmetric eigensolver failed on -K^2");
    }
    return {std::move(K), es.eigenvalues(), es.eigenvectors()};
}

// Collapses the doubled eigenvalues of -K^2 into symplectic eigenvalues.
SymplecticSpectrum collapse_pairs(const Vector& lambda, double pair_tol) {
    const Eigen::Index n = lambda.size();
    const double scale = std::max(lambda(n - 1), std::numeric_limits<double>::min());
    SymplecticSpectrum out;
    out.values.reserve(static_cast<std::size_t>(n / 2));
    for (Eigen::Index i = 0; i < n; i += 2) {
        const double lo = lambda(i);
        const double hi = lambda(i + 1);
        if (hi - lo > pair_tol * scale) {
            std::ostringstream os;
            os << "eigenvalues of -K^2 do not pair up: " << lo << " vs " << hi << " (relative gap "
               << (hi - lo) / scale << ")";
            throw PairingError(os.str());
        }
        const double mean = 0.5 * (lo + hi);
        if (!(mean > 0.0)) {
            throw PairingError("non-positive eigenvalue of -K^2");
        }
        out.values.push_back(std::sqrt(mean));
    }
    return out;
}

} // namespace

PositiveDefiniteMatrix::PositiveDefiniteMatrix(const Matrix& a, const Tolerances& tol) {
    require_even_square(a);
    if (!a.allFinite()) {
        throw DomainError("matrix has non-finite entries");
    }
    a_ = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(a_);
    if (es.info() != Eigen::Success) {
        throw DomainError("symmetric eigensolver failed");
    }
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();

    const double nrm = eigenvalues_.cwiseAbs().maxCoeff();
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol.sym * std::max(1.0, nrm)) {
        std::ostringstream os;
        os << "matrix is not symmetric: max |A_ij - A_ji| = " << asym;
        throw SymmetryError(os.str());
    }
    const double lmin = eigenvalues_(0);
    if (!(lmin > tol.pd * nrm) || nrm == 0.0) {
        std::ostringstream os;
        os << "matrix is not positive definite: smallest eigenvalue " << lmin;
        throw PositivityError(os.str(), lmin);
    }
}

Matrix PositiveDefiniteMatrix::sqrt() const {
    const Vector r = eigenvalues_.cwiseSqrt();
    Matrix s = eigenvectors_ * r.asDiagonal() * eigenvectors_.transpose();
    return 0.5 * (s + s.transpose());
}

Matrix PositiveDefiniteMatrix::inverse_sqrt() const {
    const Vector r = eigenvalues_.cwiseSqrt().cwiseInverse();
    Matrix s = eigenvectors_ * r.asDiagonal() * eigenvectors_.transpose();
    return 0.5 * (s + s.transpose());
}

Matrix WilliamsonFactorization::normal_form() const {
    const auto k = static_cast<Eigen::Index>(d.size());
    Matrix out = Matrix::Zero(2 * k, 2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
        out(2 * j, 2 * j) = d.values[static_cast<std::size_t>(j)];
        out(2 * j + 1, 2 * j + 1) = d.values[static_cast<std::size_t>(j)];
    }
    return out;
}

double SymplecticVectorPair::pairing() const {
    // <u, Jv> with J = (+) [[0, 1], [-1, 0]]: (Jv)_{2j} = v_{2j+1}, (Jv)_{2j+1} = -v_{2j}
    double acc = 0.0;
    for (Eigen::Index j = 0; j + 1 < u.size(); j += 2) {
        acc += u(j) * v(j + 1) - u(j + 1) * v(j);
    }
    return acc;
}

Matrix symplectic_form(int k) {
    if (k < 1) {
        throw DimensionError("symplectic form needs k >= 1");
    }
    Matrix j = Matrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        j(2 * i, 2 * i + 1) = 1.0;
        j(2 * i + 1, 2 * i) = -1.0;
    }
    return j;
}

Matrix principal_sqrt(const PositiveDefiniteMatrix& a) {
    return a.sqrt();
}

SymplecticSpectrum symplectic_eigenvalues(const PositiveDefiniteMatrix& a, const Tolerances& tol) {
    const SkewCore core = skew_core(a);
    return collapse_pairs(core.lambda, tol.pair);
}

WilliamsonFactorization williamson(const PositiveDefiniteMatrix& a, const Tolerances& tol) {
    const SkewCore core = skew_core(a);
    SymplecticSpectrum d = collapse_pairs(core.lambda, tol.pair);

    const Eigen::Index n = core.lambda.size();
    const double scale = core.lambda(n - 1);
    Matrix O(n, n);
    Eigen::Index filled = 0;

    // Walk clusters of (numerically) equal eigenvalues of -K^2. Each cluster
    // is a K-invariant subspace; inside it, pick x, set y = K x / |K x| and
    // keep orthogonalizing against everything already chosen.
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 2;
        while (stop < n && core.lambda(stop) - core.lambda(stop - 1) <= tol.pair * scale) {
            stop += 2;
        }
        const Matrix basis = core.V.middleCols(start, stop - start);
        const Eigen::Index cluster_begin = filled;

        for (Eigen::Index pair = 0; pair < (stop - start) / 2; ++pair) {
            const auto chosen = O.middleCols(cluster_begin, filled - cluster_begin);

            double best_norm = -1.0;
            Vector best_res;
            for (Eigen::Index c = 0; c < basis.cols(); ++c) {
                Vector r = basis.col(c);
                for (int pass = 0; pass < 2; ++pass) {
                    r -= chosen * (chosen.transpose() * r);
                }
                const double rn = r.norm();
                if (rn > best_norm) {
                    best_norm = rn;
                    best_res = std::move(r);
                }
            }
            // The unused part of the cluster has dimension >= 2, so some basis
            // column keeps at least 1/sqrt(m) of its norm.
            const double m_pairs = static_cast<double>(stop - start) / 2.0;
            if (best_norm < 0.5 / std::sqrt(m_pairs)) {
                throw DegeneracyError("degenerate eigenspace exhausted while building Williamson basis; "
                                      "retry with a slightly perturbed matrix");
            }
            const Vector x = best_res / best_norm;

            Vector y = core.K * x;
            const double kx = y.norm();
            y /= kx;
            const double leak =
                chosen.cols() > 0 ? (chosen.transpose() * y).cwiseAbs().maxCoeff() : 0.0;
            if (leak > tol.ortho || std::abs(x.dot(y)) > tol.ortho) {
                std::ostringstream os;
                os << "orthogonality lost in degenerate eigenspace (" << std::max(leak, std::abs(x.dot(y)))
                   << "); retry with a slightly perturbed matrix";
                throw DegeneracyError(os.str());
            }
            y -= chosen * (chosen.transpose() * y);
            y -= x * x.dot(y);
            y.normalize();

            // y^T K x = |Kx| > 0, so the (y, x) ordering yields d J_2 blocks.
            O.col(filled) = y;
            O.col(filled + 1) = x;
            filled += 2;
        }
        start = stop;
    }

    const int k = static_cast<int>(a.modes());
    Vector half(n);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double r = std::sqrt(d.values[static_cast<std::size_t>(j)]);
        half(2 * j) = r;
        half(2 * j + 1) = r;
    }
    WilliamsonFactorization out;
    out.M = half.asDiagonal() * O.transpose() * a.inverse_sqrt();
    out.d = std::move(d);
    const Matrix J = symplectic_form(k);
    out.diagonal_residual = (out.M * a.matrix() * out.M.transpose() - out.normal_form()).norm() / a.norm();
    out.symplectic_residual = (out.M * J * out.M.transpose() - J).norm();
    return out;
}

GMatrixTest is_gmatrix(const Matrix& a, double tol, const Tolerances& tols) {
    if (a.rows() != a.cols()) {
        throw DimensionError("is_gmatrix expects a square matrix");
    }
    const double nrm = a.cwiseAbs().maxCoeff();
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > tols.sym * std::max(1.0, nrm)) {
        std::ostringstream os;
        os << "matrix is not symmetric: max |A_ij - A_ji| = " << asym;
        throw SymmetryError(os.str());
    }
    try {
        const PositiveDefiniteMatrix pd(a, tols);
        const double d1 = symplectic_eigenvalues(pd, tols).min();
        return {d1 >= 0.5 - tol, d1};
    } catch (const PositivityError&) {
        return {false, 0.0};
    }
}

Matrix embed_hermitian(const Matrix& s, const Matrix& c) {
    if (s.rows() != s.cols() || c.rows() != c.cols() || s.rows() != c.rows()) {
        std::ostringstream os;
        os << "embed_hermitian shape mismatch: S is " << s.rows() << "x" << s.cols() << ", C is " << c.rows()
           << "x" << c.cols();
        throw DimensionError(os.str());
    }
    const Eigen::Index n = s.rows();
    Matrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = s;
    out.topRightCorner(n, n) = -c;
    out.bottomLeftCorner(n, n) = c;
    out.bottomRightCorner(n, n) = s;
    return out;
}

SymplecticVectorPair normalize_pair(const SymplecticVectorPair& pair, double pair_tol) {
    if (pair.u.size() != pair.v.size() || pair.u.size() % 2 != 0) {
        throw DimensionError("symplectic pair vectors must share an even dimension");
    }
    const double p = pair.pairing();
    if (std::abs(p) < pair_tol) {
        std::ostringstream os;
        os << "degenerate pair: |<u, Jv>| = " << std::abs(p);
        throw DegeneratePairError(os.str());
    }
    const double s = std::sqrt(std::abs(p));
    SymplecticVectorPair out{pair.u / s, pair.v / s};
    if (p < 0.0) {
        out.v = -out.v;
    }
    return out;
}

double symplectic_rayleigh(const PositiveDefiniteMatrix& a, const SymplecticVectorPair& pair, double pair_tol) {
    if (pair.u.size() != a.dim()) {
        throw DimensionError("pair dimension does not match matrix");
    }
    const SymplecticVectorPair n = normalize_pair(pair, pair_tol);
    const Matrix& m = a.matrix();
    return 0.5 * (n.u.dot(m * n.u) + n.v.dot(m * n.v));
}

NumericalRangeEdge numerical_range_edge(const PositiveDefiniteMatrix& a, int samples, std::uint64_t seed,
                                        int max_sweeps) {
    if (samples < 1) {
        throw DomainError("numerical_range_edge needs at least one sample");
    }
    const Eigen::Index dim = a.dim();
    const Matrix J = symplectic_form(static_cast<int>(a.modes()));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;

    NumericalRangeEdge best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                            {}, 0};
    for (int s = 0; s < samples; ++s) {
        SymplecticVectorPair p{Vector(dim), Vector(dim)};
        for (Eigen::Index i = 0; i < dim; ++i) {
            p.u(i) = normal(rng);
        }
        for (Eigen::Index i = 0; i < dim; ++i) {
            p.v(i) = normal(rng);
        }
        if (std::abs(p.pairing()) < 1e-8) {
            continue;
        }
        const double val = symplectic_rayleigh(a, p);
        if (val < best.sampled_min) {
            best.sampled_min = val;
            best.pair = normalize_pair(p);
        }
    }
    if (!std::isfinite(best.sampled_min)) {
        throw DegeneratePairError("every sampled pair was degenerate");
    }

    // Block coordinate descent over u, v and the scale s in (s u, v / s).
    // With v fixed, min <u,Au>/2 subject to <u, Jv> = 1 is attained at
    // u = A^{-1} w / <w, A^{-1} w>, w = J v; symmetrically for v with u fixed
    // (w = J^T u). The scale step balances <u,Au> against <v,Av>.
    const Eigen::LDLT<Matrix> solver(a.matrix());
    const Matrix& m = a.matrix();
    SymplecticVectorPair cur = best.pair;
    double value = best.sampled_min;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        const Vector wu = J * cur.v;
        const Vector zu = solver.solve(wu);
        cur.u = zu / wu.dot(zu);
        const Vector wv = J.transpose() * cur.u;
        const Vector zv = solver.solve(wv);
        cur.v = zv / wv.dot(zv);
        // Exact minimization along the scaling direction (u, v) -> (s u, v / s).
        const double qu = cur.u.dot(m * cur.u);
        const double qv = cur.v.dot(m * cur.v);
        const double s = std::pow(qv / qu, 0.25);
        cur.u *= s;
        cur.v /= s;
        const double next = std::sqrt(qu * qv);
        const bool stalled = value - next <= 1e-15 * std::abs(value);
        value = std::min(value, next);
        if (stalled) {
            ++sweep;
            break;
        }
    }
    best.value = value;
    best.pair = normalize_pair(cur);
    best.sweeps = sweep;
    return best;
}

Matrix random_symplectic(int k, std::uint64_t seed, double scale) {
    if (k < 1) {
        throw DimensionError("random_symplectic needs k >= 1");
    }
    scale = std::clamp(scale, 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix s(2 * k, 2 * k);
    for (int i = 0; i < 2 * k; ++i) {
        for (int j = 0; j <= i; ++j) {
            s(i, j) = s(j, i) = normal(rng);
        }
    }
    const double nrm = Eigen::SelfAdjointEigenSolver<Matrix>(s, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    if (nrm > 0.0) {
        s *= scale / nrm;
    }
    const Matrix h = symplectic_form(k) * s;
    return h.exp();
}

} // namespace symtoep
