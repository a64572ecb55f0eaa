#include "symtoep/toeplitz.hpp"

#include <algorithm>
#include <complex>
#include <sstream>

#include "symtoep/errors.hpp"
#include "symtoep/parallel.hpp"

namespace symtoep {

namespace {

void check_size(int k, int n, int max_dim) {
    if (n < 1) {
        throw DimensionError("truncation order n must be >= 1");
    }
    if (2L * k * n > max_dim) {
        std::ostringstream os;
        os << "truncation 2kn = " << 2L * k * n << " exceeds the configured maximum " << max_dim;
        throw SizeError(os.str());
    }
}

double min_eigenvalue(const Matrix& m) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

} // namespace

BlockToeplitzTruncation assemble(const TrigMatrixPolynomial& s, int n, int max_dim) {
    check_size(s.k, n, max_dim);
    const int b = 2 * s.k;
    BlockToeplitzTruncation t{s.k, n, Matrix::Zero(b * n, b * n)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int lag = std::abs(i - j);
            if (lag <= s.degree()) {
                t.matrix.block(b * i, b * j, b, b) = s.coeffs[static_cast<std::size_t>(lag)];
            }
        }
    }
    return t;
}

QuadraticFormCheck quadratic_form_check(const TrigMatrixPolynomial& s, const FinitelySupportedSequence& x,
                                        const GridSpec& grid) {
    grid.validate();
    const int m = x.support();
    if (m < 1) {
        throw DimensionError("sequence needs at least one term");
    }
    for (const auto& v : x.terms) {
        if (v.size() != 2 * s.k) {
            throw DimensionError("sequence terms must have dimension 2k");
        }
    }
    // The integrand is a trig polynomial of degree N + m - 1.
    if (grid.G <= 2 * (s.degree() + m)) {
        std::ostringstream os;
        os << "G = " << grid.G << " too small for degree " << s.degree() << " and support " << m
           << " (need G > " << 2 * (s.degree() + m) << ")";
        throw AliasingError(os.str());
    }

    const BlockToeplitzTruncation t = assemble(s, m, std::max(default_max_dim, 2 * s.k * m));
    Vector flat(2 * s.k * m);
    for (int i = 0; i < m; ++i) {
        flat.segment(2 * s.k * i, 2 * s.k) = x.terms[static_cast<std::size_t>(i)];
    }
    const double lhs = flat.dot(t.matrix * flat);

    using cvec = Eigen::VectorXcd;
    double acc = 0.0;
    for (int g = 0; g < grid.G; ++g) {
        const double theta = grid.theta(g);
        cvec xt = cvec::Zero(2 * s.k);
        for (int i = 0; i < m; ++i) {
            xt += std::polar(1.0, i * theta) * x.terms[static_cast<std::size_t>(i)].cast<std::complex<double>>();
        }
        const Matrix a = evaluate(s, theta);
        acc += xt.dot(a.cast<std::complex<double>>() * xt).real();
    }
    const double rhs = acc / static_cast<double>(grid.G);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

GChainResult gchain_check(const TrigMatrixPolynomial& s, int n, double tol, int max_dim) {
    const BlockToeplitzTruncation t = assemble(s, n, max_dim);
    const Matrix half_j = 0.5 * symplectic_form(s.k * n);
    const double lmin = min_eigenvalue(embed_hermitian(t.matrix, half_j));
    return {n, lmin >= -tol, lmin};
}

GChainSweep gchain_sweep(const TrigMatrixPolynomial& s, int n_max, double tol, int max_dim, int threads) {
    check_size(s.k, n_max, max_dim);
    GChainSweep out{n_max, tol, {}, std::nullopt, n_max};

    std::vector<int> ladder;
    for (int n = 1; n < n_max; n *= 2) {
        ladder.push_back(n);
    }
    ladder.push_back(n_max);
    std::vector<GChainResult> coarse(ladder.size());
    parallel_for(ladder.size(), threads, [&](std::size_t i) { coarse[i] = gchain_check(s, ladder[i], tol, max_dim); });

    auto first_fail = std::find_if(coarse.begin(), coarse.end(), [](const GChainResult& r) { return !r.passed; });
    out.tested.assign(coarse.begin(), first_fail == coarse.end() ? coarse.end() : first_fail + 1);
    if (first_fail == coarse.end()) {
        return out;
    }

    int lo = first_fail == coarse.begin() ? 0 : std::prev(first_fail)->n;  // passes (0 = vacuous)
    int hi = first_fail->n;                                                 // fails
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const GChainResult r = gchain_check(s, mid, tol, max_dim);
        out.tested.push_back(r);
        (r.passed ? lo : hi) = mid;
    }
    std::sort(out.tested.begin(), out.tested.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    out.first_failing = hi;
    out.certified_through = lo;
    return out;
}

PositiveDefiniteCheck positive_definite_check(const BlockToeplitzTruncation& t, double tol) {
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Matrix>(t.matrix, Eigen::EigenvaluesOnly).eigenvalues();
    const double nrm = ev.cwiseAbs().maxCoeff();
    return {ev(0) > tol * nrm && nrm > 0.0, ev(0)};
}

} // namespace symtoep
