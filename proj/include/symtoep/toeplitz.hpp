#pragma once

#include <optional>
#include <vector>

#include "symtoep/symbol.hpp"

namespace symtoep {

inline constexpr int default_max_dim = 4096;

/// Dense truncation T_n = [A_{i-j}]_{i,j=0..n-1} of the block Toeplitz matrix
/// generated by an even symbol. Block size is 2k.
struct BlockToeplitzTruncation {
    int k = 0;
    int n = 0;
    Matrix matrix;

    int dim() const { return 2 * k * n; }
};

/// x_0, x_1, ..., x_{m-1} in R^{2k}; everything beyond is zero.
struct FinitelySupportedSequence {
    std::vector<Vector> terms;

    int support() const { return static_cast<int>(terms.size()); }
};

struct QuadraticFormCheck {
    double lhs;  // <x, T_m x>
    double rhs;  // (1/2pi) int <x~(theta), A(theta) x~(theta)> dtheta by the rectangle rule
    double gap;
};

struct GChainResult {
    int n;
    bool passed;
    double min_eigenvalue;  // of the real embedding of T_n + (i/2) J
};

struct GChainSweep {
    int n_max;
    double tol;
    std::vector<GChainResult> tested;  // every truncation actually evaluated, sorted by n
    std::optional<int> first_failing;  // smallest failing n <= n_max
    int certified_through;             // every n <= this passes
};

struct PositiveDefiniteCheck {
    bool positive_definite;
    double min_eigenvalue;
};

BlockToeplitzTruncation assemble(const TrigMatrixPolynomial& s, int n, int max_dim = default_max_dim);

QuadraticFormCheck quadratic_form_check(const TrigMatrixPolynomial& s, const FinitelySupportedSequence& x,
                                        const GridSpec& grid);

/// T_n + (i/2) J_{2kn} >= 0 tested through the real Hermitian embedding.
GChainResult gchain_check(const TrigMatrixPolynomial& s, int n, double tol, int max_dim = default_max_dim);

/// Smallest failing truncation on [1, n_max]. The embedding's least
/// eigenvalue is nonincreasing in n, so doubling followed by bisection finds
/// it without testing every n.
GChainSweep gchain_sweep(const TrigMatrixPolynomial& s, int n_max, double tol, int max_dim = default_max_dim,
                         int threads = 1);

/// lambda_min(T) > tol * ||T||
PositiveDefiniteCheck positive_definite_check(const BlockToeplitzTruncation& t, double tol);

} // namespace symtoep
