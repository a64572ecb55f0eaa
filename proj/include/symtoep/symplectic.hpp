#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace symtoep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Numerical tolerances shared by the symplectic routines. Every entry is
/// overridable per call.
struct Tolerances {
    double sym = 1e-12;   // |A_ij - A_ji| <= sym * max(1, ||A||)
    double pd = 1e-12;    // lambda_min(A) > pd * ||A||
    double pair = 1e-8;   // eigenvalues of -K^2 pair up within pair * lambda_max
    double fact = 1e-8;   // Williamson residual bound
    double ray = 1e-9;    // Rayleigh lower-bound slack
    double ortho = 1e-10; // orthogonality loss allowed in degenerate eigenspaces
};

/// A real symmetric positive definite matrix of even dimension 2k.
///
/// Construction validates symmetry and positivity and caches the spectral
/// decomposition, so square roots and inverse square roots are cheap
/// afterwards. The stored matrix is the exact symmetric part of the input.
class PositiveDefiniteMatrix {
  public:
    PositiveDefiniteMatrix(const Matrix& a, const Tolerances& tol = {}); // NOLINT(google-explicit-constructor)

    template<typename Derived>
    PositiveDefiniteMatrix(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) // NOLINT
        : PositiveDefiniteMatrix(Matrix(a), tol) {}

    const Matrix& matrix() const { return a_; }
    Eigen::Index dim() const { return a_.rows(); }
    Eigen::Index modes() const { return a_.rows() / 2; }
    double norm() const { return eigenvalues_.cwiseAbs().maxCoeff(); }
    const Vector& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenvectors() const { return eigenvectors_; }

    Matrix sqrt() const;
    Matrix inverse_sqrt() const;

  private:
    Matrix a_;
    Vector eigenvalues_;
    Matrix eigenvectors_;
};

/// Symplectic eigenvalues d_1 <= ... <= d_k, one entry per symplectic pair.
struct SymplecticSpectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double min() const { return values.front(); }
    double max() const { return values.back(); }
    double operator[](std::size_t i) const { return values[i]; }
};

struct WilliamsonFactorization {
    Matrix M;                  // symplectic, M A M^T = normal_form()
    SymplecticSpectrum d;
    double diagonal_residual;  // ||M A M^T - Lambda|| / ||A||
    double symplectic_residual;// ||M J M^T - J||

    /// d_1 I_2 (+) ... (+) d_k I_2
    Matrix normal_form() const;
};

struct SymplecticVectorPair {
    Vector u;
    Vector v;

    /// <u, J v>
    double pairing() const;
};

struct GMatrixTest {
    bool is_gmatrix;
    double d1;  // smallest symplectic eigenvalue, 0 if A is not positive definite
};

struct NumericalRangeEdge {
    double value;               // refined minimum of the symplectic Rayleigh quotient
    double sampled_min;         // minimum over the random pairs alone
    SymplecticVectorPair pair;  // achieving pair, normalized so <u, Jv> = 1
    int sweeps;
};

/// J_{2k} = J_2 (+) ... (+) J_2 in interleaved (q_1, p_1, ..., q_k, p_k) ordering.
Matrix symplectic_form(int k);

/// Principal square root of a positive definite matrix.
Matrix principal_sqrt(const PositiveDefiniteMatrix& a);

/// Symplectic eigenvalues from the symmetric eigenproblem of -K^2, where
/// K = A^{1/2} J A^{1/2}. Throws PairingError if the eigenvalues of -K^2 do
/// not come in pairs.
SymplecticSpectrum symplectic_eigenvalues(const PositiveDefiniteMatrix& a, const Tolerances& tol = {});

/// Williamson normal form: symplectic M with M A M^T = d_1 I_2 (+) ... (+) d_k I_2.
WilliamsonFactorization williamson(const PositiveDefiniteMatrix& a, const Tolerances& tol = {});

/// G-matrix test A + (i/2) J >= 0, decided via d_1(A) >= 1/2 - tol.
GMatrixTest is_gmatrix(const Matrix& a, double tol, const Tolerances& tols = {});

/// Real representation [[S, -C], [C, S]] of the Hermitian matrix S + iC.
Matrix embed_hermitian(const Matrix& s, const Matrix& c);

/// (<u,Au> + <v,Av>) / 2 after rescaling the pair so that <u, Jv> = 1.
double symplectic_rayleigh(const PositiveDefiniteMatrix& a, const SymplecticVectorPair& pair,
                           double pair_tol = 1e-12);

/// Rescales u and v by 1/sqrt|<u,Jv>| and flips v if needed so <u,Jv> = 1.
SymplecticVectorPair normalize_pair(const SymplecticVectorPair& pair, double pair_tol = 1e-12);

/// Lower edge of the symplectic numerical range, probed with `samples` seeded
/// random pairs and refined by alternating exact minimization over u and v.
NumericalRangeEdge numerical_range_edge(const PositiveDefiniteMatrix& a, int samples, std::uint64_t seed,
                                        int max_sweeps = 20000);

/// M = exp(J S) for a seeded random symmetric S with ||S|| = scale (<= 1).
Matrix random_symplectic(int k, std::uint64_t seed, double scale = 1.0);

} // namespace symtoep
