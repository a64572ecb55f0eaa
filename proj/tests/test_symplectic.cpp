#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/symplectic.hpp"

using namespace symtoep;
using testing::random_pd;

TEST_CASE("symplectic_form structure") {
    const Matrix j1 = symplectic_form(1);
    CHECK(j1(0, 0) == 0.0);
    CHECK(j1(0, 1) == 1.0);
    CHECK(j1(1, 0) == -1.0);
    CHECK(j1(1, 1) == 0.0);

    for (int k = 1; k <= 5; ++k) {
        const Matrix j = symplectic_form(k);
        CHECK(j.rows() == 2 * k);
        CHECK((j.transpose() + j).cwiseAbs().maxCoeff() == 0.0);
        CHECK((j * j + Matrix::Identity(2 * k, 2 * k)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((j.transpose() * j - Matrix::Identity(2 * k, 2 * k)).cwiseAbs().maxCoeff() == 0.0);
    }
    const Matrix j2 = symplectic_form(2);
    CHECK(j2.topLeftCorner(2, 2) == j1);
    CHECK(j2.bottomRightCorner(2, 2) == j1);
    CHECK(j2.topRightCorner(2, 2).isZero());

    CHECK_THROWS_AS(symplectic_form(0), DimensionError);
}

TEST_CASE("PositiveDefiniteMatrix validation") {
    CHECK_THROWS_AS(PositiveDefiniteMatrix(Matrix::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(PositiveDefiniteMatrix(Matrix::Zero(2, 3)), DimensionError);
    Matrix asym = Matrix::Identity(2, 2);
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(PositiveDefiniteMatrix{asym}, SymmetryError);

    Matrix indefinite(2, 2);
    indefinite << 1, 0, 0, -2;
    try {
        PositiveDefiniteMatrix p(indefinite);
        FAIL("expected PositivityError");
    } catch (const PositivityError& e) {
        CHECK(e.eigenvalue() == doctest::Approx(-2.0));
    }
}

TEST_CASE("principal_sqrt") {
    CHECK(principal_sqrt(Matrix::Identity(4, 4)).isApprox(Matrix::Identity(4, 4)));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4;
    d(1, 1) = 9;
    const Matrix s = principal_sqrt(d);
    CHECK(s(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s(1, 1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(std::abs(s(0, 1)) < 1e-15);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = random_pd(6, rng);
        const PositiveDefiniteMatrix pd(a);
        const Matrix r = principal_sqrt(pd);
        CHECK((r * r - a).norm() / pd.norm() <= 1e-12);
        CHECK((r - r.transpose()).norm() == 0.0);
        CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(r).eigenvalues()(0) > 0.0);
    }
}

TEST_CASE("symplectic eigenvalues: 2x2 determinant rule") {
    Matrix a(2, 2);
    a << 3.0, 0.5, 0.5, 2.0;
    const auto d = symplectic_eigenvalues(a);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == doctest::Approx(std::sqrt(6.0 - 0.25)).epsilon(1e-14));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const Matrix b = random_pd(2, rng);
        CHECK(std::abs(symplectic_eigenvalues(b)[0] / std::sqrt(b.determinant()) - 1.0) <= 1e-12);
    }
}

TEST_CASE("symplectic eigenvalues: Williamson-diagonal input") {
    Vector diag(4);
    diag << 1, 1, 4, 4;
    const auto d = symplectic_eigenvalues(Matrix(diag.asDiagonal()));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(4.0).epsilon(1e-14));

    CHECK_THROWS_AS(symplectic_eigenvalues(Matrix::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(symplectic_eigenvalues(-Matrix::Identity(2, 2)), PositivityError);
}

TEST_CASE("symplectic eigenvalues agree with the nonsymmetric eig(JA) oracle") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const Matrix a = random_pd(8, rng);
        const auto d = symplectic_eigenvalues(a);
        const auto oracle = testing::nonsymmetric_symplectic_oracle(a);
        REQUIRE(d.size() == oracle.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(std::abs(d[i] - oracle[i]) <= 1e-10);
        }
    }
}

TEST_CASE("symplectic eigenvalues: invariance and scaling") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const int k = 1 + t % 4;
        const Matrix a = random_pd(2 * k, rng);
        const Matrix m = random_symplectic(k, 1000 + t);
        const auto d = symplectic_eigenvalues(a);
        const auto dm = symplectic_eigenvalues(Matrix(m * a * m.transpose()));
        const double nrm = PositiveDefiniteMatrix(a).norm();
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(std::abs(d[i] - dm[i]) <= 1e-9 * nrm);
        }
        const double alpha = 0.37 + t;
        const auto ds = symplectic_eigenvalues(Matrix(alpha * a));
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(std::abs(ds[i] / (alpha * d[i]) - 1.0) <= 1e-12);
        }
        for (std::size_t i = 1; i < d.size(); ++i) {
            CHECK(d[i - 1] <= d[i]);
        }
    }
}

TEST_CASE("pairing error on a tampered spectrum tolerance") {
    // A non-paired spectrum cannot come from a valid K, so force the check by
    // demanding an impossible pairing tolerance on a generic matrix.
    std::mt19937_64 rng(5);
    const Matrix a = random_pd(6, rng);
    Tolerances tol;
    tol.pair = -1.0;
    CHECK_THROWS_AS(symplectic_eigenvalues(a, tol), PairingError);
}

TEST_CASE("williamson: 2x2 and diagonal inputs") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 8;
    const auto w = williamson(a);
    CHECK(w.d[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK((w.M * a * w.M.transpose() - 4.0 * Matrix::Identity(2, 2)).norm() <= 1e-12);
    CHECK(w.symplectic_residual <= 1e-12);

    Vector diag(6);
    diag << 0.5, 0.5, 2, 2, 3, 3;
    const auto wd = williamson(Matrix(diag.asDiagonal()));
    CHECK(wd.diagonal_residual <= 1e-8);
    CHECK(wd.symplectic_residual <= 1e-8);
    CHECK(wd.normal_form().isApprox(Matrix(diag.asDiagonal())));
}

TEST_CASE("williamson residuals on random and degenerate inputs") {
    std::mt19937_64 rng(17);
    for (int dim = 2; dim <= 16; dim += 2) {
        for (int t = 0; t < 5; ++t) {
            const Matrix a = random_pd(dim, rng);
            const auto w = williamson(a);
            CHECK(w.diagonal_residual <= 1e-9);
            CHECK(w.symplectic_residual <= 1e-9);
        }
    }
    // All symplectic eigenvalues equal: the whole space is one eigenspace of -K^2.
    for (int k = 1; k <= 6; ++k) {
        const Matrix m = random_symplectic(k, 40 + k);
        const Matrix a = 1.7 * m * m.transpose();
        const auto w = williamson(a);
        CHECK(w.diagonal_residual <= 1e-8);
        CHECK(w.symplectic_residual <= 1e-8);
        for (double d : w.d.values) {
            CHECK(d == doctest::Approx(1.7).epsilon(1e-9));
        }
    }
    const auto wi = williamson(Matrix::Identity(8, 8));
    CHECK(wi.diagonal_residual <= 1e-12);
    CHECK(wi.symplectic_residual <= 1e-12);
}

TEST_CASE("is_gmatrix") {
    auto half = is_gmatrix(0.5 * Matrix::Identity(2, 2), 1e-12);
    CHECK(half.is_gmatrix);
    CHECK(half.d1 == doctest::Approx(0.5));

    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 0.125;
    auto r = is_gmatrix(a, 1e-12);
    CHECK_FALSE(r.is_gmatrix);
    CHECK(r.d1 == doctest::Approx(std::sqrt(0.125)).epsilon(1e-14));

    CHECK(is_gmatrix(Matrix::Identity(4, 4), 1e-12).is_gmatrix);

    Matrix asym = Matrix::Identity(2, 2);
    asym(1, 0) = 0.3;
    CHECK_THROWS_AS(is_gmatrix(asym, 1e-12), SymmetryError);
    CHECK_FALSE(is_gmatrix(Matrix::Zero(2, 2), 1e-12).is_gmatrix);
}

TEST_CASE("embed_hermitian") {
    const Matrix j2 = symplectic_form(1);
    const Matrix e = embed_hermitian(Matrix::Identity(2, 2), 0.5 * j2);
    CHECK(e.rows() == 4);
    CHECK(testing::min_symmetric_eigenvalue(e) == doctest::Approx(0.5).epsilon(1e-14));

    const Matrix e0 = embed_hermitian(0.5 * Matrix::Identity(2, 2), 0.5 * j2);
    CHECK(std::abs(testing::min_symmetric_eigenvalue(e0)) <= 1e-15);

    std::mt19937_64 rng(2);
    const Matrix s = testing::random_symmetric(3, rng);
    const Matrix z = embed_hermitian(s, Matrix::Zero(3, 3));
    CHECK(z.topLeftCorner(3, 3) == s);
    CHECK(z.bottomRightCorner(3, 3) == s);
    CHECK(z.topRightCorner(3, 3).isZero());
    CHECK(z.bottomLeftCorner(3, 3).isZero());

    CHECK_THROWS_AS(embed_hermitian(Matrix::Identity(2, 2), Matrix::Zero(3, 3)), DimensionError);
}

TEST_CASE("G-matrix test agrees with the Hermitian embedding near the boundary") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> margin(0.01, 0.2);
    std::uniform_real_distribution<double> spread(0.0, 2.0);
    int agreements = 0;
    for (int t = 0; t < 200; ++t) {
        const int k = 1 + t % 3;
        Vector diag(2 * k);
        const double d1 = t % 2 == 0 ? 0.5 + margin(rng) : 0.5 - margin(rng);
        for (int j = 0; j < k; ++j) {
            const double dj = j == 0 ? d1 : d1 + spread(rng);
            diag(2 * j) = diag(2 * j + 1) = dj;
        }
        const Matrix m = random_symplectic(k, 5000 + t);
        const Matrix a = m * diag.asDiagonal() * m.transpose();
        const bool via_d = is_gmatrix(a, 1e-9).is_gmatrix;
        const double lmin = testing::min_symmetric_eigenvalue(embed_hermitian(a, 0.5 * testing::form(k)));
        const bool via_embed = lmin >= -1e-9;
        CHECK(via_d == via_embed);
        CHECK(via_d == (t % 2 == 0));
        agreements += via_d == via_embed;
    }
    CHECK(agreements == 200);
}

TEST_CASE("symplectic_rayleigh") {
    Vector diag(2);
    diag << 3.0, 3.0;
    const PositiveDefiniteMatrix lam(Matrix(diag.asDiagonal()));
    const SymplecticVectorPair e{Vector::Unit(2, 0), Vector::Unit(2, 1)};
    CHECK(e.pairing() == 1.0);
    CHECK(symplectic_rayleigh(lam, e) == doctest::Approx(3.0));

    const PositiveDefiniteMatrix id(Matrix::Identity(2, 2));
    Vector u(2), v(2);
    u << 2.0, 0.0;
    v << 1.0, 0.5;
    // <u, Jv> = 2 * 0.5 = 1, value (4 + 1.25) / 2
    CHECK(symplectic_rayleigh(id, {u, v}) == doctest::Approx(2.625));
    // A negative pairing is repaired by flipping v; the value is unchanged.
    CHECK(symplectic_rayleigh(id, {u, -v}) == doctest::Approx(2.625));

    CHECK_THROWS_AS(symplectic_rayleigh(id, {u, u}), DegeneratePairError);

    std::mt19937_64 rng(31);
    std::normal_distribution<double> normal;
    const Matrix a = random_pd(6, rng);
    const PositiveDefiniteMatrix pd(a);
    const double d1 = symplectic_eigenvalues(pd).min();
    double lowest = 1e300;
    for (int t = 0; t < 10000; ++t) {
        Vector x(6), y(6);
        for (int i = 0; i < 6; ++i) {
            x(i) = normal(rng);
            y(i) = normal(rng);
        }
        const SymplecticVectorPair p{x, y};
        if (std::abs(p.pairing()) < 1e-6) {
            continue;
        }
        lowest = std::min(lowest, symplectic_rayleigh(pd, p));
    }
    CHECK(lowest >= d1 - 1e-9);
}

TEST_CASE("symplectic_rayleigh pointwise invariance") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 20; ++t) {
        const int k = 2;
        const Matrix a = random_pd(2 * k, rng);
        const Matrix m = random_symplectic(k, 300 + t);
        const Matrix mit = m.transpose().inverse();
        Vector u(2 * k), v(2 * k);
        for (int i = 0; i < 2 * k; ++i) {
            u(i) = normal(rng);
            v(i) = normal(rng);
        }
        const double base = symplectic_rayleigh(a, {u, v});
        const double moved = symplectic_rayleigh(Matrix(m * a * m.transpose()), {mit * u, mit * v});
        CHECK(std::abs(base - moved) <= 1e-9 * std::max(1.0, base));
    }
}

TEST_CASE("numerical_range_edge") {
    Vector diag(4);
    diag << 0.7, 0.7, 2.0, 2.0;
    const Matrix lam = diag.asDiagonal();
    const auto e = numerical_range_edge(lam, 50, 1);
    CHECK(std::abs(e.value - 0.7) <= 1e-6);
    CHECK(e.sampled_min >= 0.7 - 1e-9);
    CHECK(std::abs(e.pair.pairing() - 1.0) <= 1e-12);

    const Matrix m = random_symplectic(2, 8);
    const auto em = numerical_range_edge(Matrix(m * lam * m.transpose()), 50, 1);
    CHECK(std::abs(em.value - e.value) <= 1e-6);

    CHECK(numerical_range_edge(Matrix::Identity(6, 6), 10, 3).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(numerical_range_edge(Matrix::Identity(2, 2), 0, 3), DomainError);
}

TEST_CASE("random_symplectic") {
    const Matrix z = random_symplectic(3, 1, 0.0);
    CHECK(z.isApprox(Matrix::Identity(6, 6)));
    for (int k = 1; k <= 6; ++k) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Matrix m = random_symplectic(k, seed);
            const Matrix j = symplectic_form(k);
            CHECK((m.transpose() * j * m - j).norm() <= 1e-10);
            CHECK(std::abs(m.determinant() - 1.0) <= 1e-8);
        }
    }
    CHECK(random_symplectic(2, 9) == random_symplectic(2, 9));
    CHECK(random_symplectic(2, 9) != random_symplectic(2, 10));
}
