#include <doctest.h>

#include "oracles.hpp"

#include "ngs/error.hpp"
#include "ngs/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace ngs;

TEST_CASE("basis values")
{
    const SpectralBasis b({-1.0, 1.0}, 7);
    for (double x : {-1.0, -0.3, 0.0, 0.8}) {
        CHECK(b.eval(0, x) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    }
    // cosines vanish at both ends, sines at the centre
    for (std::size_t k : {1, 3, 5}) {
        CHECK(std::abs(b.eval(k, 1.0)) < 1e-15);
        CHECK(std::abs(b.eval(k, -1.0)) < 1e-15);
        CHECK(std::abs(b.eval(k + 1, 0.0)) < 1e-15);
    }
    CHECK_THROWS_AS(SpectralBasis({0.0, 1.0}, 4), Error);
}

TEST_CASE("Gram matrix matches quadrature of all pairs")
{
    for (Interval omega : {Interval{-1.0, 1.0}, Interval{0.0, 1.0}, Interval{-3.0, 5.0}}) {
        const SpectralBasis b(omega, 7);
        const Eigen::MatrixXd g = b.gram();
        for (std::size_t i = 0; i < 7; ++i) {
            for (std::size_t j = 0; j < 7; ++j) {
                const double ref = oracle::integrate([&](double x) { return b.eval(i, x) * b.eval(j, x); }, omega.lo,
                                                     omega.hi);
                CHECK(std::abs(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - ref) < 1e-12);
            }
        }
        // unit diagonal, but the constant is not orthogonal to the cosines
        CHECK((g.diagonal().array() - 1.0).abs().maxCoeff() < 1e-15);
        CHECK(g(0, 1) == doctest::Approx(2.0 * std::numbers::sqrt2 / std::numbers::pi));
        CHECK(g(0, 3) == doctest::Approx(-2.0 * std::numbers::sqrt2 / (3.0 * std::numbers::pi)));
        CHECK(g(0, 2) == 0.0);
    }
}

TEST_CASE("Galerkin bilinear form is symmetric and coercive")
{
    const SpectralBasis b({0.0, 1.0}, 11);
    const SpectralOperators ops = assemble_spectral(b, Kernel::gaussian());
    const Eigen::MatrixXd& B = ops.bilinear;
    CHECK((B - B.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(B, ops.gram);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("bilinear form agrees with the finite element quadratic form")
{
    // B[g, g] = 1/2 int int gamma (g(y) - g(x))^2 + int g^2 (Gamma - int_Omega gamma) for g in the span
    const SpectralBasis b({0.0, 1.0}, 5);
    const SpectralOperators ops = assemble_spectral(b, Kernel::gaussian());
    Eigen::VectorXd c(5);
    c << 0.4, -0.2, 0.7, 0.1, -0.3;
    const Kernel k = Kernel::gaussian();
    auto g = [&](double x) { return b.reconstruct(c, x); };
    auto outer = [&](double x) {
        const double gx = g(x);
        auto inner = [&](double y) {
            const double d = g(y) - gx;
            return k(x - y) * d * d;
        };
        return 0.5 * oracle::integrate(inner, 0.0, 1.0, {x}, 1e-12) +
               gx * gx * (k.total_mass() - k.partial_mass(x, {0.0, 1.0}));
    };
    const double ref = oracle::integrate(outer, 0.0, 1.0, {}, 1e-11);
    CHECK(c.dot(ops.bilinear * c) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("projection reproduces members of the span")
{
    const SpectralBasis b({-2.0, 3.0}, 9);
    const SpectralOperators ops = assemble_spectral(b, Kernel::gaussian());
    Eigen::VectorXd c = Eigen::VectorXd::Zero(9);
    c(0) = 0.3;
    c(3) = 2.0;
    c(4) = -1.0;
    c(8) = 0.25;
    const Eigen::VectorXd p = ops.project([&](double x) { return b.reconstruct(c, x); });
    CHECK((p - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection error shrinks and respects Bessel's inequality")
{
    auto g = [](double x) { return std::exp(-x) * std::sin(3.0 * x) * x * (1.0 - x); };
    const double norm2 = oracle::integrate([&](double x) { return g(x) * g(x); }, 0.0, 1.0);
    double prev = 1.0;
    for (std::size_t n : {5, 11, 21, 41}) {
        const SpectralBasis b({0.0, 1.0}, n);
        const SpectralOperators ops = assemble_spectral(b, Kernel::gaussian());
        const Eigen::VectorXd c = ops.project(g);
        CHECK(c.dot(ops.gram * c) <= norm2 * (1.0 + 1e-12));
        const double err =
            std::sqrt(oracle::integrate([&](double x) { return std::pow(g(x) - b.reconstruct(c, x), 2); }, 0.0, 1.0));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("zero data stays zero")
{
    DirichletProblem p;
    p.omega = {0.0, 1.0};
    p.params = {.d_u = 0.05, .d_v = 0.01, .f = 0.0, .kappa = 2.0};
    p.T = 0.5;
    p.u0 = [](double) { return 0.0; };
    p.v0 = [](double) { return 0.0; };
    const SpectralBasis b(p.omega, 11);
    const SpectralTrajectory tr = solve_spectral(p, b, 0.05);
    CHECK(tr.t.size() == 11);
    CHECK(tr.u.back().cwiseAbs().maxCoeff() == 0.0);
    CHECK(tr.v.back().cwiseAbs().maxCoeff() == 0.0);
    const OracleComparison c = compare_fem_spectral(p, 0.05, 11, 0.05);
    CHECK(c.diff_u == 0.0);
    CHECK(c.diff_v == 0.0);
}

TEST_CASE("finite element and spectral solutions approach each other")
{
    const DirichletProblem p = dirichlet_problem(dirichlet1());
    const OracleComparison coarse = compare_fem_spectral(p, 0.1, 7, 0.05);
    const OracleComparison fine = compare_fem_spectral(p, 0.05, 11, 0.05);
    CHECK(std::isfinite(coarse.diff_u));
    CHECK(fine.diff_u < coarse.diff_u);
    CHECK(fine.diff_u < 5e-3);
    CHECK_THROWS_AS(dirichlet_problem(neumann1()), Error);
}
