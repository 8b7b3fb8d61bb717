#include <doctest.h>

#include "ngs/assembly.hpp"
#include "ngs/error.hpp"
#include "ngs/stepper.hpp"

#include <cmath>

using namespace ngs;

namespace {

struct Neumann {
    Mesh1D mesh = Mesh1D::uniform({-4.0, 4.0}, 2.0, 0.1);
    Kernel kernel = Kernel::truncated_growing_exp(0.5, 2.0);
    AssembledOperators ops = assemble_nonlocal(mesh, kernel, BcMode::Neumann);
};

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("pure mass system returns its right-hand side")
{
    const Mesh1D m = Mesh1D::uniform({0.0, 1.0}, 0.0, 0.05);
    const AssembledOperators ops = assemble_nonlocal(m, Kernel::gaussian(), BcMode::Dirichlet);
    const double tau = 0.1;
    const FactoredSystems sys = FactoredSystems::build(ops, {.d_u = 0.0, .d_v = 0.0, .f = 0.0, .kappa = 0.0}, tau);
    Eigen::VectorXd u(ops.mass_omega.rows());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        u(i) = std::sin(0.3 * static_cast<double>(i)) + 2.0;
    }
    const Eigen::VectorXd x = sys.u().solve(ops.mass_omega * u / tau);
    CHECK(max_abs(x - u) < 1e-12);
}

TEST_CASE("Neumann system matrix maps constants to the scaled mass")
{
    const Neumann n;
    const PhysicalParams p{.d_u = 0.7, .d_v = 0.2, .f = 0.3, .kappa = 0.1};
    const double tau = 0.05;
    const FactoredSystems sys = FactoredSystems::build(n.ops, p, tau);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(n.ops.mass_omega.rows());
    const Eigen::VectorXd rhs = (1.0 / tau + p.f) * n.ops.mass_omega * one;
    CHECK(max_abs(sys.u().solve(rhs) - one) < 1e-10);
}

TEST_CASE("Table-1 systems factor with a small residual")
{
    const Mesh1D m = Mesh1D::uniform({0.0, 1.0}, 0.0, 0.05);
    const AssembledOperators ops = assemble_nonlocal(m, Kernel::gaussian(), BcMode::Dirichlet);
    const FactoredSystems sys =
        FactoredSystems::build(ops, {.d_u = 0.05, .d_v = 0.01, .f = 6.0, .kappa = 2.0}, 0.1);
    CHECK(sys.u().probe_residual() <= 1e-10);
    CHECK(sys.v().probe_residual() <= 1e-10);
}

TEST_CASE("banded and dense factorizations agree")
{
    const Mesh1D m = Mesh1D::uniform({-10.0, 10.0}, 2.0, 0.05);
    const AssembledOperators ops = assemble_nonlocal(m, Kernel::truncated_growing_exp(0.5, 2.0), BcMode::Neumann);
    const Eigen::MatrixXd S = (1.0 / 0.01) * ops.mass_omega + ops.nonlocal;
    const SpdSolver banded(S);
    CHECK(banded.banded());
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(S.rows(), -1.0, 2.0);
    const Eigen::VectorXd dense = S.llt().solve(b);
    CHECK(max_abs(banded.solve(b) - dense) <= 1e-10 * max_abs(dense));
}

TEST_CASE("(1, 0) is a fixed point under Neumann constraints")
{
    const Neumann n;
    const Stepper s(n.mesh, n.ops, {.d_u = 0.05, .d_v = 0.01, .f = 2.0, .kappa = 3.0}, 0.01);
    StepperState st = s.interpolate([](double) { return 1.0; }, [](double) { return 0.0; });
    for (int k = 0; k < 100; ++k) {
        const StepperState next = s.step(st);
        CHECK(max_abs(next.u - st.u) <= 1e-12);
        CHECK(max_abs(next.v) == 0.0);
        st = next;
    }
    CHECK(st.n == 100);
}

TEST_CASE("pure decay of v")
{
    const Mesh1D m = Mesh1D::uniform({0.0, 1.0}, 0.0, 0.05);
    const AssembledOperators ops = assemble_nonlocal(m, Kernel::gaussian(), BcMode::Dirichlet);
    const double tau = 0.05;
    const double kappa = 3.0;
    const Stepper s(m, ops, {.d_u = 0.0, .d_v = 0.0, .f = 0.0, .kappa = kappa}, tau);
    StepperState st = s.interpolate([](double) { return 0.0; }, [](double x) { return std::cos(x); });
    const Eigen::VectorXd v0 = st.v;
    for (int k = 1; k <= 5; ++k) {
        st = s.step(st);
        const Eigen::VectorXd expected = v0 / std::pow(1.0 + tau * kappa, k);
        CHECK(max_abs(st.v - expected) <= 1e-13);
        CHECK(max_abs(st.u) == 0.0);
    }
}

TEST_CASE("run_to_time step counting")
{
    const Mesh1D m = Mesh1D::uniform({0.0, 1.0}, 0.0, 0.1);
    const AssembledOperators ops = assemble_nonlocal(m, Kernel::gaussian(), BcMode::Dirichlet);
    const Stepper s(m, ops, {.d_u = 0.05, .d_v = 0.01, .f = 6.0, .kappa = 2.0}, 0.1);
    const StepperState st0 = s.interpolate([](double x) { return x; }, [](double x) { return 1.0 - x; });

    RunTrace trace;
    const StepperState st = run_to_time(s, st0, 1.0, {}, &trace);
    CHECK(st.n == 10);
    CHECK(st.t == 1.0);
    CHECK(trace.rows.size() == 11);
    CHECK(trace.energy_bound > 0.0);

    const StepperState same = run_to_time(s, st0, 0.0);
    CHECK(same.n == 0);
    CHECK(max_abs(same.u - st0.u) == 0.0);

    try {
        run_to_time(s, st0, 0.95);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::tau_not_dividing_time);
    }
}

TEST_CASE("steady run stops after one step at a fixed point")
{
    const Neumann n;
    const Stepper s(n.mesh, n.ops, {.d_u = 1.0, .d_v = 0.01, .f = 0.01, .kappa = 0.0977}, 0.01);
    const SteadyResult r = run_to_steady(s, s.interpolate([](double) { return 1.0; }, [](double) { return 0.0; }),
                                         1e-5, 100);
    CHECK(r.converged);
    CHECK(r.state.n == 1);
    CHECK_NOTHROW(r.require_converged());
}

TEST_CASE("max steps surfaces as an error")
{
    const Neumann n;
    const Stepper s(n.mesh, n.ops, {.d_u = 1.0, .d_v = 0.01, .f = 0.01, .kappa = 0.0977}, 0.01);
    const SteadyResult r =
        run_to_steady(s, s.interpolate([](double x) { return 1.0 - 0.3 * std::exp(-x * x); },
                                       [](double x) { return std::exp(-x * x); }),
                      1e-12, 5);
    CHECK_FALSE(r.converged);
    CHECK(r.history.size() == 5);
    try {
        r.require_converged();
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::max_steps_exceeded);
    }
}

TEST_CASE("linear part: superposition when the reaction is switched off")
{
    // with u = 0 initially and no v the reaction term vanishes identically along the run
    const Neumann n;
    const Stepper s(n.mesh, n.ops, {.d_u = 0.3, .d_v = 0.1, .f = 0.0, .kappa = 0.4}, 0.02);
    auto run = [&](auto v0) {
        StepperState st = s.interpolate([](double) { return 0.0; }, v0);
        for (int k = 0; k < 10; ++k) {
            st = s.step(st);
        }
        return st.v;
    };
    const Eigen::VectorXd a = run([](double x) { return std::sin(x); });
    const Eigen::VectorXd b = run([](double x) { return x * x; });
    const Eigen::VectorXd ab = run([](double x) { return 2.0 * std::sin(x) - 3.0 * x * x; });
    CHECK(max_abs(ab - (2.0 * a - 3.0 * b)) <= 1e-12 * max_abs(ab));
}

TEST_CASE("runs are deterministic and preserve mirror symmetry")
{
    const Mesh1D m = Mesh1D::uniform({-5.0, 5.0}, 5.0, 0.1);
    const AssembledOperators ops = assemble_nonlocal(m, Kernel::dispersal_exp(5.0, 5.0), BcMode::Neumann);
    PhysicalParams p{.d_u = 1.0, .d_v = 0.01, .f = 0.01, .kappa = 0.0977};
    p.scale_c = Kernel::dispersal_exp(5.0, 5.0).laplacian_scale();
    const Stepper s(m, ops, p, 0.01);
    auto u0 = [](double x) { return 1.0 - 0.3 * std::exp(-10.0 * x * x); };
    auto v0 = [](double x) { return std::exp(-10.0 * x * x); };
    const StepperState a = run_to_time(s, s.interpolate(u0, v0), 1.0);
    const StepperState b = run_to_time(s, s.interpolate(u0, v0), 1.0);
    CHECK((a.u - b.u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.v - b.v).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.v - a.v.reverse()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((a.u - a.u.reverse()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("local model needs a collar-free mesh")
{
    const Neumann n;
    CHECK_THROWS_AS(Stepper(n.mesh, n.ops, {.d_u = 1.0, .d_v = 0.1, .f = 0.1, .kappa = 0.1}, 0.1, DiffusionModel::Local),
                    Error);
}

TEST_CASE("negative rates are rejected")
{
    for (PhysicalParams p : {PhysicalParams{.d_u = -1.0}, PhysicalParams{.f = -0.1}, PhysicalParams{.kappa = -2.0},
                             PhysicalParams{.scale_c = 0.0}}) {
        try {
            validate(p);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::negative_rate);
        }
    }
}
