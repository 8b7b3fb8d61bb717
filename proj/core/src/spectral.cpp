#include "ngs/spectral.hpp"

#include "ngs/assembly.hpp"
#include "ngs/error.hpp"
#include "ngs/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace ngs {

SpectralBasis::SpectralBasis(Interval omega, std::size_t modes) : omega_(omega), modes_(modes)
{
    if (modes == 0 || modes % 2 == 0) {
        throw Error(Errc::invalid_argument, "spectral basis needs an odd number of modes");
    }
    if (!(omega.hi > omega.lo)) {
        throw Error(Errc::invalid_argument, "spectral basis needs a nonempty interval");
    }
}

double SpectralBasis::eval(std::size_t k, double x) const
{
    const double L = half_width();
    if (k == 0) {
        return 1.0 / std::sqrt(2.0 * L);
    }
    const double n = static_cast<double>((k + 1) / 2);
    const double s = x - 0.5 * (omega_.lo + omega_.hi);
    const double arg = (2.0 * n - 1.0) * std::numbers::pi * s / (2.0 * L);
    return (k % 2 == 1 ? std::cos(arg) : std::sin(arg)) / std::sqrt(L);
}

double SpectralBasis::reconstruct(const Eigen::VectorXd& coeffs, double x) const
{
    double sum = 0.0;
    for (std::size_t k = 0; k < modes_; ++k) {
        sum += coeffs(static_cast<Eigen::Index>(k)) * eval(k, x);
    }
    return sum;
}

Eigen::MatrixXd SpectralBasis::gram() const
{
    const auto n = static_cast<Eigen::Index>(modes_);
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t k = 1; k < modes_; k += 2) {
        const double m = static_cast<double>((k + 1) / 2);
        // (1/sqrt(2L)) (1/sqrt(L)) int cos((2m-1) pi s / 2L) ds
        const double sign = ((k + 1) / 2) % 2 == 1 ? 1.0 : -1.0;
        const double value = sign * 2.0 * std::numbers::sqrt2 / ((2.0 * m - 1.0) * std::numbers::pi);
        g(0, static_cast<Eigen::Index>(k)) = value;
        g(static_cast<Eigen::Index>(k), 0) = value;
    }
    return g;
}

Eigen::VectorXd SpectralOperators::project_samples(const Eigen::VectorXd& samples) const
{
    return values.transpose() * weights.cwiseProduct(samples);
}

Eigen::VectorXd SpectralOperators::project(const std::function<double(double)>& g) const
{
    Eigen::VectorXd samples(points.size());
    for (Eigen::Index p = 0; p < points.size(); ++p) {
        samples(p) = g(points(p));
    }
    return gram.ldlt().solve(project_samples(samples));
}

SpectralOperators assemble_spectral(const SpectralBasis& basis, const Kernel& kernel, std::size_t panels)
{
    if (panels == 0) {
        panels = std::max<std::size_t>(50, 5 * basis.size());
    }
    const QuadratureRule& rule = QuadratureRule::cached(8);
    const Interval omega = basis.omega();
    const double width = omega.length() / static_cast<double>(panels);
    const auto nq = static_cast<Eigen::Index>(panels * rule.size());
    const auto nm = static_cast<Eigen::Index>(basis.size());

    SpectralOperators ops;
    ops.points.resize(nq);
    ops.weights.resize(nq);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = omega.lo + static_cast<double>(p) * width;
        const double hi = p + 1 == panels ? omega.hi : lo + width;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto idx = static_cast<Eigen::Index>(p * rule.size() + q);
            ops.points(idx) = rule.point(q, lo, hi);
            ops.weights(idx) = rule.weight(q, lo, hi);
        }
    }
    ops.values.resize(nq, nm);
    for (Eigen::Index p = 0; p < nq; ++p) {
        for (Eigen::Index k = 0; k < nm; ++k) {
            ops.values(p, k) = basis.eval(static_cast<std::size_t>(k), ops.points(p));
        }
    }
    ops.gram = basis.gram();

    Eigen::MatrixXd kernel_values(nq, nq);
    for (Eigen::Index j = 0; j < nq; ++j) {
        for (Eigen::Index i = 0; i < nq; ++i) {
            kernel_values(i, j) = kernel(ops.points(i) - ops.points(j));
        }
    }
    const Eigen::MatrixXd weighted = ops.weights.asDiagonal() * ops.values;
    const Eigen::MatrixXd coupling = weighted.transpose() * kernel_values * weighted;
    ops.bilinear = kernel.total_mass() * ops.gram - coupling;
    ops.bilinear = 0.5 * (ops.bilinear + ops.bilinear.transpose()).eval();
    return ops;
}

DirichletProblem dirichlet_problem(const MmsCase& c)
{
    if (c.bc != BcMode::Dirichlet) {
        throw Error(Errc::invalid_argument, "the spectral oracle handles Dirichlet cases only");
    }
    DirichletProblem p;
    p.omega = c.omega;
    p.kernel = c.kernel;
    p.params = c.params;
    p.T = c.T;
    p.u0 = [u = c.u](double x) { return u(x, 0.0); };
    p.v0 = [v = c.v](double x) { return v(x, 0.0); };
    p.sources = make_sources(c);
    return p;
}

SpectralTrajectory solve_spectral(const DirichletProblem& problem, const SpectralBasis& basis, double tau)
{
    validate(problem.params);
    const double ratio = problem.T / tau;
    const double steps = std::round(ratio);
    if (!(tau > 0.0) || std::abs(steps - ratio) > 1e-9 * std::max(1.0, ratio)) {
        throw Error(Errc::tau_not_dividing_time, "time step does not divide the final time");
    }
    const SpectralOperators ops = assemble_spectral(basis, problem.kernel);
    const auto& p = problem.params;
    const Eigen::MatrixXd s_u = (1.0 / tau + p.f) * ops.gram + (p.d_u * p.scale_c) * ops.bilinear;
    const Eigen::MatrixXd s_v = (1.0 / tau + p.f + p.kappa) * ops.gram + (p.d_v * p.scale_c) * ops.bilinear;
    const Eigen::LLT<Eigen::MatrixXd> solve_u(s_u);
    const Eigen::LLT<Eigen::MatrixXd> solve_v(s_v);
    if (solve_u.info() != Eigen::Success || solve_v.info() != Eigen::Success) {
        throw Error(Errc::factorization_failure, "spectral system is not SPD");
    }

    const Eigen::Index nq = ops.points.size();
    const Eigen::VectorXd feed = p.f * ops.project_samples(Eigen::VectorXd::Ones(nq));
    auto sample = [&](const SpaceTimeField& q, double t) {
        Eigen::VectorXd s(nq);
        for (Eigen::Index i = 0; i < nq; ++i) {
            s(i) = q(ops.points(i), t);
        }
        return s;
    };

    SpectralTrajectory traj;
    traj.t.push_back(0.0);
    traj.u.push_back(ops.project(problem.u0));
    traj.v.push_back(ops.project(problem.v0));
    const auto n_steps = static_cast<std::size_t>(steps);
    for (std::size_t n = 1; n <= n_steps; ++n) {
        const double t = static_cast<double>(n) * tau;
        const Eigen::VectorXd uq = ops.values * traj.u.back();
        const Eigen::VectorXd vq = ops.values * traj.v.back();
        const Eigen::VectorXd reaction = ops.project_samples(uq.cwiseProduct(vq).cwiseProduct(vq));
        Eigen::VectorXd rhs_u = (1.0 / tau) * (ops.gram * traj.u.back()) + feed - reaction;
        Eigen::VectorXd rhs_v = (1.0 / tau) * (ops.gram * traj.v.back()) + reaction;
        if (problem.sources.u) {
            rhs_u += ops.project_samples(sample(problem.sources.u, t));
        }
        if (problem.sources.v) {
            rhs_v += ops.project_samples(sample(problem.sources.v, t));
        }
        traj.t.push_back(t);
        traj.u.push_back(solve_u.solve(rhs_u));
        traj.v.push_back(solve_v.solve(rhs_v));
        if (!traj.u.back().allFinite() || !traj.v.back().allFinite()) {
            throw Error(Errc::non_finite_state, "non-finite spectral state at step " + std::to_string(n));
        }
    }
    return traj;
}

FemSolution solve_fem(const DirichletProblem& problem, double h, double tau)
{
    Mesh1D mesh = Mesh1D::uniform(problem.omega, 0.0, h);
    const AssembledOperators ops = assemble_nonlocal(mesh, problem.kernel, BcMode::Dirichlet);
    const Stepper stepper(mesh, ops, problem.params, tau);
    StepperState state = run_to_time(stepper, stepper.interpolate(problem.u0, problem.v0), problem.T, problem.sources);
    return {std::move(mesh), std::move(state)};
}

double l2_distance(const Mesh1D& mesh, const Eigen::VectorXd& fem, const SpectralBasis& basis, const Eigen::VectorXd& coeffs)
{
    const QuadratureRule& rule = QuadratureRule::cached(8);
    double sum = 0.0;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        if (!mesh.element_in_omega(e)) {
            continue;
        }
        const double lo = mesh.element_lo(e);
        const double hi = mesh.element_hi(e);
        const double a = fem(static_cast<Eigen::Index>(mesh.element(e)[0]));
        const double b = fem(static_cast<Eigen::Index>(mesh.element(e)[1]));
        sum += rule.integrate(lo, hi, [&](double x) {
            const double s = (x - lo) / (hi - lo);
            const double d = (1.0 - s) * a + s * b - basis.reconstruct(coeffs, x);
            return d * d;
        });
    }
    return std::sqrt(sum);
}

OracleComparison compare_fem_spectral(const DirichletProblem& problem, double h, std::size_t modes, double tau)
{
    const FemSolution fem = solve_fem(problem, h, tau);
    const SpectralBasis basis(problem.omega, modes);
    const SpectralTrajectory spec = solve_spectral(problem, basis, tau);
    OracleComparison out;
    out.h = h;
    out.modes = modes;
    out.tau = tau;
    out.diff_u = l2_distance(fem.mesh, fem.state.u, basis, spec.u.back());
    out.diff_v = l2_distance(fem.mesh, fem.state.v, basis, spec.v.back());
    return out;
}

} // namespace ngs
