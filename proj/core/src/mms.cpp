#include "ngs/mms.hpp"

#include "ngs/error.hpp"

#include <cmath>
#include <numbers>

namespace ngs {

MmsCase dirichlet1()
{
    using std::cos;
    using std::exp;
    using std::sin;
    constexpr double pi = std::numbers::pi;

    MmsCase c;
    c.name = "dirichlet1";
    c.u = [](double x, double t) { return x * x * cos(pi * x / 2.0) * exp(-x + x * x - t); };
    c.u_t = [](double x, double t) { return -x * x * cos(pi * x / 2.0) * exp(-x + x * x - t); };
    c.v = [](double x, double t) {
        return sin(x) * (1.0 - x) * exp(-x + x * x) * (10.0 + x * t) * cos(t * t) / 300.0;
    };
    c.v_t = [](double x, double t) {
        const double g = sin(x) * (1.0 - x) * exp(-x + x * x) / 300.0;
        return g * (x * cos(t * t) - (10.0 + x * t) * 2.0 * t * sin(t * t));
    };
    c.omega = {0.0, 1.0};
    c.collar = 0.0;
    c.kernel = Kernel::gaussian();
    c.bc = BcMode::Dirichlet;
    c.params = {.d_u = 0.05, .d_v = 0.01, .f = 6.0, .kappa = 2.0, .scale_c = 1.0};
    c.T = 1.0;
    c.levels = {0.05, 0.025, 0.0125, 0.00625, 0.003125};
    c.tau_rule = [](double h) { return 2.0 * h; };
    return c;
}

MmsCase neumann1()
{
    using std::cos;
    using std::exp;
    using std::sin;
    constexpr double pi = std::numbers::pi;

    MmsCase c;
    c.name = "neumann1";
    c.u = [](double x, double t) { return (x - 10.0) * (x + 10.0) * cos(t) / 100.0; };
    c.u_t = [](double x, double t) { return -(x - 10.0) * (x + 10.0) * sin(t) / 100.0; };
    c.v = [](double x, double t) { return sin(pi * x / 10.0) * exp(-t * t) / 2.0; };
    c.v_t = [](double x, double t) { return -t * sin(pi * x / 10.0) * exp(-t * t); };
    c.omega = {-8.0, 8.0};
    c.collar = 2.0;
    c.kernel = Kernel::truncated_growing_exp(0.5, 2.0);
    c.bc = BcMode::Neumann;
    c.params = {.d_u = 0.05, .d_v = 0.01, .f = 2.0, .kappa = 3.0, .scale_c = 1.0};
    c.T = 1.0;
    c.levels = {0.5, 0.25, 0.125, 0.0625, 0.03125};
    c.tau_rule = [](double h) { return h / 5.0; };
    return c;
}

std::vector<std::string> registered_cases() { return {"dirichlet1", "neumann1"}; }

MmsCase find_case(const std::string& name)
{
    if (name == "dirichlet1") {
        return dirichlet1();
    }
    if (name == "neumann1") {
        return neumann1();
    }
    throw Error(Errc::unknown_case, "unknown manufactured case '" + name + "' (known: dirichlet1, neumann1)");
}

Interval integration_domain(const MmsCase& c)
{
    return {c.omega.lo - c.collar, c.omega.hi + c.collar};
}

std::pair<double, double> source_terms(const MmsCase& c, double x, double t, const StrongFormOptions& opts)
{
    const Interval domain = integration_domain(c);
    const double Ku = eval_K_strong([&](double y) { return c.u(y, t); }, x, c.kernel, c.bc, domain, opts);
    const double Kv = eval_K_strong([&](double y) { return c.v(y, t); }, x, c.kernel, c.bc, domain, opts);
    const auto& p = c.params;
    if (!c.omega.contains(x)) {
        return {-p.d_u * p.scale_c * Ku, -p.d_v * p.scale_c * Kv};
    }
    const double u = c.u(x, t);
    const double v = c.v(x, t);
    const double uvv = u * v * v;
    const double q_u = c.u_t(x, t) - p.d_u * p.scale_c * Ku + uvv - p.f * (1.0 - u);
    const double q_v = c.v_t(x, t) - p.d_v * p.scale_c * Kv - uvv + (p.f + p.kappa) * v;
    return {q_u, q_v};
}

Sources make_sources(const MmsCase& c, const StrongFormOptions& opts)
{
    Sources s;
    s.u = [c, opts](double x, double t) {
        const double Ku = eval_K_strong([&](double y) { return c.u(y, t); }, x, c.kernel, c.bc, integration_domain(c), opts);
        const auto& p = c.params;
        if (!c.omega.contains(x)) {
            return -p.d_u * p.scale_c * Ku;
        }
        const double u = c.u(x, t);
        const double v = c.v(x, t);
        return c.u_t(x, t) - p.d_u * p.scale_c * Ku + u * v * v - p.f * (1.0 - u);
    };
    s.v = [c, opts](double x, double t) {
        const double Kv = eval_K_strong([&](double y) { return c.v(y, t); }, x, c.kernel, c.bc, integration_domain(c), opts);
        const auto& p = c.params;
        if (!c.omega.contains(x)) {
            return -p.d_v * p.scale_c * Kv;
        }
        const double u = c.u(x, t);
        const double v = c.v(x, t);
        return c.v_t(x, t) - p.d_v * p.scale_c * Kv - u * v * v + (p.f + p.kappa) * v;
    };
    return s;
}

double l2_error(const Mesh1D& mesh, const Eigen::VectorXd& coeffs, const SpaceTimeField& exact, double t, std::size_t points)
{
    const QuadratureRule rule = QuadratureRule::gauss_legendre(points);
    double err = 0.0;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        if (!mesh.element_in_omega(e)) {
            continue;
        }
        const double lo = mesh.element_lo(e);
        const double hi = mesh.element_hi(e);
        const double ca = coeffs(static_cast<Eigen::Index>(mesh.element(e)[0]));
        const double cb = coeffs(static_cast<Eigen::Index>(mesh.element(e)[1]));
        err += rule.integrate(lo, hi, [&](double x) {
            const double s = (x - lo) / (hi - lo);
            const double d = (1.0 - s) * ca + s * cb - exact(x, t);
            return d * d;
        });
    }
    return std::sqrt(err);
}

double l2_relative_error(const Mesh1D& mesh, const Eigen::VectorXd& coeffs, const SpaceTimeField& exact, double t,
                         std::size_t points)
{
    const QuadratureRule rule = QuadratureRule::gauss_legendre(points);
    double ref = 0.0;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        if (!mesh.element_in_omega(e)) {
            continue;
        }
        ref += rule.integrate(mesh.element_lo(e), mesh.element_hi(e), [&](double x) {
            const double w = exact(x, t);
            return w * w;
        });
    }
    if (ref == 0.0) {
        throw Error(Errc::zero_reference, "reference field has zero L2 norm");
    }
    return l2_error(mesh, coeffs, exact, t, points) / std::sqrt(ref);
}

double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine)
{
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

LevelResult run_level(const MmsCase& c, double h, double tau, const QuadratureRule& rule)
{
    Mesh1D mesh = Mesh1D::uniform(c.omega, c.collar, h);
    const AssembledOperators ops = assemble_nonlocal(mesh, c.kernel, c.bc, rule);
    const Stepper stepper(mesh, ops, c.params, tau);
    StepperState state = stepper.interpolate([&](double x) { return c.u(x, 0.0); }, [&](double x) { return c.v(x, 0.0); });
    state = run_to_time(stepper, std::move(state), c.T, make_sources(c));

    ConvergenceLevel level;
    level.h = h;
    level.tau = tau;
    level.nodes = mesh.node_count();
    level.elements = mesh.element_count();
    level.err_u = l2_relative_error(mesh, state.u, c.u, c.T);
    level.err_v = l2_relative_error(mesh, state.v, c.v, c.T);
    return {std::move(mesh), std::move(state), level};
}

ConvergenceReport convergence_study(const MmsCase& c, const std::vector<double>& levels,
                                    const std::function<double(double)>& tau_rule)
{
    ConvergenceReport report;
    report.case_name = c.name;
    for (double h : levels) {
        ConvergenceLevel level = run_level(c, h, tau_rule(h)).level;
        if (!report.levels.empty()) {
            const auto& prev = report.levels.back();
            level.rate_u = convergence_rate(prev.err_u, level.err_u, prev.h, level.h);
            level.rate_v = convergence_rate(prev.err_v, level.err_v, prev.h, level.h);
        }
        report.levels.push_back(level);
    }
    return report;
}

} // namespace ngs
