#pragma once

#include "ngs/assembly.hpp"
#include "ngs/kernel.hpp"
#include "ngs/mesh.hpp"
#include "ngs/stepper.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ngs {

// Manufactured solution with its analytic time derivatives and problem data.
struct MmsCase {
    std::string name;
    SpaceTimeField u;
    SpaceTimeField v;
    SpaceTimeField u_t;
    SpaceTimeField v_t;
    Interval omega;
    double collar = 0.0;
    Kernel kernel = Kernel::gaussian();
    BcMode bc = BcMode::Dirichlet;
    PhysicalParams params;
    double T = 1.0;
    std::vector<double> levels;              // default mesh sizes of the refinement study
    std::function<double(double)> tau_rule;  // tau(h)
};

MmsCase dirichlet1();
MmsCase neumann1();
std::vector<std::string> registered_cases();
// Throws Error(unknown_case).
MmsCase find_case(const std::string& name);

// Integration domain of the nonlocal operator for the case (Omega or the extended domain).
Interval integration_domain(const MmsCase& c);

// (q_u, q_v) at (x, t). On Omega the residual of the model equations; on the collar -d K w.
std::pair<double, double> source_terms(const MmsCase& c, double x, double t, const StrongFormOptions& opts = {});

Sources make_sources(const MmsCase& c, const StrongFormOptions& opts = {});

// ||w_h - exact(., t)|| / ||exact(., t)|| over Omega with n-point Gauss per element.
// Throws Error(zero_reference) when the exact field vanishes.
double l2_relative_error(const Mesh1D& mesh, const Eigen::VectorXd& coeffs, const SpaceTimeField& exact, double t,
                         std::size_t points = 5);

// Absolute L2(Omega) norm of w_h - exact(., t).
double l2_error(const Mesh1D& mesh, const Eigen::VectorXd& coeffs, const SpaceTimeField& exact, double t,
                std::size_t points = 5);

struct ConvergenceLevel {
    double h = 0.0;
    double tau = 0.0;
    std::size_t nodes = 0;
    std::size_t elements = 0;
    double err_u = 0.0;
    double err_v = 0.0;
    std::optional<double> rate_u;
    std::optional<double> rate_v;
};

struct ConvergenceReport {
    std::string case_name;
    std::vector<ConvergenceLevel> levels;
};

// log(e_i / e_{i+1}) / log(h_i / h_{i+1})
double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

struct LevelResult {
    Mesh1D mesh;
    StepperState state;
    ConvergenceLevel level;
};

LevelResult run_level(const MmsCase& c, double h, double tau, const QuadratureRule& rule = QuadratureRule::cached(4));

ConvergenceReport convergence_study(const MmsCase& c, const std::vector<double>& levels,
                                    const std::function<double(double)>& tau_rule);

} // namespace ngs
