#pragma once

#include "ngs/assembly.hpp"
#include "ngs/mesh.hpp"
#include "ngs/quadrature.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace ngs {

struct PhysicalParams {
    double d_u = 0.0;
    double d_v = 0.0;
    double f = 0.0;
    double kappa = 0.0;
    double scale_c = 1.0; // multiplier on the diffusion operator
};

// Throws Error(negative_rate) for negative rates or a nonpositive scale.
void validate(const PhysicalParams& params);

// Nodal coefficients over all mesh nodes (collar included) at time t = t_n.
struct StepperState {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    double t = 0.0;
    std::size_t n = 0;
};

enum class DiffusionModel {
    Nonlocal, // scale_c * A_nl
    Local,    // A_lap, natural boundary; needs a collar-free mesh
};

// Cholesky factorization of an SPD matrix, dense or sparse depending on its bandwidth.
class SpdSolver {
public:
    explicit SpdSolver(const Eigen::MatrixXd& matrix);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    bool banded() const noexcept { return sparse_ != nullptr; }
    Eigen::Index bandwidth() const noexcept { return bandwidth_; }
    // Relative residual measured on a fixed probe vector at construction.
    double probe_residual() const noexcept { return probe_residual_; }

private:
    using SparseLLT = Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::NaturalOrdering<int>>;

    std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> dense_;
    std::shared_ptr<const SparseLLT> sparse_;
    Eigen::Index bandwidth_ = 0;
    double probe_residual_ = 0.0;
};

// S_u = (1/tau + f) M_Omega + d_u c A and S_v = (1/tau + f + kappa) M_Omega + d_v c A,
// factored once and reused every step.
class FactoredSystems {
public:
    static FactoredSystems build(const AssembledOperators& ops, const PhysicalParams& params, double tau,
                                 DiffusionModel model = DiffusionModel::Nonlocal);

    const SpdSolver& u() const noexcept { return u_; }
    const SpdSolver& v() const noexcept { return v_; }
    double tau() const noexcept { return tau_; }

private:
    FactoredSystems(SpdSolver u, SpdSolver v, double tau) : u_(std::move(u)), v_(std::move(v)), tau_(tau) {}

    SpdSolver u_;
    SpdSolver v_;
    double tau_;
};

using SpaceTimeField = std::function<double(double x, double t)>;

// Manufactured sources; empty members are treated as zero.
struct Sources {
    SpaceTimeField u;
    SpaceTimeField v;
};

struct TraceRow {
    std::size_t step = 0;
    double t = 0.0;
    double norm_u = 0.0;
    double norm_v = 0.0;
    double criterion = 0.0;
};

struct RunTrace {
    std::vector<TraceRow> rows;
    // Monitor for ||u(t)||^2 <= ||u(0)||^2 + |Omega|; logged, never enforced.
    double energy_bound = 0.0;
    std::size_t energy_bound_exceedances = 0;
};

// Semi-implicit first-order scheme: linear terms implicit, u v^2 explicit.
class Stepper {
public:
    Stepper(const Mesh1D& mesh, const AssembledOperators& ops, const PhysicalParams& params, double tau,
            DiffusionModel model = DiffusionModel::Nonlocal);

    StepperState step(const StepperState& state, const Sources& sources = {}) const;
    // Same as step() but with an explicit t_{n+1}.
    StepperState step_to(const StepperState& state, double t_next, const Sources& sources = {}) const;

    double tau() const noexcept { return systems_.tau(); }
    const Mesh1D& mesh() const noexcept { return mesh_; }
    const FactoredSystems& systems() const noexcept { return systems_; }
    const PhysicalParams& params() const noexcept { return params_; }

    double norm_omega(const Eigen::VectorXd& w) const; // L2(Omega) norm of the P1 field
    // int_Omega u_h v_h^2 phi_i, 3-point Gauss per element
    Eigen::VectorXd reaction_load(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    // int q(., t) phi_i over the whole mesh, 4-point Gauss per element
    Eigen::VectorXd source_load(const SpaceTimeField& q, double t) const;

    StepperState interpolate(const std::function<double(double)>& u0, const std::function<double(double)>& v0) const;

private:
    Mesh1D mesh_;
    PhysicalParams params_;
    FactoredSystems systems_;
    Eigen::SparseMatrix<double> mass_omega_;
    Eigen::VectorXd feed_;
    const QuadratureRule& reaction_rule_;
    const QuadratureRule& load_rule_;
};

// Exactly N = T / tau steps; throws Error(tau_not_dividing_time) otherwise.
StepperState run_to_time(const Stepper& stepper, StepperState state, double T, const Sources& sources = {},
                         RunTrace* trace = nullptr);

struct SteadyResult {
    StepperState state;
    std::vector<double> history; // steady criterion per step
    bool converged = false;

    // Throws Error(max_steps_exceeded) with the last criterion when not converged.
    void require_converged() const;
};

// Steps until max over species of ||w^{n+1} - w^n|| / ||w^n|| in L2(Omega) is <= tol.
SteadyResult run_to_steady(const Stepper& stepper, StepperState state, double tol, std::size_t max_steps,
                           RunTrace* trace = nullptr);

// Relative change between successive states used as the steady criterion.
double steady_criterion(const Stepper& stepper, const StepperState& prev, const StepperState& next);

} // namespace ngs
