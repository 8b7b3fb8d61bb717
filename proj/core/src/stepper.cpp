#include "ngs/stepper.hpp"

#include "ngs/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ngs {

namespace {

Eigen::SparseMatrix<double> to_sparse(const Eigen::MatrixXd& m)
{
    std::vector<Eigen::Triplet<double>> entries;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (m(i, j) != 0.0) {
                entries.emplace_back(static_cast<int>(i), static_cast<int>(j), m(i, j));
            }
        }
    }
    Eigen::SparseMatrix<double> s(m.rows(), m.cols());
    s.setFromTriplets(entries.begin(), entries.end());
    return s;
}

Eigen::Index half_bandwidth(const Eigen::MatrixXd& m)
{
    Eigen::Index band = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (m(i, j) != 0.0) {
                band = std::max(band, i > j ? i - j : j - i);
            }
        }
    }
    return band;
}

bool all_finite(const Eigen::VectorXd& w) { return w.allFinite(); }

double relative_change(double diff, double base)
{
    if (base == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / base;
}

} // namespace

void validate(const PhysicalParams& params)
{
    if (params.d_u < 0.0 || params.d_v < 0.0 || params.f < 0.0 || params.kappa < 0.0) {
        throw Error(Errc::negative_rate, "diffusion, feed and kill rates must be nonnegative");
    }
    if (!(params.scale_c > 0.0) || !std::isfinite(params.scale_c)) {
        throw Error(Errc::negative_rate, "diffusion scale must be positive and finite");
    }
}

SpdSolver::SpdSolver(const Eigen::MatrixXd& matrix)
{
    const Eigen::Index n = matrix.rows();
    bandwidth_ = half_bandwidth(matrix);
    if (4 * bandwidth_ < n) {
        auto llt = std::make_shared<SparseLLT>(to_sparse(matrix));
        if (llt->info() != Eigen::Success) {
            throw Error(Errc::factorization_failure, "sparse Cholesky factorization failed; matrix is not SPD");
        }
        sparse_ = std::move(llt);
    } else {
        auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(matrix);
        if (llt->info() != Eigen::Success) {
            throw Error(Errc::factorization_failure, "dense Cholesky factorization failed; matrix is not SPD");
        }
        dense_ = std::move(llt);
    }

    Eigen::VectorXd probe(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        probe(i) = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
    }
    const Eigen::VectorXd x = solve(probe);
    probe_residual_ = (matrix * x - probe).norm() / probe.norm();
    if (!(probe_residual_ <= 1e-10)) {
        std::ostringstream msg;
        msg << "factorization residual " << probe_residual_ << " exceeds 1e-10";
        throw Error(Errc::factorization_failure, msg.str());
    }
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& rhs) const
{
    if (sparse_) {
        return sparse_->solve(rhs);
    }
    return dense_->solve(rhs);
}

FactoredSystems FactoredSystems::build(const AssembledOperators& ops, const PhysicalParams& params, double tau,
                                       DiffusionModel model)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw Error(Errc::invalid_argument, "time step must be positive");
    }
    validate(params);
    const Eigen::MatrixXd& diffusion = model == DiffusionModel::Nonlocal ? ops.nonlocal : ops.laplacian;
    const double c = model == DiffusionModel::Nonlocal ? params.scale_c : 1.0;
    const Eigen::MatrixXd s_u = (1.0 / tau + params.f) * ops.mass_omega + (params.d_u * c) * diffusion;
    const Eigen::MatrixXd s_v = (1.0 / tau + params.f + params.kappa) * ops.mass_omega + (params.d_v * c) * diffusion;
    return FactoredSystems(SpdSolver(s_u), SpdSolver(s_v), tau);
}

Stepper::Stepper(const Mesh1D& mesh, const AssembledOperators& ops, const PhysicalParams& params, double tau,
                 DiffusionModel model)
    : mesh_(mesh),
      params_(params),
      systems_(FactoredSystems::build(ops, params, tau, model)),
      mass_omega_(to_sparse(ops.mass_omega)),
      reaction_rule_(QuadratureRule::cached(3)),
      load_rule_(QuadratureRule::cached(4))
{
    if (model == DiffusionModel::Local && mesh.collar_width() != 0.0) {
        throw Error(Errc::invalid_argument, "the local diffusion model runs on a collar-free mesh");
    }
    feed_ = params_.f * (mass_omega_ * Eigen::VectorXd::Ones(mass_omega_.rows()));
}

double Stepper::norm_omega(const Eigen::VectorXd& w) const { return std::sqrt(std::max(0.0, w.dot(mass_omega_ * w))); }

Eigen::VectorXd Stepper::reaction_load(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const
{
    Eigen::VectorXd load = Eigen::VectorXd::Zero(u.size());
    for (std::size_t e = 0; e < mesh_.element_count(); ++e) {
        if (!mesh_.element_in_omega(e)) {
            continue;
        }
        const double lo = mesh_.element_lo(e);
        const double hi = mesh_.element_hi(e);
        const auto a = static_cast<Eigen::Index>(mesh_.element(e)[0]);
        const auto b = static_cast<Eigen::Index>(mesh_.element(e)[1]);
        for (std::size_t q = 0; q < reaction_rule_.size(); ++q) {
            const double t = 0.5 * (1.0 + reaction_rule_.points[q]);
            const double w = reaction_rule_.weight(q, lo, hi);
            const double uh = (1.0 - t) * u(a) + t * u(b);
            const double vh = (1.0 - t) * v(a) + t * v(b);
            const double val = w * uh * vh * vh;
            load(a) += val * (1.0 - t);
            load(b) += val * t;
        }
    }
    return load;
}

Eigen::VectorXd Stepper::source_load(const SpaceTimeField& q, double t) const
{
    Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh_.node_count()));
    if (!q) {
        return load;
    }
    for (std::size_t e = 0; e < mesh_.element_count(); ++e) {
        const double lo = mesh_.element_lo(e);
        const double hi = mesh_.element_hi(e);
        const auto a = static_cast<Eigen::Index>(mesh_.element(e)[0]);
        const auto b = static_cast<Eigen::Index>(mesh_.element(e)[1]);
        for (std::size_t k = 0; k < load_rule_.size(); ++k) {
            const double s = 0.5 * (1.0 + load_rule_.points[k]);
            const double val = load_rule_.weight(k, lo, hi) * q(load_rule_.point(k, lo, hi), t);
            load(a) += val * (1.0 - s);
            load(b) += val * s;
        }
    }
    return load;
}

StepperState Stepper::interpolate(const std::function<double(double)>& u0, const std::function<double(double)>& v0) const
{
    StepperState s;
    const auto n = static_cast<Eigen::Index>(mesh_.node_count());
    s.u.resize(n);
    s.v.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = mesh_.node(static_cast<std::size_t>(i));
        s.u(i) = u0(x);
        s.v(i) = v0(x);
    }
    return s;
}

StepperState Stepper::step(const StepperState& state, const Sources& sources) const
{
    return step_to(state, state.t + tau(), sources);
}

StepperState Stepper::step_to(const StepperState& state, double t_next, const Sources& sources) const
{
    const double inv_tau = 1.0 / tau();
    const Eigen::VectorXd reaction = reaction_load(state.u, state.v);

    Eigen::VectorXd rhs_u = inv_tau * (mass_omega_ * state.u) + feed_ - reaction;
    Eigen::VectorXd rhs_v = inv_tau * (mass_omega_ * state.v) + reaction;
    if (sources.u) {
        rhs_u += source_load(sources.u, t_next);
    }
    if (sources.v) {
        rhs_v += source_load(sources.v, t_next);
    }

    StepperState next;
    next.u = systems_.u().solve(rhs_u);
    next.v = systems_.v().solve(rhs_v);
    next.t = t_next;
    next.n = state.n + 1;
    if (!all_finite(next.u) || !all_finite(next.v)) {
        std::ostringstream msg;
        msg << "non-finite state at step " << next.n << " (t=" << t_next << ")";
        throw Error(Errc::non_finite_state, msg.str());
    }
    return next;
}

double steady_criterion(const Stepper& stepper, const StepperState& prev, const StepperState& next)
{
    const double du = relative_change(stepper.norm_omega(next.u - prev.u), stepper.norm_omega(prev.u));
    const double dv = relative_change(stepper.norm_omega(next.v - prev.v), stepper.norm_omega(prev.v));
    return std::max(du, dv);
}

namespace {

void start_trace(RunTrace* trace, const Stepper& stepper, const StepperState& state)
{
    if (trace == nullptr) {
        return;
    }
    const double n0 = stepper.norm_omega(state.u);
    trace->energy_bound = n0 * n0 + stepper.mesh().omega().length();
    trace->rows.push_back({state.n, state.t, n0, stepper.norm_omega(state.v), 0.0});
}

void record(RunTrace* trace, const Stepper& stepper, const StepperState& state, double criterion)
{
    if (trace == nullptr) {
        return;
    }
    const double nu = stepper.norm_omega(state.u);
    if (nu * nu > trace->energy_bound) {
        ++trace->energy_bound_exceedances;
    }
    trace->rows.push_back({state.n, state.t, nu, stepper.norm_omega(state.v), criterion});
}

} // namespace

StepperState run_to_time(const Stepper& stepper, StepperState state, double T, const Sources& sources, RunTrace* trace)
{
    const double ratio = T / stepper.tau();
    const double steps = std::round(ratio);
    if (T < 0.0 || std::abs(steps - ratio) > 1e-9 * std::max(1.0, ratio)) {
        std::ostringstream msg;
        msg << "time step " << stepper.tau() << " does not divide final time " << T;
        throw Error(Errc::tau_not_dividing_time, msg.str());
    }
    const double t0 = state.t;
    const auto n_steps = static_cast<std::size_t>(steps);
    start_trace(trace, stepper, state);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        StepperState next = stepper.step_to(state, t0 + static_cast<double>(k) * stepper.tau(), sources);
        const double crit = trace ? steady_criterion(stepper, state, next) : 0.0;
        state = std::move(next);
        record(trace, stepper, state, crit);
    }
    if (n_steps > 0) {
        state.t = t0 + T;
    }
    return state;
}

void SteadyResult::require_converged() const
{
    if (converged) {
        return;
    }
    std::ostringstream msg;
    msg << "steady state not reached after " << history.size() << " steps; last criterion "
        << (history.empty() ? 0.0 : history.back());
    throw Error(Errc::max_steps_exceeded, msg.str());
}

SteadyResult run_to_steady(const Stepper& stepper, StepperState state, double tol, std::size_t max_steps, RunTrace* trace)
{
    if (!(tol > 0.0)) {
        throw Error(Errc::invalid_argument, "steady tolerance must be positive");
    }
    SteadyResult result;
    const double t0 = state.t;
    const std::size_t n0 = state.n;
    start_trace(trace, stepper, state);
    for (std::size_t k = 1; k <= max_steps; ++k) {
        StepperState next = stepper.step_to(state, t0 + static_cast<double>(k) * stepper.tau());
        const double crit = steady_criterion(stepper, state, next);
        result.history.push_back(crit);
        state = std::move(next);
        state.n = n0 + k;
        record(trace, stepper, state, crit);
        if (crit <= tol) {
            result.converged = true;
            break;
        }
    }
    result.state = std::move(state);
    return result;
}

} // namespace ngs
