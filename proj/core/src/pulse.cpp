#include "ngs/pulse.hpp"

#include "ngs/assembly.hpp"

#include <algorithm>
#include <cmath>

namespace ngs {

double pulse_u0(double x) { return 1.0 - 0.3 * std::exp(-10.0 * x * x); }
double pulse_v0(double x) { return std::exp(-10.0 * x * x); }

PulseRun run_pulse(const PulseSetup& setup, std::optional<double> a)
{
    const bool local = !a.has_value();
    Mesh1D mesh = Mesh1D::uniform(setup.omega, local ? 0.0 : setup.collar, setup.h);
    PhysicalParams params = setup.params;
    AssembledOperators ops;
    if (local) {
        params.scale_c = 1.0;
        ops = assemble_local(mesh);
    } else {
        const Kernel kernel = Kernel::dispersal_exp(*a, setup.horizon);
        params.scale_c = setup.scaled ? kernel.laplacian_scale(setup.formula) : 1.0;
        ops = assemble_nonlocal(mesh, kernel, BcMode::Neumann);
    }
    const Stepper stepper(mesh, ops, params, setup.tau, local ? DiffusionModel::Local : DiffusionModel::Nonlocal);
    ops = {}; // the stepper keeps its own factorizations

    PulseRun run{a, params.scale_c, std::move(mesh), {}, {}};
    run.result = run_to_steady(stepper, stepper.interpolate(pulse_u0, pulse_v0), setup.tol, setup.max_steps, &run.trace);
    return run;
}

namespace {

template <class Cmp>
std::vector<std::size_t> extrema(std::span<const double> x, std::span<const double> values, Interval window, Cmp cmp)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (!window.contains(x[i])) {
            continue;
        }
        if (cmp(values[i], values[i - 1]) && cmp(values[i], values[i + 1])) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace

std::vector<std::size_t> local_maxima(std::span<const double> x, std::span<const double> values, Interval window)
{
    return extrema(x, values, window, [](double a, double b) { return a > b; });
}

std::vector<std::size_t> local_minima(std::span<const double> x, std::span<const double> values, Interval window)
{
    return extrema(x, values, window, [](double a, double b) { return a < b; });
}

const char* to_string(PulseShape shape) noexcept
{
    switch (shape) {
    case PulseShape::single: return "single";
    case PulseShape::batman: return "batman";
    case PulseShape::other: return "other";
    }
    return "other";
}

PulseShape classify_pulse(std::span<const double> x, std::span<const double> v)
{
    const Interval window{-5.0, 5.0};
    std::size_t center = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs(x[i]) < std::abs(x[center])) {
            center = i;
        }
    }
    const auto maxima = local_maxima(x, v, window);
    if (maxima.size() == 1 && maxima.front() == center) {
        return PulseShape::single;
    }
    const auto minima = local_minima(x, v, window);
    const bool center_min = std::find(minima.begin(), minima.end(), center) != minima.end();
    if (center_min && maxima.size() == 2) {
        return PulseShape::batman;
    }
    return PulseShape::other;
}

} // namespace ngs
