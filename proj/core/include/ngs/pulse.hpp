#pragma once

#include "ngs/kernel.hpp"
#include "ngs/mesh.hpp"
#include "ngs/stepper.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ngs {

// Steady pulse experiment with the normalized dispersal kernel under homogeneous Neumann constraints.
struct PulseSetup {
    Interval omega{-40.0, 40.0};
    double collar = 5.0;
    double horizon = 5.0;
    double h = 0.05;
    double tau = 0.01;
    double tol = 1e-5;
    std::size_t max_steps = 1'000'000;
    PhysicalParams params{.d_u = 1.0, .d_v = 0.01, .f = 0.01, .kappa = 0.0977, .scale_c = 1.0};
    ScaleFormula formula = ScaleFormula::paper;
    bool scaled = true; // false: c = 1 for every a
};

double pulse_u0(double x);
double pulse_v0(double x);

struct PulseRun {
    std::optional<double> a; // empty for the local (Laplacian) reference
    double scale_c = 1.0;
    Mesh1D mesh;
    SteadyResult result;
    RunTrace trace;
};

// a empty: local model on a collar-free mesh of omega with the P1 Laplacian.
PulseRun run_pulse(const PulseSetup& setup, std::optional<double> a);

// Node indices inside window whose value strictly exceeds both neighbours.
std::vector<std::size_t> local_maxima(std::span<const double> x, std::span<const double> values, Interval window);
std::vector<std::size_t> local_minima(std::span<const double> x, std::span<const double> values, Interval window);

enum class PulseShape { single, batman, other };

const char* to_string(PulseShape shape) noexcept;

// single: exactly one maximum in [-5, 5], at the node nearest 0.
// batman: node nearest 0 is a local minimum and exactly two maxima lie in [-5, 5].
PulseShape classify_pulse(std::span<const double> x, std::span<const double> v);

} // namespace ngs
