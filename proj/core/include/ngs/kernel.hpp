#pragma once

#include "ngs/mesh.hpp"

#include <string>
#include <variant>
#include <vector>

namespace ngs {

// exp(-z^2), infinite horizon
struct GaussianKernel {};

// exp(-|z|), infinite horizon
struct ExponentialKernel {};

// c * exp(|z|) on |z| <= R
struct TruncatedGrowingExpKernel {
    double c = 0.5;
    double R = 2.0;
};

// A * exp(-a|z|) on |z| <= R, A = a / (2 (1 - exp(-a R))) so the kernel has unit mass.
struct DispersalExpKernel {
    double a = 3.0;
    double R = 5.0;
};

enum class KernelUsage { Dirichlet, Neumann };

// Which constant C makes C*K approach the second derivative as a -> infinity.
enum class ScaleFormula {
    paper,  // a^3 / (A (2 - e^{-aR} (1 + aR (2 + aR))))
    moment, // 2 / second_moment
};

// Symmetric radial convolution kernel gamma(|x - y|). Value type.
class Kernel {
public:
    using Variant = std::variant<GaussianKernel, ExponentialKernel, TruncatedGrowingExpKernel, DispersalExpKernel>;

    Kernel(Variant v); // NOLINT(google-explicit-constructor)

    static Kernel gaussian() { return Kernel(GaussianKernel{}); }
    static Kernel exponential() { return Kernel(ExponentialKernel{}); }
    static Kernel truncated_growing_exp(double c, double R) { return Kernel(TruncatedGrowingExpKernel{c, R}); }
    static Kernel dispersal_exp(double a, double R) { return Kernel(DispersalExpKernel{a, R}); }

    const Variant& variant() const noexcept { return v_; }
    std::string name() const;

    double operator()(double z) const noexcept;
    double horizon() const noexcept;
    bool has_finite_horizon() const noexcept;
    // True when gamma has a derivative jump at z = 0.
    bool has_kink_at_origin() const noexcept;
    // Length over which gamma varies appreciably; used to size quadrature panels.
    double length_scale() const noexcept;

    // Integral of gamma over R.
    double total_mass() const noexcept;
    // Integral of gamma(z) over [0, z] (odd in z, saturates outside the horizon).
    double antiderivative(double z) const noexcept;
    // Integral of gamma(x - y) dy over J; J may have infinite ends.
    double partial_mass(double x, Interval J) const noexcept;
    double second_moment() const noexcept;

    // DispersalExp only; throws Error(unsupported_variant) otherwise.
    double normalization() const;
    double laplacian_scale(ScaleFormula formula = ScaleFormula::paper) const;

    // Empty when the kernel satisfies the hypotheses required for the given usage.
    std::vector<std::string> validate(KernelUsage usage) const;

private:
    Variant v_;
};

} // namespace ngs
