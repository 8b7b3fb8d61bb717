#include "ngs/kernel.hpp"

#include "ngs/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ngs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double dispersal_normalization(const DispersalExpKernel& k)
{
    return k.a / (2.0 * -std::expm1(-k.a * k.R));
}

} // namespace

Kernel::Kernel(Variant v) : v_(v)
{
    std::visit(overloaded{
                   [](const GaussianKernel&) {},
                   [](const ExponentialKernel&) {},
                   [](const TruncatedGrowingExpKernel& k) {
                       if (!(k.c > 0.0) || !(k.R > 0.0) || !std::isfinite(k.R)) {
                           throw Error(Errc::invalid_argument, "truncated growing exponential needs c > 0 and finite R > 0");
                       }
                   },
                   [](const DispersalExpKernel& k) {
                       if (!(k.a > 0.0) || !(k.R > 0.0) || !std::isfinite(k.R)) {
                           throw Error(Errc::invalid_argument, "dispersal exponential needs a > 0 and finite R > 0");
                       }
                   },
               },
               v_);
}

std::string Kernel::name() const
{
    return std::visit(overloaded{
                          [](const GaussianKernel&) -> std::string { return "gaussian"; },
                          [](const ExponentialKernel&) -> std::string { return "exponential"; },
                          [](const TruncatedGrowingExpKernel& k) -> std::string {
                              std::ostringstream s;
                              s << "truncated_growing_exp(c=" << k.c << ",R=" << k.R << ")";
                              return s.str();
                          },
                          [](const DispersalExpKernel& k) -> std::string {
                              std::ostringstream s;
                              s << "dispersal_exp(a=" << k.a << ",R=" << k.R << ")";
                              return s.str();
                          },
                      },
                      v_);
}

double Kernel::operator()(double z) const noexcept
{
    const double r = std::abs(z);
    return std::visit(overloaded{
                          [r](const GaussianKernel&) { return std::exp(-r * r); },
                          [r](const ExponentialKernel&) { return std::exp(-r); },
                          [r](const TruncatedGrowingExpKernel& k) { return r <= k.R ? k.c * std::exp(r) : 0.0; },
                          [r](const DispersalExpKernel& k) {
                              return r <= k.R ? dispersal_normalization(k) * std::exp(-k.a * r) : 0.0;
                          },
                      },
                      v_);
}

double Kernel::horizon() const noexcept
{
    return std::visit(overloaded{
                          [](const GaussianKernel&) { return infinite_horizon; },
                          [](const ExponentialKernel&) { return infinite_horizon; },
                          [](const TruncatedGrowingExpKernel& k) { return k.R; },
                          [](const DispersalExpKernel& k) { return k.R; },
                      },
                      v_);
}

bool Kernel::has_finite_horizon() const noexcept { return std::isfinite(horizon()); }

bool Kernel::has_kink_at_origin() const noexcept { return !std::holds_alternative<GaussianKernel>(v_); }

double Kernel::length_scale() const noexcept
{
    if (const auto* k = std::get_if<DispersalExpKernel>(&v_)) {
        return std::min(1.0 / k->a, k->R);
    }
    if (const auto* k = std::get_if<TruncatedGrowingExpKernel>(&v_)) {
        return std::min(1.0, k->R);
    }
    return 1.0;
}

double Kernel::total_mass() const noexcept
{
    return std::visit(overloaded{
                          [](const GaussianKernel&) { return std::sqrt(std::numbers::pi); },
                          [](const ExponentialKernel&) { return 2.0; },
                          [](const TruncatedGrowingExpKernel& k) { return 2.0 * k.c * std::expm1(k.R); },
                          [](const DispersalExpKernel&) { return 1.0; },
                      },
                      v_);
}

double Kernel::antiderivative(double z) const noexcept
{
    if (std::isinf(z)) {
        return std::copysign(0.5 * total_mass(), z);
    }
    const double s = z < 0.0 ? -1.0 : 1.0;
    const double r = std::abs(z);
    return s * std::visit(overloaded{
                              [r](const GaussianKernel&) { return 0.5 * std::sqrt(std::numbers::pi) * std::erf(r); },
                              [r](const ExponentialKernel&) { return -std::expm1(-r); },
                              [r](const TruncatedGrowingExpKernel& k) { return k.c * std::expm1(std::min(r, k.R)); },
                              [r](const DispersalExpKernel& k) {
                                  return dispersal_normalization(k) / k.a * -std::expm1(-k.a * std::min(r, k.R));
                              },
                          },
                          v_);
}

double Kernel::partial_mass(double x, Interval J) const noexcept
{
    // z = x - y runs over [x - J.hi, x - J.lo]
    return antiderivative(x - J.lo) - antiderivative(x - J.hi);
}

double Kernel::second_moment() const noexcept
{
    return std::visit(overloaded{
                          [](const GaussianKernel&) { return 0.5 * std::sqrt(std::numbers::pi); },
                          [](const ExponentialKernel&) { return 4.0; },
                          [](const TruncatedGrowingExpKernel& k) {
                              // 2c * int_0^R z^2 e^z dz
                              return 2.0 * k.c * (std::exp(k.R) * (k.R * k.R - 2.0 * k.R + 2.0) - 2.0);
                          },
                          [](const DispersalExpKernel& k) {
                              const double aR = k.a * k.R;
                              const double A = dispersal_normalization(k);
                              return 2.0 * A / (k.a * k.a * k.a) * (2.0 - std::exp(-aR) * (2.0 + 2.0 * aR + aR * aR));
                          },
                      },
                      v_);
}

double Kernel::normalization() const
{
    const auto* k = std::get_if<DispersalExpKernel>(&v_);
    if (k == nullptr) {
        throw Error(Errc::unsupported_variant, "normalization constant is defined for the dispersal kernel only");
    }
    return dispersal_normalization(*k);
}

double Kernel::laplacian_scale(ScaleFormula formula) const
{
    const auto* k = std::get_if<DispersalExpKernel>(&v_);
    if (k == nullptr) {
        throw Error(Errc::unsupported_variant, "laplacian scale is defined for the dispersal kernel only");
    }
    if (formula == ScaleFormula::moment) {
        return 2.0 / second_moment();
    }
    const double aR = k->a * k->R;
    const double A = dispersal_normalization(*k);
    return k->a * k->a * k->a / (A * (2.0 - std::exp(-aR) * (1.0 + aR * (2.0 + aR))));
}

std::vector<std::string> Kernel::validate(KernelUsage usage) const
{
    std::vector<std::string> issues;
    const double R = horizon();
    const double reach = std::isfinite(R) ? R : 20.0;
    for (int i = 0; i <= 200; ++i) {
        const double z = reach * static_cast<double>(i) / 200.0;
        const double g = (*this)(z);
        if (!(g > 0.0) || !std::isfinite(g)) {
            issues.push_back("not positive on its support at z=" + std::to_string(z));
            break;
        }
        if ((*this)(-z) != g) {
            issues.push_back("not symmetric at z=" + std::to_string(z));
            break;
        }
    }
    if (!std::isfinite(total_mass())) {
        issues.emplace_back("infinite mass");
    }
    if (!std::isfinite(second_moment())) {
        issues.emplace_back("infinite second moment");
    }
    if (usage == KernelUsage::Neumann && !std::isfinite(R)) {
        issues.emplace_back("infinite horizon");
    }
    return issues;
}

} // namespace ngs
