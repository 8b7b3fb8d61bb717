#include "ngs/assembly.hpp"

#include "ngs/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

namespace ngs {

namespace {

// P1 shape functions of the element [lo, hi] at x.
std::array<double, 2> shape(double lo, double hi, double x)
{
    const double t = (x - lo) / (hi - lo);
    return {1.0 - t, t};
}

} // namespace

void check_configuration(const Mesh1D& mesh, const Kernel& kernel, BcMode bc)
{
    if (bc == BcMode::Dirichlet) {
        if (mesh.collar_width() != 0.0) {
            throw Error(Errc::invalid_argument, "Dirichlet problems are posed on a collar-free mesh");
        }
        return;
    }
    if (!kernel.has_finite_horizon()) {
        throw Error(Errc::infinite_horizon_neumann, "Neumann constraints need a kernel with finite horizon");
    }
    if (kernel.horizon() > mesh.collar_width() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "kernel horizon " << kernel.horizon() << " exceeds collar width " << mesh.collar_width();
        throw Error(Errc::horizon_exceeds_collar, msg.str());
    }
}

Eigen::MatrixXd assemble_mass(const Mesh1D& mesh, MassRegion region)
{
    const auto n = static_cast<Eigen::Index>(mesh.node_count());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        if (region == MassRegion::Omega && !mesh.element_in_omega(e)) {
            continue;
        }
        const double len = mesh.element_length(e);
        const auto [i, j] = mesh.element(e);
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(j);
        m(a, a) += len / 3.0;
        m(b, b) += len / 3.0;
        m(a, b) += len / 6.0;
        m(b, a) += len / 6.0;
    }
    return m;
}

namespace {

// For the outer point x, calls visit(f, inner) for every element f within the horizon, where
// inner[b] = int over f clipped to [x - R, x + R] of gamma(x - y) phi_b(y) dy, split at y = x
// for kinked kernels. Both G and the Neumann Gamma go through here, so G 1 = D_gamma 1.
template <class Visit>
void inner_integrals(const Mesh1D& mesh, const Kernel& kernel, const QuadratureRule& rule, double x, Visit&& visit)
{
    const double radius = kernel.horizon();
    const bool split = kernel.has_kink_at_origin();
    const auto [first, last] = mesh.elements_within(x, radius);
    for (std::size_t f = first; f < last; ++f) {
        const double flo = mesh.element_lo(f);
        const double fhi = mesh.element_hi(f);
        const double lo = std::max(flo, x - radius);
        const double hi = std::min(fhi, x + radius);
        std::array<double, 2> inner{0.0, 0.0};
        auto integrate_piece = [&](double plo, double phi) {
            for (std::size_t p = 0; p < rule.size(); ++p) {
                const double y = rule.point(p, plo, phi);
                const double w = rule.weight(p, plo, phi) * kernel(x - y);
                const auto phi_y = shape(flo, fhi, y);
                inner[0] += w * phi_y[0];
                inner[1] += w * phi_y[1];
            }
        };
        if (split && lo < x && x < hi) {
            integrate_piece(lo, x);
            integrate_piece(x, hi);
        } else {
            integrate_piece(lo, hi);
        }
        visit(f, inner);
    }
}

} // namespace

Eigen::MatrixXd assemble_kernel_coupling(const Mesh1D& mesh, const Kernel& kernel, BcMode bc,
                                         const QuadratureRule& rule)
{
    check_configuration(mesh, kernel, bc);
    const auto n = static_cast<Eigen::Index>(mesh.node_count());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);

    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const double xlo = mesh.element_lo(e);
        const double xhi = mesh.element_hi(e);
        const auto& outer_nodes = mesh.element(e);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double x = rule.point(q, xlo, xhi);
            const double wx = rule.weight(q, xlo, xhi);
            const auto phi_x = shape(xlo, xhi, x);
            inner_integrals(mesh, kernel, rule, x, [&](std::size_t f, const std::array<double, 2>& inner) {
                const auto& inner_nodes = mesh.element(f);
                for (int a = 0; a < 2; ++a) {
                    const auto row = static_cast<Eigen::Index>(outer_nodes[a]);
                    for (int b = 0; b < 2; ++b) {
                        g(row, static_cast<Eigen::Index>(inner_nodes[b])) += wx * phi_x[a] * inner[b];
                    }
                }
            });
        }
    }
    return g;
}

Eigen::MatrixXd assemble_gamma_mass(const Mesh1D& mesh, const Kernel& kernel, BcMode bc, const QuadratureRule& rule)
{
    check_configuration(mesh, kernel, bc);
    if (bc == BcMode::Dirichlet) {
        return kernel.total_mass() * assemble_mass(mesh, MassRegion::Extended);
    }
    const auto n = static_cast<Eigen::Index>(mesh.node_count());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const double lo = mesh.element_lo(e);
        const double hi = mesh.element_hi(e);
        const auto& nodes = mesh.element(e);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double x = rule.point(q, lo, hi);
            // Gamma(x) with the coupling's inner rule rather than in closed form (they differ
            // by the inner quadrature error) so that constants stay in the kernel of A_nl.
            double gamma = 0.0;
            inner_integrals(mesh, kernel, rule, x,
                            [&](std::size_t, const std::array<double, 2>& inner) { gamma += inner[0] + inner[1]; });
            const double w = rule.weight(q, lo, hi) * gamma;
            const auto phi = shape(lo, hi, x);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    d(static_cast<Eigen::Index>(nodes[a]), static_cast<Eigen::Index>(nodes[b])) += w * phi[a] * phi[b];
                }
            }
        }
    }
    return d;
}

AssembledOperators assemble_nonlocal(const Mesh1D& mesh, const Kernel& kernel, BcMode bc, const QuadratureRule& rule)
{
    AssembledOperators ops;
    ops.bc = bc;
    ops.mass_omega = assemble_mass(mesh, MassRegion::Omega);
    ops.mass_full = assemble_mass(mesh, MassRegion::Extended);
    ops.coupling = assemble_kernel_coupling(mesh, kernel, bc, rule);
    ops.gamma_mass = assemble_gamma_mass(mesh, kernel, bc, rule);
    ops.nonlocal = ops.gamma_mass - ops.coupling;
    ops.laplacian = assemble_laplacian(mesh);
    return ops;
}

AssembledOperators assemble_local(const Mesh1D& mesh)
{
    AssembledOperators ops;
    ops.bc = mesh.collar_width() == 0.0 ? BcMode::Dirichlet : BcMode::Neumann;
    ops.mass_omega = assemble_mass(mesh, MassRegion::Omega);
    ops.mass_full = assemble_mass(mesh, MassRegion::Extended);
    ops.laplacian = assemble_laplacian(mesh);
    return ops;
}

Eigen::MatrixXd assemble_laplacian(const Mesh1D& mesh)
{
    const auto n = static_cast<Eigen::Index>(mesh.node_count());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        if (!mesh.element_in_omega(e)) {
            continue;
        }
        const double inv = 1.0 / mesh.element_length(e);
        const auto a = static_cast<Eigen::Index>(mesh.element(e)[0]);
        const auto b = static_cast<Eigen::Index>(mesh.element(e)[1]);
        k(a, a) += inv;
        k(b, b) += inv;
        k(a, b) -= inv;
        k(b, a) -= inv;
    }
    return k;
}

double eval_K_strong(const std::function<double(double)>& u, double x, const Kernel& kernel, BcMode bc,
                     Interval domain, const StrongFormOptions& opts)
{
    const double radius = kernel.horizon();
    const double lo = std::max(domain.lo, x - radius);
    const double hi = std::min(domain.hi, x + radius);
    const double ux = u(x);
    const double panel = std::min(opts.panel_fraction * domain.length(), 0.25 * kernel.length_scale());
    const QuadratureRule& rule = QuadratureRule::cached(opts.points);

    // int gamma(x - y) (u(y) - u(x)) dy avoids cancellation against Gamma(x) u(x)
    auto integrate_segment = [&](double a, double b) {
        if (!(b > a)) {
            return 0.0;
        }
        const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel));
        const double width = (b - a) / static_cast<double>(panels);
        double sum = 0.0;
        for (std::size_t k = 0; k < panels; ++k) {
            const double pa = a + static_cast<double>(k) * width;
            const double pb = (k + 1 == panels) ? b : pa + width;
            sum += rule.integrate(pa, pb, [&](double y) { return kernel(x - y) * (u(y) - ux); });
        }
        return sum;
    };
    double value = integrate_segment(lo, std::min(std::max(x, lo), hi)) + integrate_segment(std::max(std::min(x, hi), lo), hi);

    // Mass of gamma(x - .) outside the integration window: zero-extension exterior (Dirichlet).
    const double gamma_total = bc == BcMode::Dirichlet ? kernel.total_mass() : kernel.partial_mass(x, domain);
    value -= ux * (gamma_total - kernel.partial_mass(x, {lo, hi}));
    return value;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m)
{
    const auto old = os.precision(17);
    os << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << (j ? " " : "") << m(i, j);
        }
        os << '\n';
    }
    os.precision(old);
}

} // namespace ngs
