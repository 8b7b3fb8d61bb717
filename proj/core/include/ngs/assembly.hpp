#pragma once

#include "ngs/kernel.hpp"
#include "ngs/mesh.hpp"
#include "ngs/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>

namespace ngs {

enum class BcMode { Dirichlet, Neumann };

enum class MassRegion { Omega, Extended };

// P1 Galerkin matrices over all mesh nodes. Immutable once assembled.
struct AssembledOperators {
    BcMode bc = BcMode::Dirichlet;
    Eigen::MatrixXd mass_omega;  // int_Omega phi_i phi_j
    Eigen::MatrixXd mass_full;   // int over the whole mesh
    Eigen::MatrixXd coupling;    // int int gamma(x - y) phi_j(y) phi_i(x)
    Eigen::MatrixXd gamma_mass;  // int Gamma(x) phi_i phi_j
    Eigen::MatrixXd nonlocal;    // gamma_mass - coupling, the weak form of -K
    Eigen::MatrixXd laplacian;   // int_Omega phi_i' phi_j'
};

// Throws when the mesh/kernel pair is inconsistent with the constraint type:
// Dirichlet needs a collar-free mesh, Neumann a finite horizon no wider than the collar.
void check_configuration(const Mesh1D& mesh, const Kernel& kernel, BcMode bc);

Eigen::MatrixXd assemble_mass(const Mesh1D& mesh, MassRegion region);

// Outer Gauss loop over elements; for every outer point the inner integral runs over
// [x - R, x + R] clipped to the mesh, split per element and at y = x for kinked kernels.
Eigen::MatrixXd assemble_kernel_coupling(const Mesh1D& mesh, const Kernel& kernel, BcMode bc,
                                         const QuadratureRule& rule);

// Dirichlet: total mass times the mass matrix. Neumann: Gamma(x) = int over the mesh of gamma(x - y),
// evaluated with the same clipped inner rule as the coupling.
Eigen::MatrixXd assemble_gamma_mass(const Mesh1D& mesh, const Kernel& kernel, BcMode bc, const QuadratureRule& rule);

AssembledOperators assemble_nonlocal(const Mesh1D& mesh, const Kernel& kernel, BcMode bc,
                                     const QuadratureRule& rule = QuadratureRule::gauss_legendre(4));

// Mass and Laplacian only, for local reference runs.
AssembledOperators assemble_local(const Mesh1D& mesh);

// Standard P1 stiffness over Omega with natural boundary conditions.
Eigen::MatrixXd assemble_laplacian(const Mesh1D& mesh);

struct StrongFormOptions {
    double panel_fraction = 0.01; // panel width as a fraction of the integration domain
    std::size_t points = 8;
};

// Ku(x) = int_domain gamma(x - y) u(y) dy - Gamma(x) u(x). For Dirichlet the domain is Omega,
// u is extended by zero and Gamma is the total mass; for Neumann Gamma is the mass over the domain.
double eval_K_strong(const std::function<double(double)>& u, double x, const Kernel& kernel, BcMode bc,
                     Interval domain, const StrongFormOptions& opts = {});

// Plain-text dump: "rows cols" header, then one row per line.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);

} // namespace ngs
