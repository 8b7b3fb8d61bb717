#pragma once

#include "ngs/kernel.hpp"
#include "ngs/mesh.hpp"
#include "ngs/mms.hpp"
#include "ngs/stepper.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace ngs {

// Mixed trigonometric basis on Omega = [c - L, c + L]: the constant plus
// cos((2n-1) pi s / 2L) and sin((2n-1) pi s / 2L), s = x - c, each scaled to unit L2 norm.
// Mode 0 is the constant; mode 2n-1 the n-th cosine, mode 2n the n-th sine.
class SpectralBasis {
public:
    // modes must be odd.
    SpectralBasis(Interval omega, std::size_t modes);

    std::size_t size() const noexcept { return modes_; }
    Interval omega() const noexcept { return omega_; }
    double half_width() const noexcept { return 0.5 * omega_.length(); }

    double eval(std::size_t k, double x) const;
    double reconstruct(const Eigen::VectorXd& coeffs, double x) const;

    // Exact L2(Omega) inner products. Sines are orthogonal to everything else and the
    // cosines to each other; the constant is not orthogonal to the cosines.
    Eigen::MatrixXd gram() const;

private:
    Interval omega_;
    std::size_t modes_;
};

// Galerkin matrices and the composite Gauss rule used for projections.
struct SpectralOperators {
    Eigen::MatrixXd gram;     // mass matrix
    Eigen::MatrixXd bilinear; // B_kj = Gamma (phi_j, phi_k) - int int gamma phi_j(y) phi_k(x)
    Eigen::VectorXd points;
    Eigen::VectorXd weights;
    Eigen::MatrixXd values;   // values(p, k) = phi_k(points[p])

    // (g, phi_k) for all k, g sampled at the quadrature points.
    Eigen::VectorXd project_samples(const Eigen::VectorXd& samples) const;
    // Galerkin L2 projection of g: gram^{-1} (g, phi_k).
    Eigen::VectorXd project(const std::function<double(double)>& g) const;
};

// panels = 0 picks max(50, 5 * modes) panels of 8-point Gauss over Omega.
SpectralOperators assemble_spectral(const SpectralBasis& basis, const Kernel& kernel, std::size_t panels = 0);

// Gray-Scott data under nonlocal Dirichlet constraints.
struct DirichletProblem {
    Interval omega;
    Kernel kernel = Kernel::gaussian();
    PhysicalParams params;
    double T = 1.0;
    std::function<double(double)> u0;
    std::function<double(double)> v0;
    Sources sources;
};

DirichletProblem dirichlet_problem(const MmsCase& c);

struct SpectralTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> u; // coefficients, initial projection first
    std::vector<Eigen::VectorXd> v;
};

// Same semi-implicit first-order splitting as the finite element stepper.
SpectralTrajectory solve_spectral(const DirichletProblem& problem, const SpectralBasis& basis, double tau);

struct FemSolution {
    Mesh1D mesh;
    StepperState state;
};

FemSolution solve_fem(const DirichletProblem& problem, double h, double tau);

struct OracleComparison {
    double h = 0.0;
    std::size_t modes = 0;
    double tau = 0.0;
    double diff_u = 0.0; // L2(Omega) distance at T
    double diff_v = 0.0;
};

OracleComparison compare_fem_spectral(const DirichletProblem& problem, double h, std::size_t modes, double tau);

// L2(Omega) distance between a P1 field and a spectral field, 8-point Gauss per element.
double l2_distance(const Mesh1D& mesh, const Eigen::VectorXd& fem, const SpectralBasis& basis,
                   const Eigen::VectorXd& coeffs);

} // namespace ngs
