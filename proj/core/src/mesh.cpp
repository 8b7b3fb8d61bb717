#include "ngs/mesh.hpp"

#include "ngs/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ngs {

namespace {

// Number of cells of width h in a segment of given length; throws if h does not tile it.
std::size_t cell_count(double length, double h, const char* what)
{
    if (length == 0.0) {
        return 0;
    }
    const double ratio = length / h;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(n * h - length) > 1e-12 * length) {
        std::ostringstream msg;
        msg << "spacing h=" << h << " does not tile the " << what << " of length " << length;
        throw Error(Errc::non_divisible_spacing, msg.str());
    }
    return static_cast<std::size_t>(n);
}

} // namespace

void check_spacing(Interval omega, double collar_width, double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(Errc::non_divisible_spacing, "mesh spacing must be positive and finite");
    }
    cell_count(omega.length(), h, "domain");
    cell_count(collar_width, h, "collar");
}

Mesh1D Mesh1D::uniform(Interval omega, double collar_width, double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(Errc::invalid_argument, "mesh spacing must be positive and finite");
    }
    if (!(omega.hi > omega.lo)) {
        throw Error(Errc::invalid_argument, "domain must have positive length");
    }
    if (!(collar_width >= 0.0) || !std::isfinite(collar_width)) {
        throw Error(Errc::invalid_argument, "collar width must be nonnegative and finite");
    }
    const std::size_t n_omega = cell_count(omega.length(), h, "domain");
    const std::size_t n_collar = cell_count(collar_width, h, "collar");

    Mesh1D mesh;
    mesh.omega_ = omega;
    mesh.collar_width_ = collar_width;

    const double h_omega = omega.length() / static_cast<double>(n_omega);
    const double h_collar = n_collar > 0 ? collar_width / static_cast<double>(n_collar) : 0.0;
    const std::size_t n_nodes = n_omega + 2 * n_collar + 1;
    mesh.nodes_.reserve(n_nodes);
    for (std::size_t i = n_collar; i > 0; --i) {
        mesh.nodes_.push_back(omega.lo - static_cast<double>(i) * h_collar);
    }
    for (std::size_t i = 0; i < n_omega; ++i) {
        mesh.nodes_.push_back(omega.lo + static_cast<double>(i) * h_omega);
    }
    mesh.nodes_.push_back(omega.hi);
    for (std::size_t i = 1; i <= n_collar; ++i) {
        mesh.nodes_.push_back(omega.hi + static_cast<double>(i) * h_collar);
    }

    mesh.elements_.reserve(n_nodes - 1);
    double h_max = 0.0;
    for (std::size_t e = 0; e + 1 < n_nodes; ++e) {
        mesh.elements_.push_back({e, e + 1});
        h_max = std::max(h_max, mesh.nodes_[e + 1] - mesh.nodes_[e]);
    }
    mesh.h_ = h_max;

    mesh.region_.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        mesh.region_[i] = (i >= n_collar && i <= n_collar + n_omega) ? Region::Interior : Region::Collar;
    }
    return mesh;
}

bool Mesh1D::element_in_omega(std::size_t e) const
{
    return region_[elements_[e][0]] == Region::Interior && region_[elements_[e][1]] == Region::Interior;
}

std::size_t Mesh1D::interior_node_count() const
{
    return static_cast<std::size_t>(std::count(region_.begin(), region_.end(), Region::Interior));
}

std::pair<std::size_t, std::size_t> Mesh1D::elements_within(double x, double radius) const
{
    if (std::isinf(radius)) {
        return {0, elements_.size()};
    }
    const double lo = x - radius;
    const double hi = x + radius;
    // element e = [nodes[e], nodes[e+1]] overlaps iff nodes[e+1] > lo and nodes[e] < hi
    const auto first_right = std::upper_bound(nodes_.begin() + 1, nodes_.end(), lo);
    const auto past_left = std::lower_bound(nodes_.begin(), nodes_.end() - 1, hi);
    const auto first = static_cast<std::size_t>(first_right - (nodes_.begin() + 1));
    const auto last = static_cast<std::size_t>(past_left - nodes_.begin());
    if (last <= first) {
        return {first, first};
    }
    return {first, last};
}

std::size_t Mesh1D::nearest_node(double x) const
{
    std::size_t best = 0;
    double best_dist = std::abs(nodes_[0] - x);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const double d = std::abs(nodes_[i] - x);
        if (d < best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return best;
}

} // namespace ngs
