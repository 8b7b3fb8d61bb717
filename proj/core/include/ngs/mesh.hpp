#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace ngs {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

inline constexpr double infinite_horizon = std::numeric_limits<double>::infinity();

enum class Region : std::uint8_t { Interior, Collar };

// Throws Error(non_divisible_spacing) unless h tiles |omega| and collar_width.
void check_spacing(Interval omega, double collar_width, double h);

// Conforming 1D P1 mesh over the extended domain [lo - collar, hi + collar].
// Immutable after construction.
class Mesh1D {
public:
    // Uniform mesh with spacing h. Throws Error(non_divisible_spacing) unless h
    // tiles both |omega| and collar_width, so nodes land on the region boundaries.
    static Mesh1D uniform(Interval omega, double collar_width, double h);

    std::span<const double> nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const { return nodes_[i]; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t element_count() const noexcept { return elements_.size(); }
    const std::array<std::size_t, 2>& element(std::size_t e) const { return elements_[e]; }
    double element_lo(std::size_t e) const { return nodes_[elements_[e][0]]; }
    double element_hi(std::size_t e) const { return nodes_[elements_[e][1]]; }
    double element_length(std::size_t e) const { return element_hi(e) - element_lo(e); }

    Interval omega() const noexcept { return omega_; }
    Interval extended() const noexcept { return {nodes_.front(), nodes_.back()}; }
    double collar_width() const noexcept { return collar_width_; }
    double h() const noexcept { return h_; }

    Region region(std::size_t i) const { return region_[i]; }
    bool element_in_omega(std::size_t e) const;
    std::size_t interior_node_count() const;

    // Half-open index range [first, last) of the elements whose intersection with
    // [x - radius, x + radius] has positive length. radius may be infinite.
    std::pair<std::size_t, std::size_t> elements_within(double x, double radius) const;

    // Index of the node closest to x (leftmost on ties).
    std::size_t nearest_node(double x) const;

private:
    Mesh1D() = default;

    std::vector<double> nodes_;
    std::vector<std::array<std::size_t, 2>> elements_;
    std::vector<Region> region_;
    Interval omega_;
    double collar_width_ = 0.0;
    double h_ = 0.0;
};

} // namespace ngs
