#pragma once

#include <cstddef>
#include <vector>

namespace ngs {

// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    int order = 0; // polynomial exactness degree

    static QuadratureRule gauss_legendre(std::size_t n);
    // Shared immutable rule for n <= 16; built once on first use.
    static const QuadratureRule& cached(std::size_t n);

    std::size_t size() const noexcept { return points.size(); }

    // Physical point and weight on [lo, hi].
    double point(std::size_t q, double lo, double hi) const noexcept
    {
        return 0.5 * (lo + hi) + 0.5 * (hi - lo) * points[q];
    }
    double weight(std::size_t q, double lo, double hi) const noexcept { return 0.5 * (hi - lo) * weights[q]; }

    template <class F>
    double integrate(double lo, double hi, F&& f) const
    {
        double sum = 0.0;
        for (std::size_t q = 0; q < points.size(); ++q) {
            sum += weight(q, lo, hi) * f(point(q, lo, hi));
        }
        return sum;
    }
};

} // namespace ngs
