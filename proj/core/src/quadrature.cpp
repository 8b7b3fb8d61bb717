#include "ngs/quadrature.hpp"

#include "ngs/error.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <array>

namespace ngs {

QuadratureRule QuadratureRule::gauss_legendre(std::size_t n)
{
    if (n == 0 || n > 64) {
        throw Error(Errc::invalid_argument, "Gauss-Legendre rule needs between 1 and 64 points");
    }
    const auto degree = static_cast<int>(n);
    // boost returns the nonnegative zeros only
    const std::vector<double> half = boost::math::legendre_p_zeros<double>(degree);

    QuadratureRule rule;
    rule.order = 2 * degree - 1;
    for (double x : half) {
        const double dp = boost::math::legendre_p_prime(degree, x);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points.push_back(x);
        rule.weights.push_back(w);
        if (x != 0.0) {
            rule.points.push_back(-x);
            rule.weights.push_back(w);
        }
    }
    std::vector<std::size_t> idx(rule.points.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rule.points[a] < rule.points[b]; });
    QuadratureRule sorted;
    sorted.order = rule.order;
    for (std::size_t i : idx) {
        sorted.points.push_back(rule.points[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    return sorted;
}

const QuadratureRule& QuadratureRule::cached(std::size_t n)
{
    static const std::array<QuadratureRule, 17> table = [] {
        std::array<QuadratureRule, 17> rules;
        for (std::size_t k = 1; k < rules.size(); ++k) {
            rules[k] = gauss_legendre(k);
        }
        return rules;
    }();
    if (n == 0 || n >= table.size()) {
        throw Error(Errc::invalid_argument, "cached Gauss-Legendre rules cover 1 to 16 points");
    }
    return table[n];
}

} // namespace ngs
