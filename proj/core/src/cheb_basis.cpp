#include "chebspec/cheb_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chebspec {

namespace {

void require_unit_interval(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::domain_error("abscissa outside [0, 1]");
    }
}

void require_degree(int j) {
    if (j < 0) {
        throw std::invalid_argument("polynomial degree must be >= 0");
    }
}

}  // namespace

NodeSet gauss_chebyshev_nodes(int s) {
    if (s < 1) {
        throw std::invalid_argument("node count must be >= 1");
    }
    NodeSet nodes;
    nodes.count = s;
    nodes.theta.resize(s);
    nodes.c.resize(s);
    for (int i = 1; i <= s; ++i) {
        const double theta = (2.0 * i - 1.0) * std::numbers::pi / (2.0 * s);
        nodes.theta[i - 1] = theta;
        nodes.c[i - 1] = 0.5 * (1.0 + std::cos(theta));
    }
    return nodes;
}

double eval_P(int j, double c) {
    require_degree(j);
    require_unit_interval(c);
    if (j == 0) return 1.0;
    const double x = 2.0 * c - 1.0;
    double t_prev = 1.0;  // T_0
    double t_cur = x;     // T_1
    for (int n = 1; n < j; ++n) {
        const double t_next = 2.0 * x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
    }
    return std::numbers::sqrt2 * t_cur;
}

double integral_P(int j, double c) {
    require_degree(j);
    require_unit_interval(c);
    if (c == 0.0) return 0.0;  // the recurrence leaves roundoff dust here
    if (j == 0) {
        return 0.5 * (eval_P(1, c) / std::numbers::sqrt2 + 1.0);
    }
    if (j == 1) {
        return 0.125 * (eval_P(2, c) - std::numbers::sqrt2);
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return 0.25 * (eval_P(j + 1, c) / (j + 1) - eval_P(j - 1, c) / (j - 1)
                   - sign * 2.0 * std::numbers::sqrt2 / (static_cast<double>(j) * j - 1.0));
}

double integral_P_at_one(int j) {
    require_degree(j);
    if (j == 0) return 1.0;
    if (j % 2 == 1) return 0.0;
    return std::numbers::sqrt2 / (1.0 - static_cast<double>(j) * j);
}

}  // namespace chebspec
