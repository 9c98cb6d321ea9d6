#pragma once

#include <vector>

namespace chebspec {

/// Gauss-Chebyshev nodes on (0, 1): theta_i = (2i-1)pi/(2s), c_i = (1 + cos theta_i)/2.
/// The abscissae are strictly decreasing and symmetric, c_i = 1 - c_{s-i+1};
/// every node carries the same quadrature weight 1/s. The angles are kept
/// because downstream cosine matrices are formed from theta, not from
/// arccos(2c - 1).
struct NodeSet {
    int count = 0;
    std::vector<double> theta;  // increasing, in (0, pi)
    std::vector<double> c;      // decreasing, in (0, 1)

    double weight() const { return 1.0 / count; }
};

/// Throws std::invalid_argument for s < 1.
NodeSet gauss_chebyshev_nodes(int s);

/// Shifted, scaled Chebyshev polynomial of the first kind on [0, 1]:
/// P_0 = 1 and P_j(c) = sqrt(2) T_j(2c - 1) for j >= 1, via the three-term
/// recurrence in x = 2c - 1 (exact at the interval endpoints, unlike the
/// cos(j arccos x) form).
double eval_P(int j, double c);

/// Antiderivative int_0^c P_j(x) dx.
double integral_P(int j, double c);

/// int_0^1 P_j(x) dx in closed form: 1 (j = 0), 0 (j odd), sqrt(2)/(1 - j^2) (j even >= 2).
double integral_P_at_one(int j);

}  // namespace chebspec
