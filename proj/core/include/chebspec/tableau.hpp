#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "chebspec/cheb_basis.hpp"

namespace chebspec {

/// Sparse spectral factor X_s: integration of a Chebyshev coefficient vector.
/// Nearly tridiagonal with a dense first row; beta_j = 1/(4j) and
/// alpha_j = (-1)^j 8 sqrt(2) beta_j beta_{j-2}. The extended variant used by
/// the k > s construction appends the row (0, ..., 0, beta_s) and has shape
/// (s+1) x s.
struct SpectralFactor {
    int s = 0;
    bool extended = false;
    std::vector<double> beta;   // beta[j-1] = 1/(4j), j = 1..s
    std::vector<double> alpha;  // alpha[j-3] for j = 3..s
    Eigen::SparseMatrix<double> entries;

    int rows() const { return extended ? s + 1 : s; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries); }
};

/// Throws std::invalid_argument for s < 1.
SpectralFactor build_spectral_factor(int s, bool extended = false);

/// k x cols matrix with entry (i, j) = [sqrt(2) + delta_{j1}(1 - sqrt(2))] cos((j-1) theta_i),
/// i.e. P_{j-1}(c_i) over the k Gauss-Chebyshev nodes. Requires cols <= k + 1.
Eigen::MatrixXd cosine_matrix(int k, int cols);

/// Quadrature weights of the k-node method of stage degree s:
/// b_i = (1/k) [1 - 2 sum_{j=1}^{ceil(s/2)-1} cos((2i-1) j pi / k) / (4 j^2 - 1)].
/// The sum is empty for s <= 2.
Eigen::VectorXd method_weights(int s, int k);

/// Raised when a freshly built tableau fails its own invariant certification.
/// Unreachable unless the closed-form construction drifted.
struct TableauCertificationError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Butcher tableau of the s-stage Chebyshev collocation method (k = s) or of
/// its k-node generalization (k > s). Immutable after construction; share
/// freely across threads.
struct ButcherTableau {
    int s = 0;              // stage-polynomial degree
    int k = 0;              // quadrature node count, k >= s
    NodeSet nodes;          // k nodes; carries the angles theta
    Eigen::VectorXd c;      // abscissae (k)
    Eigen::VectorXd b;      // weights (k)
    Eigen::MatrixXd A;      // Butcher matrix (k x k)
    Eigen::MatrixXd P;      // cosine matrix (k x s)
    Eigen::MatrixXd P_ext;  // k x (s+1) cosine matrix, only when k > s
    SpectralFactor X;

    bool square() const { return k == s; }
};

/// Assembles A = P_s X_s P_s^T / s (square case) or A = P_{s+1} Xhat_s P_s^T / k
/// and certifies the tableau invariants (weight sum, weight lower bound, row
/// sums, factorization consistency against the integral_P oracle). k = 0
/// defaults to k = s; k < s is rejected.
ButcherTableau build_tableau(int s, int k = 0);

struct SymmetryCertificate {
    double max_defect_b = 0.0;  // || reverse(b) - b ||_inf
    double max_defect_A = 0.0;  // || Pi A Pi - (1 b^T - A) ||_max
};

/// Measures the symmetry identities P b = b and P A P = e b^T - A (square case).
SymmetryCertificate symmetry_certificate(const ButcherTableau& tableau);

/// Linear stability function R(z) = 1 + z b^T (I - z A)^{-1} e.
/// Throws std::runtime_error when I - z A is singular.
std::complex<double> stability_function(const ButcherTableau& tableau, std::complex<double> z);

/// Minimum real part over the spectrum of the dense form of X_s.
double min_eig_realpart(int s);

/// JSON document {s, k, c[], b[], A[][], X{triplets}} with all values printed
/// to 17 significant digits; A is row-major, triplets are [row, col, value]
/// with 0-based indices.
std::string tableau_to_json(const ButcherTableau& tableau);

/// Classic printed layout as CSV: k rows "c_i, a_i1..a_ik" followed by the
/// weight row ", b_1..b_k".
std::string tableau_to_csv(const ButcherTableau& tableau);

}  // namespace chebspec
