#include "chebspec/tableau.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "format_util.hpp"

namespace chebspec {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

SpectralFactor build_spectral_factor(int s, bool extended) {
    if (s < 1) {
        throw std::invalid_argument("spectral factor: stage count must be >= 1");
    }
    SpectralFactor x;
    x.s = s;
    x.extended = extended;
    x.beta.resize(s);
    for (int j = 1; j <= s; ++j) {
        x.beta[j - 1] = 1.0 / (4.0 * j);
    }
    for (int j = 3; j <= s; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        x.alpha.push_back(sign * 8.0 * kSqrt2 * x.beta[j - 1] * x.beta[j - 3]);
    }

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(3 * s));
    triplets.emplace_back(0, 0, 0.5);
    if (s >= 2) {
        triplets.emplace_back(0, 1, -kSqrt2 * x.beta[1]);
        triplets.emplace_back(1, 0, kSqrt2 * x.beta[0]);
    }
    for (int j = 3; j <= s; ++j) {
        triplets.emplace_back(0, j - 1, x.alpha[j - 3]);
    }
    // row i (1-based, i >= 3): beta_{i-1} on the subdiagonal
    for (int i = 3; i <= s; ++i) {
        triplets.emplace_back(i - 1, i - 2, x.beta[i - 2]);
    }
    // row i (1-based, i >= 2): -beta_{i-1} on the superdiagonal
    for (int i = 2; i + 1 <= s; ++i) {
        triplets.emplace_back(i - 1, i, -x.beta[i - 2]);
    }
    if (extended) {
        triplets.emplace_back(s, s - 1, x.beta[s - 1]);
    }

    x.entries.resize(x.rows(), s);
    x.entries.setFromTriplets(triplets.begin(), triplets.end());
    x.entries.makeCompressed();
    return x;
}

Eigen::MatrixXd cosine_matrix(int k, int cols) {
    if (k < 1 || cols < 1 || cols > k + 1) {
        throw std::invalid_argument("cosine matrix: need 1 <= cols <= k + 1");
    }
    const NodeSet nodes = gauss_chebyshev_nodes(k);
    Eigen::MatrixXd m(k, cols);
    for (int i = 0; i < k; ++i) {
        m(i, 0) = 1.0;
        for (int j = 2; j <= cols; ++j) {
            m(i, j - 1) = kSqrt2 * std::cos((j - 1) * nodes.theta[i]);
        }
    }
    return m;
}

Eigen::VectorXd method_weights(int s, int k) {
    if (s < 1 || k < s) {
        throw std::invalid_argument("weights: need k >= s >= 1");
    }
    const int terms = (s + 1) / 2 - 1;  // ceil(s/2) - 1; empty for s <= 2
    Eigen::VectorXd b(k);
    for (int i = 1; i <= k; ++i) {
        double sum = 0.0;
        for (int j = 1; j <= terms; ++j) {
            sum += std::cos((2.0 * i - 1.0) * j * std::numbers::pi / k) / (4.0 * j * j - 1.0);
        }
        b(i - 1) = (1.0 - 2.0 * sum) / k;
    }
    return b;
}

namespace {

// Independent reconstruction of the integral matrix from the antiderivative
// recurrence; build_tableau cross-checks the closed-form factorization
// against it.
Eigen::MatrixXd integral_matrix(const NodeSet& nodes, int cols) {
    Eigen::MatrixXd m(nodes.count, cols);
    for (int i = 0; i < nodes.count; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = integral_P(j, nodes.c[i]);
        }
    }
    return m;
}

void certify(const ButcherTableau& t) {
    const int k = t.k;
    const double weight_sum_defect = std::abs(t.b.sum() - 1.0);
    if (weight_sum_defect > 1e-14) {
        throw TableauCertificationError("weight sum defect " +
                                        detail::format_sig17(weight_sum_defect));
    }
    const double b_floor = 1.0 / (static_cast<double>(k) * k);
    if ((t.b.array() < b_floor).any()) {
        throw TableauCertificationError("weight below 1/k^2");
    }
    const double row_sum_defect =
        (t.A * Eigen::VectorXd::Ones(k) - t.c).cwiseAbs().maxCoeff();
    if (row_sum_defect > 1e-13) {
        throw TableauCertificationError("row sum defect " +
                                        detail::format_sig17(row_sum_defect));
    }

    const Eigen::MatrixXd integrals = integral_matrix(t.nodes, t.s);
    if (t.square()) {
        const Eigen::MatrixXd px = t.P * t.X.dense();
        const double factor_defect = (integrals - px).cwiseAbs().maxCoeff();
        if (factor_defect > 1e-12) {
            throw TableauCertificationError("I_s = P_s X_s defect " +
                                            detail::format_sig17(factor_defect));
        }
        // third route: similarity transform P X P^{-1}
        const Eigen::MatrixXd a_sim =
            t.P.transpose().partialPivLu().solve(px.transpose()).transpose();
        const double sim_defect = (t.A - a_sim).cwiseAbs().maxCoeff();
        if (sim_defect > 1e-12) {
            throw TableauCertificationError("P X P^{-1} defect " +
                                            detail::format_sig17(sim_defect));
        }
    } else {
        const double factor_defect =
            (integrals - t.P_ext * t.X.dense()).cwiseAbs().maxCoeff();
        if (factor_defect > 1e-12) {
            throw TableauCertificationError("I_s = P_{s+1} Xhat_s defect " +
                                            detail::format_sig17(factor_defect));
        }
    }
}

}  // namespace

ButcherTableau build_tableau(int s, int k) {
    if (k == 0) k = s;
    if (s < 1) {
        throw std::invalid_argument("tableau: stage count must be >= 1");
    }
    if (k < s) {
        throw std::invalid_argument("tableau: quadrature count k must be >= s");
    }

    ButcherTableau t;
    t.s = s;
    t.k = k;
    t.nodes = gauss_chebyshev_nodes(k);
    t.c = Eigen::Map<const Eigen::VectorXd>(t.nodes.c.data(), k);
    t.b = method_weights(s, k);
    t.P = cosine_matrix(k, s);
    t.X = build_spectral_factor(s, /*extended=*/k > s);
    if (k > s) {
        t.P_ext = cosine_matrix(k, s + 1);
        t.A = t.P_ext * t.X.entries * t.P.transpose() / k;
    } else {
        t.A = t.P * t.X.entries * t.P.transpose() / k;
    }

    certify(t);
    return t;
}

SymmetryCertificate symmetry_certificate(const ButcherTableau& t) {
    if (!t.square()) {
        throw std::invalid_argument("symmetry certificate: square case (k = s) only");
    }
    const int s = t.s;
    SymmetryCertificate cert;
    cert.max_defect_b = (t.b.reverse() - t.b).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd flipped = t.A.reverse();  // Pi A Pi
    const Eigen::MatrixXd adjoint =
        Eigen::VectorXd::Ones(s) * t.b.transpose() - t.A;
    cert.max_defect_A = (flipped - adjoint).cwiseAbs().maxCoeff();
    return cert;
}

std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z) {
    const int k = t.k;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(k, k) - z * t.A.cast<std::complex<double>>();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (!lu.isInvertible()) {
        throw std::runtime_error("stability function: I - z A is singular");
    }
    const Eigen::VectorXcd stages = lu.solve(Eigen::VectorXcd::Ones(k));
    return 1.0 + z * (t.b.cast<std::complex<double>>().transpose() * stages)(0);
}

double min_eig_realpart(int s) {
    const SpectralFactor x = build_spectral_factor(s);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(x.dense(), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver failed to converge for X_" + std::to_string(s));
    }
    return solver.eigenvalues().real().minCoeff();
}

std::string tableau_to_json(const ButcherTableau& t) {
    using detail::format_sig17;
    std::ostringstream out;
    out << "{\n  \"s\": " << t.s << ",\n  \"k\": " << t.k << ",\n";

    auto emit_vector = [&out](const char* name, const Eigen::VectorXd& v) {
        out << "  \"" << name << "\": [";
        for (int i = 0; i < v.size(); ++i) {
            if (i) out << ", ";
            out << format_sig17(v(i));
        }
        out << "],\n";
    };
    emit_vector("c", t.c);
    emit_vector("b", t.b);

    out << "  \"A\": [\n";
    for (int i = 0; i < t.k; ++i) {
        out << "    [";
        for (int j = 0; j < t.k; ++j) {
            if (j) out << ", ";
            out << format_sig17(t.A(i, j));
        }
        out << (i + 1 < t.k ? "],\n" : "]\n");
    }
    out << "  ],\n";

    out << "  \"X\": {\"rows\": " << t.X.rows() << ", \"cols\": " << t.X.s
        << ", \"triplets\": [";
    bool first = true;
    for (int col = 0; col < t.X.entries.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(t.X.entries, col); it; ++it) {
            if (!first) out << ", ";
            first = false;
            out << "[" << it.row() << ", " << it.col() << ", "
                << format_sig17(it.value()) << "]";
        }
    }
    out << "]}\n}\n";
    return out.str();
}

std::string tableau_to_csv(const ButcherTableau& t) {
    using detail::format_sig17;
    std::ostringstream out;
    out << "# kind=tableau\n# s=" << t.s << "\n# k=" << t.k << "\n";
    for (int i = 0; i < t.k; ++i) {
        out << format_sig17(t.c(i));
        for (int j = 0; j < t.k; ++j) {
            out << "," << format_sig17(t.A(i, j));
        }
        out << "\n";
    }
    for (int j = 0; j < t.k; ++j) {
        out << "," << format_sig17(t.b(j));
    }
    out << "\n";
    return out.str();
}

}  // namespace chebspec
