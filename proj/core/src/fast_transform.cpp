#include "chebspec/fast_transform.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace chebspec {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

// Unnormalized DCT-II (REDFT10) and DCT-III (REDFT01) plans of length s.
// Created once per length with FFTW_UNALIGNED so the new-array execute
// functions accept any contiguous column.
struct TransformPlan::FftTables {
    int n = 0;
    fftw_plan forward = nullptr;   // REDFT10
    fftw_plan backward = nullptr;  // REDFT01

    explicit FftTables(int length) : n(length) {
        std::vector<double> in(static_cast<std::size_t>(n)), out(in.size());
        std::lock_guard<std::mutex> lock(planner_mutex());
        forward = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_REDFT10,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
        backward = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_REDFT01,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!forward || !backward) {
            throw std::runtime_error("fftw plan creation failed for length " +
                                     std::to_string(n));
        }
    }

    ~FftTables() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }

    FftTables(const FftTables&) = delete;
    FftTables& operator=(const FftTables&) = delete;
};

TransformPlan::TransformPlan(int s, TransformMode mode) : length_(s), mode_(mode) {
    if (s < 1) {
        throw std::invalid_argument("transform plan: length must be >= 1");
    }
    if (mode_ == TransformMode::fast) {
        fft_ = std::make_shared<FftTables>(s);
    } else {
        cosine_ = std::make_shared<Eigen::MatrixXd>(cosine_matrix(s, s));
    }
    work_.resize(s, 1);
}

namespace {

void require_rows(const Eigen::Ref<const Eigen::MatrixXd>& m, int rows, const char* what) {
    if (m.rows() != rows) {
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(rows) + " rows, got " +
                                    std::to_string(m.rows()));
    }
}

}  // namespace

void TransformPlan::dct_forward(const Eigen::Ref<const Eigen::MatrixXd>& V,
                                Eigen::Ref<Eigen::MatrixXd> out) {
    const int s = length_;
    require_rows(V, s, "dct_forward");
    if (out.rows() != s || out.cols() != V.cols()) {
        throw std::invalid_argument("dct_forward: output shape mismatch");
    }
    if (mode_ == TransformMode::reference) {
        out.noalias() = cosine_->transpose() * V / std::sqrt(static_cast<double>(s));
        return;
    }
    // FFTW REDFT10 gives y_k = 2 sum_i v_i cos(k theta_i); rescale rows to the
    // orthonormal convention (1/sqrt(s)) P^T.
    const double scale0 = 0.5 / std::sqrt(static_cast<double>(s));
    const double scale = 1.0 / std::sqrt(2.0 * s);
    work_.resize(s, 1);
    for (Eigen::Index col = 0; col < V.cols(); ++col) {
        work_.col(0) = V.col(col);
        fftw_execute_r2r(fft_->forward, work_.col(0).data(), out.col(col).data());
        out(0, col) *= scale0;
        out.col(col).tail(s - 1) *= scale;
    }
}

void TransformPlan::dct_inverse(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                Eigen::Ref<Eigen::MatrixXd> out) {
    const int s = length_;
    require_rows(Z, s, "dct_inverse");
    if (out.rows() != s || out.cols() != Z.cols()) {
        throw std::invalid_argument("dct_inverse: output shape mismatch");
    }
    if (mode_ == TransformMode::reference) {
        out.noalias() = (*cosine_) * Z / std::sqrt(static_cast<double>(s));
        return;
    }
    // REDFT01 computes y_i = x_0 + 2 sum_{k>=1} x_k cos(k theta_i); prescale
    // the input so the result is (1/sqrt(s)) P z.
    const double scale0 = 1.0 / std::sqrt(static_cast<double>(s));
    const double scale = 1.0 / std::sqrt(2.0 * s);
    work_.resize(s, 1);
    for (Eigen::Index col = 0; col < Z.cols(); ++col) {
        work_(0, 0) = Z(0, col) * scale0;
        work_.col(0).tail(s - 1) = Z.col(col).tail(s - 1) * scale;
        fftw_execute_r2r(fft_->backward, work_.col(0).data(), out.col(col).data());
    }
}

Eigen::MatrixXd TransformPlan::dct_forward(const Eigen::Ref<const Eigen::MatrixXd>& V) {
    Eigen::MatrixXd out(length_, V.cols());
    dct_forward(V, out);
    return out;
}

Eigen::MatrixXd TransformPlan::dct_inverse(const Eigen::Ref<const Eigen::MatrixXd>& Z) {
    Eigen::MatrixXd out(length_, Z.cols());
    dct_inverse(Z, out);
    return out;
}

Eigen::MatrixXd apply_butcher_fast(TransformPlan& plan, const SpectralFactor& X,
                                   const Eigen::Ref<const Eigen::MatrixXd>& W) {
    if (X.extended) {
        throw std::invalid_argument("apply_butcher_fast: square-case X required");
    }
    if (X.s != plan.length()) {
        throw std::invalid_argument("apply_butcher_fast: plan length does not match X");
    }
    require_rows(W, plan.length(), "apply_butcher_fast");
    Eigen::MatrixXd coeffs = plan.dct_forward(W);
    Eigen::MatrixXd scaled = X.entries * coeffs;
    Eigen::MatrixXd out(plan.length(), W.cols());
    plan.dct_inverse(scaled, out);
    return out;
}

}  // namespace chebspec
