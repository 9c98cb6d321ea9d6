#pragma once

#include <memory>

#include <Eigen/Core>

#include "chebspec/tableau.hpp"

namespace chebspec {

enum class TransformMode { reference, fast };

/// Orthonormal DCT-II / DCT-III pair matching the cosine matrix P_s:
///   dct_forward(V) = (1/sqrt(s)) P_s^T V      (columnwise)
///   dct_inverse(Z) = (1/sqrt(s)) P_s   Z
/// The reference mode multiplies by a stored dense P_s; the fast mode runs an
/// O(s log s) real-to-real FFT per column. Both satisfy the same convention
/// lock against P_s entrywise.
///
/// A plan owns scratch buffers, so one apply runs at a time per plan; clones
/// are cheap and share the precomputed tables, making one-plan-per-thread the
/// intended concurrent pattern.
class TransformPlan {
public:
    explicit TransformPlan(int s, TransformMode mode = TransformMode::fast);

    int length() const { return length_; }
    TransformMode mode() const { return mode_; }

    Eigen::MatrixXd dct_forward(const Eigen::Ref<const Eigen::MatrixXd>& V);
    Eigen::MatrixXd dct_inverse(const Eigen::Ref<const Eigen::MatrixXd>& Z);

    void dct_forward(const Eigen::Ref<const Eigen::MatrixXd>& V,
                     Eigen::Ref<Eigen::MatrixXd> out);
    void dct_inverse(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                     Eigen::Ref<Eigen::MatrixXd> out);

private:
    struct FftTables;
    friend Eigen::MatrixXd apply_butcher_fast(TransformPlan&, const SpectralFactor&,
                                              const Eigen::Ref<const Eigen::MatrixXd>&);

    int length_ = 0;
    TransformMode mode_ = TransformMode::reference;
    std::shared_ptr<const FftTables> fft_;  // fast mode
    std::shared_ptr<const Eigen::MatrixXd> cosine_;  // reference mode
    Eigen::MatrixXd work_;  // per-instance scratch
};

/// A W computed as dct_inverse(X dct_forward(W)) with X applied in sparse
/// form; square-case X only. Equals the dense Butcher product to roundoff.
Eigen::MatrixXd apply_butcher_fast(TransformPlan& plan, const SpectralFactor& X,
                                   const Eigen::Ref<const Eigen::MatrixXd>& W);

}  // namespace chebspec
