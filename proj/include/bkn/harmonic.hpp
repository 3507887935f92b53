#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bkn/spectral.hpp"

namespace bkn {

// Law of I_mu on B_{k,n}: p(I) = mu(I) mu_h(I), nonnegative, total mass 1.
class HMeasure {
public:
    HMeasure() = default;
    // Clamps entries in [-measure_clamp, 0) to 0 and renormalises; throws
    // std::invalid_argument on larger violations or a mass off by more than num.
    HMeasure(int k, int n, Eigen::VectorXd weights);

    static HMeasure dirac(const Configuration& I, const SpectralData& sd);
    // From e-basis coefficients x, i.e. weights x * mu_h.
    static HMeasure from_e_basis(const Eigen::VectorXd& x, const SpectralData& sd);

    int k() const { return k_; }
    int n() const { return n_; }
    const Eigen::VectorXd& weights() const { return p_; }
    double operator[](std::size_t i) const { return p_(static_cast<Eigen::Index>(i)); }
    Eigen::VectorXd e_basis(const SpectralData& sd) const; // p / mu_h

private:
    int k_ = 0;
    int n_ = 0;
    Eigen::VectorXd p_;
};

// Phi_n[mu](J) for every vertex J, same order as sd.vertices.
using FourierCoeffs = Eigen::VectorXcd;

// Phi(J) = sum_I p(I) S_I(xi(J)) / S_I(xi(I_0)).
FourierCoeffs fourier(const HMeasure& mu, const SpectralData& sd);
// Same transform on an arbitrary signed law vector.
FourierCoeffs fourier_weights(const Eigen::VectorXd& p, const SpectralData& sd);

struct InverseResult {
    int k = 0;
    int n = 0;
    Eigen::VectorXd weights;     // law-side values p(I')
    double max_imag = 0;         // largest discarded imaginary part
    bool is_measure = false;     // weights >= -measure_clamp and sum to 1 within num
    HMeasure measure() const;    // requires is_measure
};
// p(I') = sum_J c(J) mu_h(J) h_l(I') conj S_{I'}(xi(J)).
InverseResult inverse_fourier(const FourierCoeffs& c, const SpectralData& sd);

HMeasure convolve(const HMeasure& mu, const HMeasure& nu, const SpectralData& sd);
// base * mu_1 * ... * mu_m, one pointwise Fourier product.
HMeasure convolve_sequence(const std::vector<HMeasure>& seq, const HMeasure& base, const SpectralData& sd);
// base * mu^{*m}
HMeasure convolve_power(const HMeasure& mu, long m, const HMeasure& base, const SpectralData& sd);

// x * y = sum_I h_r(I) x(I) s^h_I(y) with s^h_I = diag(1/h_r) A_I diag(h_r),
// using rounded structure constants. Returned as a law vector.
Eigen::VectorXd convolve_direct(const HMeasure& mu, const HMeasure& nu, const SpectralData& sd);

struct MomentSummary {
    double mean = 0;       // <mu>
    double var2 = 0;       // E|<I> - <mu>|^2
    double var3 = 0;       // E|<I> - <mu>|^3
    double norm2 = 0;      // E ||I~||^2
    double norm3 = 0;      // E ||I~||^3
    double K = 0;          // norm2 - ||I_0~||^2
    double hat3 = 0;       // E (<I^> - <I_0>)^3
};

MomentSummary moments(const HMeasure& mu, const SpectralData& sd);
// Sample average of each statistic minus its value at delta_{I_0}.
// Throws std::invalid_argument on an empty sequence.
MomentSummary aggregate(const std::vector<MomentSummary>& per_measure, int k);

} // namespace bkn
