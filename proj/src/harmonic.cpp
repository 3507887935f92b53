#include "bkn/harmonic.hpp"

#include <cmath>
#include <stdexcept>

namespace bkn {

namespace {

void require_match(int k, int n, const SpectralData& sd)
{
    if (k != sd.k || n != sd.n) throw std::invalid_argument("measure and spectral data differ in (k, n)");
}

} // namespace

HMeasure::HMeasure(int k, int n, Eigen::VectorXd weights) : k_(k), n_(n), p_(std::move(weights))
{
    const Tolerances& tol = tolerances();
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (p_(i) < -tol.measure_clamp)
            throw std::invalid_argument("h-measure weight " + std::to_string(p_(i)) + " is negative");
        if (p_(i) < 0) p_(i) = 0;
    }
    const double mass = p_.sum();
    if (std::abs(mass - 1.0) > tol.num) throw std::invalid_argument("h-measure mass " + std::to_string(mass) + " != 1");
    p_ /= mass;
}

HMeasure HMeasure::dirac(const Configuration& I, const SpectralData& sd)
{
    Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sd.size()));
    p(static_cast<Eigen::Index>(sd.index(I))) = 1.0;
    return HMeasure(sd.k, sd.n, std::move(p));
}

HMeasure HMeasure::from_e_basis(const Eigen::VectorXd& x, const SpectralData& sd)
{
    if (x.size() != static_cast<Eigen::Index>(sd.size())) throw std::invalid_argument("e-basis vector has the wrong size");
    return HMeasure(sd.k, sd.n, x.cwiseProduct(sd.mu_h));
}

Eigen::VectorXd HMeasure::e_basis(const SpectralData& sd) const
{
    require_match(k_, n_, sd);
    return p_.cwiseQuotient(sd.mu_h);
}

FourierCoeffs fourier_weights(const Eigen::VectorXd& p, const SpectralData& sd)
{
    if (p.size() != static_cast<Eigen::Index>(sd.size())) throw std::invalid_argument("law vector has the wrong size");
    const Eigen::VectorXcd a = p.cwiseQuotient(sd.h_l).cast<cplx>();
    return sd.S.transpose() * a;
}

FourierCoeffs fourier(const HMeasure& mu, const SpectralData& sd)
{
    require_match(mu.k(), mu.n(), sd);
    FourierCoeffs phi = fourier_weights(mu.weights(), sd);
    phi(0) = 1.0; // total mass
    return phi;
}

HMeasure InverseResult::measure() const
{
    if (!is_measure) throw std::logic_error("inverse transform is not an h-probability measure");
    return HMeasure(k, n, weights);
}

InverseResult inverse_fourier(const FourierCoeffs& c, const SpectralData& sd)
{
    if (c.size() != static_cast<Eigen::Index>(sd.size())) throw std::invalid_argument("coefficient vector has the wrong size");
    const Eigen::VectorXcd weighted = c.cwiseProduct(sd.mu_h.cast<cplx>());
    const Eigen::VectorXcd z = (sd.S.conjugate() * weighted).cwiseProduct(sd.h_l.cast<cplx>());
    InverseResult out;
    out.k = sd.k;
    out.n = sd.n;
    out.weights = z.real();
    out.max_imag = z.imag().cwiseAbs().maxCoeff();
    const Tolerances& tol = tolerances();
    out.is_measure = out.weights.minCoeff() >= -tol.measure_clamp && std::abs(out.weights.sum() - 1.0) <= tol.num;
    return out;
}

namespace {

HMeasure to_measure(const FourierCoeffs& c, const SpectralData& sd)
{
    InverseResult r = inverse_fourier(c, sd);
    if (!r.is_measure)
        throw NumericalDegradation("convolution left the h-probability simplex", std::max(-r.weights.minCoeff(), 0.0));
    return HMeasure(sd.k, sd.n, std::move(r.weights));
}

} // namespace

HMeasure convolve(const HMeasure& mu, const HMeasure& nu, const SpectralData& sd)
{
    return to_measure(fourier(mu, sd).cwiseProduct(fourier(nu, sd)), sd);
}

HMeasure convolve_sequence(const std::vector<HMeasure>& seq, const HMeasure& base, const SpectralData& sd)
{
    FourierCoeffs acc = fourier(base, sd);
    const HMeasure* last = nullptr;
    FourierCoeffs phi;
    for (const HMeasure& mu : seq) {
        // Repeated factors reuse the previous transform.
        if (!last || last->weights() != mu.weights()) {
            phi = fourier(mu, sd);
            last = &mu;
        }
        acc = acc.cwiseProduct(phi);
    }
    return to_measure(acc, sd);
}

HMeasure convolve_power(const HMeasure& mu, long m, const HMeasure& base, const SpectralData& sd)
{
    if (m < 0) throw std::invalid_argument("convolution power must be >= 0");
    const FourierCoeffs phi = fourier(mu, sd);
    FourierCoeffs acc = fourier(base, sd);
    for (Eigen::Index j = 0; j < acc.size(); ++j) acc(j) *= ipow(phi(j), m);
    return to_measure(acc, sd);
}

Eigen::VectorXd convolve_direct(const HMeasure& mu, const HMeasure& nu, const SpectralData& sd)
{
    require_match(mu.k(), mu.n(), sd);
    require_match(nu.k(), nu.n(), sd);
    const Eigen::VectorXd x = mu.e_basis(sd);
    const Eigen::VectorXd hy = nu.e_basis(sd).cwiseProduct(sd.h_r);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.size());
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        if (x(ii) == 0) continue;
        const StructureMatrix A = adjacency(sd.vertices[i], sd);
        acc += (sd.h_r(ii) * x(ii)) * (A.A * hy);
    }
    // acc / h_r is the e-basis product; multiply by mu_h for the law.
    return acc.cwiseQuotient(sd.h_r).cwiseProduct(sd.mu_h);
}

MomentSummary moments(const HMeasure& mu, const SpectralData& sd)
{
    require_match(mu.k(), mu.n(), sd);
    const int k = sd.k;
    const double I0_size = k * (k - 1) / 2.0;
    const double rho2 = rho_norm2(k).value();
    MomentSummary s;
    for (std::size_t i = 0; i < sd.size(); ++i) s.mean += mu[i] * static_cast<double>(sd.vertices[i].size());
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double p = mu[i];
        if (p == 0) continue;
        const Configuration& I = sd.vertices[i];
        const double size = static_cast<double>(I.size());
        const double dev = std::abs(size - s.mean);
        s.var2 += p * dev * dev;
        s.var3 += p * dev * dev * dev;
        double t2 = 0;
        for (int j = 0; j < k; ++j) {
            const double v = I[j] - size / k;
            t2 += v * v;
        }
        s.norm2 += p * t2;
        s.norm3 += p * std::pow(t2, 1.5);
        const double hat = size - static_cast<double>(k) * I[k - 1] - I0_size;
        s.hat3 += p * hat * hat * hat;
    }
    s.K = s.norm2 - rho2;
    return s;
}

MomentSummary aggregate(const std::vector<MomentSummary>& per_measure, int k)
{
    if (per_measure.empty()) throw std::invalid_argument("aggregate of an empty sequence");
    MomentSummary s;
    for (const MomentSummary& x : per_measure) {
        s.mean += x.mean;
        s.var2 += x.var2;
        s.var3 += x.var3;
        s.norm2 += x.norm2;
        s.norm3 += x.norm3;
        s.K += x.K;
        s.hat3 += x.hat3;
    }
    const double m = static_cast<double>(per_measure.size());
    const double rho2 = rho_norm2(k).value();
    // Statistics of delta_{I_0}: <I_0> = k(k-1)/2, variances 0, ||I_0~||^r, K = 0, hat = 0.
    s.mean = s.mean / m - k * (k - 1) / 2.0;
    s.var2 /= m;
    s.var3 /= m;
    s.norm2 = s.norm2 / m - rho2;
    s.norm3 = s.norm3 / m - std::pow(rho2, 1.5);
    s.K /= m;
    s.hat3 /= m;
    return s;
}

} // namespace bkn
