#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bkn/harmonic.hpp"
#include "oracles.hpp"

using namespace bkn;

namespace {

HMeasure random_measure(const SpectralData& sd, std::mt19937& rng, double sparsity = 0.5)
{
    std::uniform_real_distribution<double> U(0, 1);
    Eigen::VectorXd p(static_cast<Eigen::Index>(sd.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = U(rng) < sparsity ? U(rng) : 0.0;
    p(0) += 0.01;
    return HMeasure(sd.k, sd.n, p / p.sum());
}

} // namespace

TEST_CASE("Fourier transform basics")
{
    for (auto [k, n] : {std::pair{2, 6}, {3, 7}, {1, 8}}) {
        const SpectralData sd = build_spectral(k, n);
        const FourierCoeffs one = fourier(HMeasure::dirac(ground(k, n), sd), sd);
        CHECK((one.array() - cplx(1.0)).abs().maxCoeff() < 1e-12);
        std::mt19937 rng(static_cast<unsigned>(k * 100 + n));
        for (int t = 0; t < 10; ++t) CHECK(std::abs(fourier(random_measure(sd, rng), sd)(0) - cplx(1.0)) < 1e-12);
    }
}

TEST_CASE("k = 1 is the classical DFT and cyclic convolution")
{
    for (int n : {2, 3, 7, 16, 64}) {
        const SpectralData sd = build_spectral(1, n);
        std::mt19937 rng(static_cast<unsigned>(n));
        const HMeasure mu = random_measure(sd, rng, 0.8), nu = random_measure(sd, rng, 0.8);
        const Eigen::VectorXd x = mu.e_basis(sd), y = nu.e_basis(sd);
        const FourierCoeffs phi = fourier(mu, sd);
        double worst = 0;
        for (int I = 0; I < n; ++I) {
            cplx want = 0;
            for (int J = 0; J < n; ++J) want += std::polar(1.0, oracle::two_pi * I * J / n) * x(J) / double(n);
            worst = std::max(worst, std::abs(phi(I) - want));
        }
        CHECK(worst <= 1e-12);

        const Eigen::VectorXd conv = convolve(mu, nu, sd).e_basis(sd);
        worst = 0;
        for (int J = 0; J < n; ++J) {
            double want = 0;
            for (int I = 0; I < n; ++I) want += x(I) * y(((J - I) % n + n) % n) / n;
            worst = std::max(worst, std::abs(conv(J) - want));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("inverse transform")
{
    const SpectralData sd = build_spectral(2, 6);
    for (const Configuration& I : sd.vertices) {
        const HMeasure d = HMeasure::dirac(I, sd);
        const InverseResult r = inverse_fourier(fourier(d, sd), sd);
        CHECK((r.weights - d.weights()).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(r.is_measure);
        CHECK(r.max_imag < 1e-10);
    }
    FourierCoeffs c = FourierCoeffs::Zero(static_cast<Eigen::Index>(sd.size()));
    c(0) = 1;
    const InverseResult r = inverse_fourier(c, sd);
    CHECK((r.weights - sd.mu_h).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r.measure().e_basis(sd).array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("convolution identities")
{
    for (auto [k, n] : {std::pair{2, 6}, {3, 6}}) {
        const SpectralData sd = build_spectral(k, n);
        std::mt19937 rng(static_cast<unsigned>(17 * k + n));
        for (int trial = 0; trial < 6; ++trial) {
            const HMeasure a = random_measure(sd, rng), b = random_measure(sd, rng), c = random_measure(sd, rng);
            const HMeasure ab = convolve(a, b, sd);
            CHECK((fourier(ab, sd) - fourier(a, sd).cwiseProduct(fourier(b, sd))).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK((ab.weights() - convolve(b, a, sd).weights()).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK((convolve(ab, c, sd).weights() - convolve(a, convolve(b, c, sd), sd).weights()).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK((convolve_direct(a, b, sd) - ab.weights()).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK(ab.weights().minCoeff() >= 0);
            CHECK(ab.weights().sum() == doctest::Approx(1.0));
            CHECK((convolve(a, HMeasure::dirac(ground(k, n), sd), sd).weights() - a.weights()).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("a step by delta_{I_1} is the forward Pieri kernel")
{
    const SpectralData sd = build_spectral(3, 7);
    std::mt19937 rng(4);
    const HMeasure nu = random_measure(sd, rng);
    const HMeasure d1 = HMeasure::dirac(pieri_generator(3, 7), sd);
    const Eigen::VectorXd got = convolve(d1, nu, sd).weights();
    // p'(I') = sum_{I -> I'} p(I) h_l(I') / (h_l(I) lambda)
    const double lambda = std::sin(3 * M_PI / 7) / std::sin(M_PI / 7);
    Eigen::VectorXd want = Eigen::VectorXd::Zero(got.size());
    for (std::size_t i = 0; i < sd.size(); ++i)
        for (const Configuration& t : oracle::pieri_neighbors(sd.vertices[i])) {
            const auto j = static_cast<Eigen::Index>(rank(t));
            want(j) += nu[i] * sd.h_l(j) / (sd.h_l(static_cast<Eigen::Index>(i)) * lambda);
        }
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sequences and powers")
{
    const SpectralData sd = build_spectral(2, 7);
    std::mt19937 rng(8);
    const HMeasure mu = random_measure(sd, rng), base = random_measure(sd, rng);
    HMeasure acc = base;
    for (int i = 0; i < 5; ++i) acc = convolve(mu, acc, sd);
    CHECK((convolve_power(mu, 5, base, sd).weights() - acc.weights()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((convolve_sequence({mu, mu, mu, mu, mu}, base, sd).weights() - acc.weights()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((convolve_power(mu, 0, base, sd).weights() - base.weights()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("moments")
{
    const SpectralData sd = build_spectral(3, 8);
    const MomentSummary g = moments(HMeasure::dirac(ground(3, 8), sd), sd);
    CHECK(g.mean == doctest::Approx(3.0));
    CHECK(g.var2 == 0);
    CHECK(g.K == doctest::Approx(0.0).scale(1));

    // direct evaluation of every statistic
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const HMeasure mu = random_measure(sd, rng);
        const MomentSummary s = moments(mu, sd);
        double mean = 0, v2 = 0, v3 = 0, n2 = 0, n3 = 0, h3 = 0;
        for (std::size_t i = 0; i < sd.size(); ++i) mean += mu[i] * sd.vertices[i].size();
        for (std::size_t i = 0; i < sd.size(); ++i) {
            const auto& I = sd.vertices[i];
            const double c = I.size() / 3.0;
            const double r2 = std::pow(I[0] - c, 2) + std::pow(I[1] - c, 2) + std::pow(I[2] - c, 2);
            v2 += mu[i] * std::pow(I.size() - mean, 2);
            v3 += mu[i] * std::pow(std::abs(I.size() - mean), 3);
            n2 += mu[i] * r2;
            n3 += mu[i] * std::pow(r2, 1.5);
            h3 += mu[i] * std::pow((I[0] - I[2]) + (I[1] - I[2]) - 3.0, 3);
        }
        CHECK(s.mean == doctest::Approx(mean));
        CHECK(s.var2 == doctest::Approx(v2));
        CHECK(s.var3 == doctest::Approx(v3));
        CHECK(s.norm2 == doctest::Approx(n2));
        CHECK(s.norm3 == doctest::Approx(n3));
        CHECK(s.K == doctest::Approx(n2 - 2.0));
        CHECK(s.hat3 == doctest::Approx(h3));
        // <mu^ - I_0>_3 <= 2 sqrt(2) k^3 ||mu~||_3
        CHECK(s.hat3 <= 2 * std::sqrt(2.0) * 27 * s.norm3);
    }
}

TEST_CASE("Pieri-step measures: Var_2 vanishes exactly on rows without a wrap move")
{
    const SpectralData sd = build_spectral(2, 8);
    int wrap_rows = 0;
    for (const Configuration& I : sd.vertices) {
        const auto nb = oracle::pieri_neighbors(I);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sd.size()));
        for (const auto& t : nb) p(static_cast<Eigen::Index>(sd.index(t))) = 1.0 / nb.size();
        const MomentSummary s = moments(HMeasure(2, 8, p), sd);
        bool mixed = false;
        for (const auto& t : nb) mixed |= t.size() != nb.front().size();
        wrap_rows += mixed;
        if (mixed) CHECK(s.var2 > 0);
        else CHECK(s.var2 == doctest::Approx(0.0).scale(1));
        // sizes always advance by one modulo n
        for (const auto& t : nb) CHECK(((t.size() - I.size() - 1) % 8 + 8) % 8 == 0);
    }
    CHECK(wrap_rows > 0);
}

TEST_CASE("aggregate")
{
    CHECK_THROWS_AS(aggregate({}, 2), std::invalid_argument);
    const SpectralData sd = build_spectral(2, 6);
    const MomentSummary d0 = moments(HMeasure::dirac(ground(2, 6), sd), sd);
    const MomentSummary a = aggregate({d0, d0, d0}, 2);
    CHECK(a.mean == doctest::Approx(0.0).scale(1));
    CHECK(a.K == doctest::Approx(0.0).scale(1));
    CHECK(a.norm2 == doctest::Approx(0.0).scale(1));
    const MomentSummary d1 = moments(HMeasure::dirac(pieri_generator(2, 6), sd), sd);
    const MomentSummary b = aggregate({d1, d0}, 2);
    CHECK(b.mean == doctest::Approx(0.5));
    CHECK(b.K == doctest::Approx(0.75));
    CHECK(b.hat3 == doctest::Approx(0.5));
}

TEST_CASE("h-measure validation")
{
    Eigen::VectorXd p(3);
    p << 0.5, 0.5 + 1e-10, -1e-10;
    const HMeasure ok(1, 3, p);
    CHECK(ok.weights().minCoeff() == 0);
    p << 0.6, 0.5, -0.1;
    CHECK_THROWS_AS(HMeasure(1, 3, p), std::invalid_argument);
    p << 0.6, 0.5, 0.1;
    CHECK_THROWS_AS(HMeasure(1, 3, p), std::invalid_argument);
}
