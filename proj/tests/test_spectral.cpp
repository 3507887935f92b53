#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "bkn/cache.hpp"
#include "bkn/spectral.hpp"
#include "oracles.hpp"

using namespace bkn;

namespace {

// A(I', I) = 1 when I' is a move-oracle out-neighbour of I.
Eigen::MatrixXd pieri_matrix(const SpectralData& sd)
{
    const auto N = static_cast<Eigen::Index>(sd.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t i = 0; i < sd.size(); ++i)
        for (const Configuration& t : oracle::pieri_neighbors(sd.vertices[i]))
            A(static_cast<Eigen::Index>(rank(t)), static_cast<Eigen::Index>(i)) = 1;
    return A;
}

} // namespace

TEST_CASE("k = 1 gives the DFT")
{
    const int n = 9;
    const SpectralData sd = build_spectral(1, n);
    for (int J = 0; J < n; ++J)
        for (int I = 0; I < n; ++I)
            CHECK(std::abs(sd.S(J, I) - std::polar(1.0, oracle::two_pi * I * J / n)) < 1e-13);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(sd.mu_h(i) == doctest::Approx(1.0 / n));
}

TEST_CASE("normalisations")
{
    const SpectralData s24 = build_spectral(2, 4);
    CHECK(s24.mu_h(0) == doctest::Approx(0.125));
    for (auto [k, n] : {std::pair{2, 6}, {3, 7}, {2, 8}, {4, 9}, {3, 10}}) {
        const SpectralData sd = build_spectral(k, n);
        CHECK(sd.mu_h.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sd.h_l(0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sd.h_l.dot(sd.h_r) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((sd.h_l.cwiseProduct(sd.h_r) - sd.mu_h).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(sd.h_l.minCoeff() > 0);
        // table entries against the Leibniz oracle on the raw angles
        for (std::size_t j = 0; j < sd.size(); j += 3)
            for (std::size_t i = 0; i < sd.size(); i += 2) {
                const cplx want = oracle::schur(sd.vertices[j].tuple(), oracle::xi(sd.vertices[i]));
                CHECK(std::abs(sd.S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) - want) < 1e-10);
            }
    }
}

TEST_CASE("Perron bound and orthogonality")
{
    for (auto [k, n] : {std::pair{2, 6}, {3, 7}, {2, 8}}) {
        const SpectralData sd = build_spectral(k, n);
        const auto N = static_cast<Eigen::Index>(sd.size());
        for (Eigen::Index j = 0; j < N; ++j)
            for (Eigen::Index i = 0; i < N; ++i) CHECK(std::abs(sd.S(j, i)) <= sd.h_l(j) + 1e-12);
        // sum_J S_J(xi(I)) conj S_J(xi(I')) = delta n^k / |V(xi(I))|^2
        const Eigen::MatrixXcd G = sd.S.transpose() * sd.S.conjugate();
        double worst = 0;
        for (Eigen::Index a = 0; a < N; ++a)
            for (Eigen::Index b = 0; b < N; ++b) {
                const double want = a == b ? std::pow(double(n), k) / std::norm(oracle::vandermonde(oracle::xi(sd.vertices[a]))) : 0.0;
                worst = std::max(worst, std::abs(G(a, b) - want));
            }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("eigen-relation against the move oracle")
{
    for (auto [k, n] : {std::pair{2, 6}, {2, 8}, {3, 7}, {1, 5}}) {
        const SpectralData sd = build_spectral(k, n);
        const Eigen::MatrixXd A = pieri_matrix(sd);
        const Eigen::Index j1 = static_cast<Eigen::Index>(sd.index(pieri_generator(k, n)));
        double worst = 0;
        for (Eigen::Index i = 0; i < A.cols(); ++i) {
            const Eigen::VectorXcd w = sd.S.col(i).conjugate();
            worst = std::max(worst, (A.cast<cplx>() * w - sd.S(j1, i) * w).cwiseAbs().maxCoeff());
        }
        CHECK(worst < 1e-9);
        CHECK((adjacency(pieri_generator(k, n), sd).A - A).cwiseAbs().maxCoeff() == 0);
    }
}

TEST_CASE("biorthogonality of w and u")
{
    const SpectralData sd = build_spectral(3, 7);
    const Eigen::MatrixXcd W = sd.S.conjugate();
    const Eigen::MatrixXcd U = W * sd.mu_h.asDiagonal();
    // <w^(I), u^(J)> with the bilinear pairing sum_v w_v conj(u_v)
    const Eigen::MatrixXcd B = W.transpose() * U.conjugate();
    CHECK((B - Eigen::MatrixXcd::Identity(B.rows(), B.cols())).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("structure matrices")
{
    const SpectralData sd = build_spectral(2, 6);
    CHECK((adjacency(ground(2, 6), sd).A - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff() == 0);
    for (const Configuration& J : sd.vertices) {
        const StructureMatrix A = adjacency(J, sd);
        CHECK(A.residual < 1e-9);
        CHECK(A.A.minCoeff() >= 0);
    }
    const SpectralData s13 = build_spectral(1, 3);
    const Eigen::MatrixXd A2 = adjacency(Configuration({2}, 3), s13).A;
    CHECK((A2 * A2 - adjacency(Configuration({1}, 3), s13).A).cwiseAbs().maxCoeff() == 0);
    // commutativity of the algebra
    for (std::size_t a = 0; a < sd.size(); a += 4)
        for (std::size_t b = 1; b < sd.size(); b += 5) {
            const Eigen::MatrixXd X = adjacency(sd.vertices[a], sd).A, Y = adjacency(sd.vertices[b], sd).A;
            CHECK((X * Y - Y * X).cwiseAbs().maxCoeff() == 0);
        }
}

TEST_CASE("Markov kernels")
{
    const SpectralData sd = build_spectral(2, 6);
    CHECK((markov_kernel(ground(2, 6), sd).P - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-14);
    std::vector<Eigen::MatrixXd> Ps;
    for (const Configuration& J : sd.vertices) {
        const MarkovKernel K = markov_kernel(J, sd);
        CHECK(K.P.minCoeff() >= 0);
        CHECK((K.P.rowwise().sum().array() - 1).abs().maxCoeff() < 1e-12);
        CHECK(((sd.mu_h.transpose() * K.P) - sd.mu_h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        const MarkovKernel F = forward_kernel(J, sd);
        CHECK((F.P.rowwise().sum().array() - 1).abs().maxCoeff() < 1e-12);
        Ps.push_back(K.P);
    }
    for (std::size_t a = 0; a < Ps.size(); a += 2)
        for (std::size_t b = 1; b < Ps.size(); b += 3) CHECK((Ps[a] * Ps[b] - Ps[b] * Ps[a]).cwiseAbs().maxCoeff() < 1e-9);

    // P^{I_1} row I' lives on the in-neighbours of I', the forward kernel on out-neighbours
    const Configuration I1 = pieri_generator(2, 6);
    const MarkovKernel P = markov_kernel(I1, sd), Q = forward_kernel(I1, sd);
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const auto out = oracle::pieri_neighbors(sd.vertices[i]);
        for (std::size_t t = 0; t < sd.size(); ++t) {
            const bool edge = std::find(out.begin(), out.end(), sd.vertices[t]) != out.end();
            CHECK((Q.P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) > 0) == edge);
            CHECK((P.P(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) > 0) == edge);
        }
    }
}

TEST_CASE("Perron eigenvalue")
{
    const SpectralData s24 = build_spectral(2, 4);
    CHECK(perron_eigenvalue(ground(2, 4), s24) == doctest::Approx(1.0));
    CHECK(perron_eigenvalue(pieri_generator(2, 4), s24) == doctest::Approx(std::sqrt(2.0)));
    for (int n = 2; n <= 11; ++n)
        for (int k = 1; k < n; ++k) {
            if (binomial(n, k) > 500) continue;
            const SpectralData sd = build_spectral(k, n);
            CHECK(std::abs(stated_perron_sum(k, n)) == doctest::Approx(perron_eigenvalue(pieri_generator(k, n), sd)));
            CHECK(perron_eigenvalue(pieri_generator(k, n), sd) ==
                  doctest::Approx(std::sin(k * M_PI / n) / std::sin(M_PI / n)));
        }
}

TEST_CASE("sampling")
{
    const SpectralData sd = build_spectral(2, 5);
    const MarkovKernel Q = forward_kernel(pieri_generator(2, 5), sd);
    CHECK(sample_path(Q, sd, ground(2, 5), 0, 1) == std::vector<Configuration>{ground(2, 5)});
    CHECK(sample_path(Q, sd, ground(2, 5), 200, 42) == sample_path(Q, sd, ground(2, 5), 200, 42));
    const auto path = sample_path(Q, sd, ground(2, 5), 100000, 7);
    for (std::size_t s = 1; s < path.size(); ++s) {
        const auto nb = oracle::pieri_neighbors(path[s - 1]);
        REQUIRE(std::find(nb.begin(), nb.end(), path[s]) != nb.end());
    }
    std::vector<double> freq(sd.size(), 0);
    for (const auto& I : path) freq[sd.index(I)] += 1.0 / static_cast<double>(path.size());
    double chi2 = 0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double e = sd.mu_h(static_cast<Eigen::Index>(i));
        chi2 += std::pow(freq[i] - e, 2) / e;
    }
    // 9 degrees of freedom; the chain is correlated, so allow a wide margin
    CHECK(chi2 * static_cast<double>(path.size()) < 200);
}

TEST_CASE("size cap and invalid input")
{
    CHECK_THROWS_AS(build_spectral(10, 30), SizeError);
    const SpectralData sd = build_spectral(2, 5);
    CHECK_THROWS_AS(sd.index(Configuration({2, 1, 0}, 5)), std::invalid_argument);
    CHECK_THROWS_AS(sd.index(Configuration({2, 1}, 6)), std::invalid_argument);
}

TEST_CASE("cache round trip and version check")
{
    const auto dir = std::filesystem::temp_directory_path() / "bkn_spectral_test_cache";
    std::filesystem::remove_all(dir);
    setenv("BKN_CACHE_DIR", dir.c_str(), 1);
    bool hit = true;
    const SpectralData a = load_or_build(3, 7, default_vertex_cap, &hit);
    CHECK_FALSE(hit);
    CHECK(std::filesystem::exists(cache_path(3, 7)));
    const SpectralData b = load_or_build(3, 7, default_vertex_cap, &hit);
    CHECK(hit);
    CHECK((a.S - b.S).cwiseAbs().maxCoeff() == 0);
    CHECK((a.h_r - b.h_r).cwiseAbs().maxCoeff() == 0);

    // a stale format version is rejected and rebuilt
    {
        std::ifstream in(cache_path(3, 7));
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const std::string current = "\"format_version\":" + std::to_string(cache_format_version);
        const auto pos = text.find(current);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, current.size(), "\"format_version\":0");
        std::ofstream(cache_path(3, 7)) << text;
    }
    CHECK_THROWS_AS(load_spectral(cache_path(3, 7)), ConsistencyError);
    load_or_build(3, 7, default_vertex_cap, &hit);
    CHECK_FALSE(hit);
    CHECK_NOTHROW(load_spectral(cache_path(3, 7)));
    std::filesystem::remove_all(dir);
}
