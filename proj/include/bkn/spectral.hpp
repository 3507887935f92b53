#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bkn/configurations.hpp"
#include "bkn/numeric.hpp"

namespace bkn {

inline constexpr std::size_t default_vertex_cap = 5000;

// Eigendata of B_{k,n}. Immutable once built.
struct SpectralData {
    int k = 0;
    int n = 0;
    std::vector<Configuration> vertices; // enumerate(k, n) order
    Eigen::MatrixXcd S;                  // S(J, I) = S_J(xi_n(I))
    Eigen::VectorXd vmod;                // |V(xi_n(I))|
    Eigen::VectorXd mu_h;                // |V|^2 / n^k
    Eigen::VectorXd h_l;                 // S_I(xi_n(I_0))
    Eigen::VectorXd h_r;                 // |V(xi_n(I_0))| |V(xi_n(I))| / n^k

    std::size_t size() const { return vertices.size(); }
    // Throws std::invalid_argument if I does not belong to B_{k,n}.
    std::size_t index(const Configuration& I) const;
    std::size_t ground_index() const { return 0; }
};

// Throws SizeError when C(n,k) exceeds cap, NumericalDegradation when an
// identity fails on build.
SpectralData build_spectral(int k, int n, std::size_t cap = default_vertex_cap);

// Fail-fast identity checks: normalisations, |V_0| h_l = |V|, Perron bound and
// orthogonality (all columns when C(n,k) <= 1500, a fixed sample otherwise).
void verify_spectral(const SpectralData& sd);

// Verlinde synthesis: A = conj(S) diag(mu_h * S(J,.)) S^T, so that
// A(I', I) = c^{I'}_{J, I}.
Eigen::MatrixXcd adjacency_raw(const Configuration& J, const SpectralData& sd);

struct StructureMatrix {
    Eigen::MatrixXd A;       // nonnegative integers
    double residual = 0;     // max distance to the rounded value
};
// Rounds adjacency_raw to integers. Throws NumericalDegradation when a residual
// exceeds the rounding tolerance or an entry is below -constant_clamp.
StructureMatrix adjacency(const Configuration& J, const SpectralData& sd);

struct MarkovKernel {
    Eigen::MatrixXd P;
    Configuration label;
};

// P^J = diag(1/h_r) A_J diag(h_r) / S_J(xi_n(I_0)). Row I' is supported on the
// I with c^{I'}_{J,I} > 0.
MarkovKernel markov_kernel(const Configuration& J, const SpectralData& sd);
// mu_h-reversal of P^J: row I is supported on the J-successors I' of I.
MarkovKernel forward_kernel(const Configuration& J, const SpectralData& sd);

double perron_eigenvalue(const Configuration& J, const SpectralData& sd);
// sum_{a=1}^k exp(2 i pi (k+1-a) / n)
cplx stated_perron_sum(int k, int n);

std::vector<Configuration> sample_path(const MarkovKernel& kernel, const SpectralData& sd, const Configuration& start,
                                       int steps, std::uint64_t seed);

} // namespace bkn
