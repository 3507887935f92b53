#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bkn/schur.hpp"
#include "bkn/spectral.hpp"

namespace bkn {

// Integer combination of Schubert classes sigma_lambda, lambda in R_{k,n}.
struct CohomologyClass {
    int k = 0;
    int n = 0;
    std::map<Partition, BigInt> coeffs;

    static CohomologyClass schubert(const Partition& lambda, int k, int n);
    // Common <lambda> of all nonzero terms; nullopt when mixed or empty.
    std::optional<long> degree() const;
};

// Class in QH(G_{k,n}) with the power of q kept: (lambda, d) -> coefficient.
struct QuantumClass {
    int k = 0;
    int n = 0;
    std::map<std::pair<Partition, long>, BigInt> terms;

    static QuantumClass lift(const CohomologyClass& x);
    // Sets q = 1.
    CohomologyClass collapse() const;
};

// sigma_(1) * x by the quantum Pieri rule, exact.
QuantumClass pieri_multiply(const QuantumClass& x);
QuantumClass pieri_multiply(const CohomologyClass& x);

struct VerlindeResult {
    std::vector<double> raw;        // c^v before rounding, indexed like sd.vertices
    std::vector<long long> coeffs;  // rounded
    double residual = 0;
};
// c^v_{v_1..v_p} = sum_L prod_j S_{v_j}(xi(L)) mu_h(L) conj S_v(xi(L)). Throws
// NumericalDegradation naming the worst vertex when rounding fails.
VerlindeResult verlinde_product(const std::vector<Configuration>& factors, const SpectralData& sd);

// (nu, d) -> <lambda, mu, nu^c>_d
using QLRResult = std::map<std::pair<Partition, long>, long long>;
// Throws ConsistencyError if a nonzero coefficient sits at non-integral degree.
QLRResult qlr(const Partition& lambda, const Partition& mu, const SpectralData& sd);

// sum_I c_I S_I(xi(I_0)). Throws std::invalid_argument on mixed degrees or
// negative coefficients.
double qdim(const CohomologyClass& M, const SpectralData& sd);

struct ClassStats {
    double qdim = 0;
    std::vector<double> p;  // p_I^M, indexed like sd.vertices
    double norm2 = 0;       // ||M||_2 as displayed, including the extra 1/qDim
    double norm3 = 0;
    double norm2_prob = 0;  // sum_I p_I sum_j (I_j - (d + <I_0>)/k)^2
    double norm3_prob = 0;
};
ClassStats class_stats(const CohomologyClass& M, const SpectralData& sd);

// Exact product at q = 1 on the Schubert basis, indexed like sd.vertices.
// sigma_(1) factors use the Pieri rule; other factors use rounded Verlinde
// structure constants.
std::vector<BigInt> multiply_exact(const std::vector<CohomologyClass>& factors, const SpectralData& sd);

struct CountResult {
    BigInt count = 0;
    bool degree_mismatch = false;
};
// Number of degree-d maps meeting all classes: the q^d part of the product of
// all but the last class, paired with the last one via lambda -> lambda^c.
CountResult enumerative_count(const std::vector<CohomologyClass>& classes, long d, const SpectralData& sd);

} // namespace bkn
