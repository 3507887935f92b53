#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bkn/harmonic.hpp"
#include "bkn/heat.hpp"
#include "bkn/qcoh.hpp"

namespace bkn {

// A sequence m = (mu_1, ..., mu_m). Repeated measures may be stored once with a
// multiplicity, which keeps m = n^2 sequences cheap.
struct MeasureSequence {
    std::vector<std::pair<HMeasure, long>> runs;

    static MeasureSequence repeat(const HMeasure& mu, long m);
    long length() const;
};

enum class GammaConvention { centred_K, simplified_norm, local_limit_norm };

struct SequenceStats {
    int k = 0, n = 0;
    long m = 0;
    MomentSummary agg;          // X(m) for every statistic
    double alpha = 0;           // Var(m) / 2
    double gamma = 0;           // k K(m) / (2 (k^2 - 1))
    double t0 = 0;              // (2 pi)^2 m / n^2
    double M = 0;               // max(M_var, M_hat)
    double M_var = 0;           // Var_3 / Var^{3/2}, 0 when Var = 0
    double M_hat = 0;           // <m^>_3 / K^{3/2}
    double M_simplified = 0;    // ||m~||_3 / (k^3 ||m~||_2^{3/2})
    double gamma_simplified = 0;  // k ||m~||_2 / (2 (k^2 - 1))
    double gamma_local_limit = 0; // k ||m~||_2 / (k^2 - 1)
    double alpha_simplified = 0;  // Var / (2 k^2)
};
SequenceStats sequence_stats(const MeasureSequence& seq, const SpectralData& sd);
double gamma_of(const SequenceStats& s, GammaConvention c);

// J in B_k whose residues mod n are those of J^(n) in B_{k,n}, chosen to minimise
// ||J~||_inf, then |<lambda_J>|.
Tuple centred_representative(const Configuration& Jn);

// Index of J^(n) in sd and the sign with S_J(xi(I)) = sign S_{J^(n)}(xi(I));
// nullopt when two entries of J share a residue (then S_J(xi(I)) = 0).
std::optional<std::pair<std::size_t, int>> reduce_with_sign(const Tuple& J, int n);

struct FourierWindow {
    double max_tilde_inf = 0;    // c n / (m^{1/3} M^{1/3} K^{1/2})
    double max_lambda = 0;       // c k n / (m^{1/3} M^{1/3} Var^{1/2}); inf when Var = 0
};
FourierWindow fourier_window(const SequenceStats& s, double c = 1.0);

struct FourierDecay {
    Tuple representative;
    cplx predicted;
    cplx actual;
    double error = 0;
    bool in_window = false;
};
FourierDecay fourier_decay_check(const MeasureSequence& seq, const Configuration& Jn, const SpectralData& sd,
                                 double window_c = 1.0);
// fourier_decay_check at every vertex, in vertex order; transforms computed once.
std::vector<FourierDecay> fourier_decay_scan(const MeasureSequence& seq, const SpectralData& sd, double window_c = 1.0);

struct LocalLimitRow {
    Configuration target;
    double lhs = 0;
    double rhs = 0;
};
struct LocalLimitReport {
    SequenceStats stats;
    long supported_residue = 0;       // <I'> mod n carrying the mass
    long proof_residue = 0;           // <I> + m<m> mod n
    std::optional<long> stated_residue; // <I> + m<m>/k mod n when integral
    double off_class_mass = 0;        // from the sparse propagated law
    double off_class_mass_fourier = 0; // same law through the transform
    double route_deviation = 0;       // max |p_sparse - p_fourier|
    double shift = 0;                 // angle added to xi(I)
    double sup_error = 0;
    double mean_error = 0;
    long kernel_radius = 0;
    std::vector<LocalLimitRow> rows;  // supported class only
};
// The law is propagated step by step through the integer structure constants,
// so entries outside the support stay exactly zero; the transform route is
// reported alongside. Throws std::invalid_argument unless every measure has
// Var_2 = 0.
LocalLimitReport local_limit_check(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd,
                                   GammaConvention conv = GammaConvention::centred_K);

using CoefficientFunction = std::function<cplx(const Tuple&)>;
struct WassersteinBound {
    double bound = 0;
    double best_t = 0;
    double tail_bound = 0;   // certified bound on the dropped part of the squared sum at best_t
    long radius = 0;
};
// min_t 2 sqrt(2t) k + sqrt(sum_{J != I_0} e^{-2 kappa(J) t} / kappa(J) |c1(J) - c2(J)|^2),
// kappa = kappa_{k,k}. coeff_bound bounds |c1(J) - c2(J)| / d_J. Throws
// std::invalid_argument on an empty grid.
WassersteinBound wasserstein_upper_bound(const CoefficientFunction& c1, const CoefficientFunction& c2, int k,
                                         const std::vector<double>& t_grid, double coeff_bound = 2.0,
                                         double tol = 1e-10);

struct BerryEsseenReport {
    SequenceStats stats;
    WassersteinBound w;
};
// Bound between R_{m<m>/(kn)}[xi_n((*m) * delta_I)] and B^{alpha,gamma}_{xi_n(I)}(t0).
BerryEsseenReport berry_esseen_check(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd,
                                     const std::vector<double>& t_grid);

struct CorollaryReport {
    BigInt exact = 0;
    double log_exact = 0;
    double log_asymptotic = 0;
    double ratio = 0;
    long d = 0;
    double gamma = 0;
    double t0 = 0;
    bool degree_mismatch = false;
    bool asymptotic = false;     // false when k = 1 or there are no middle classes
};
// classes = (M_0, ..., M_{m+1}); d is forced by degree balance. For k = 1 only
// the exact count is filled in.
CorollaryReport corollary_check(const std::vector<CohomologyClass>& classes, const SpectralData& sd);

// Law of (*m) * delta_I by sparse propagation: one step by mu maps p to
// sum_J mu(J) sum_I p(I) c^{I'}_{J,I} h_l(I') / (h_l(J) h_l(I)).
Eigen::VectorXd propagate_law(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd);

// log of a positive big integer.
double log_big(const BigInt& x);

} // namespace bkn
