#pragma once

#include <functional>
#include <vector>

#include "bkn/configurations.hpp"
#include "bkn/numeric.hpp"

namespace bkn {

struct HeatParams {
    double alpha = 0;
    double gamma = 0;
    double t = 0;
};

struct KernelEvaluation {
    double value = 0;
    long truncation_radius = 0; // largest J_1 - J_k kept
    double tail_bound = 0;      // bound on the absolute sum of dropped terms
};

// (gamma/k)(||J~||^2 - ||I_0~||^2) + (alpha/k^2)(<J> - <I_0>)^2
double kappa(const Tuple& J, double alpha, double gamma);
// kappa_{k,k}
double kappa(const Tuple& J);
// exp(-kappa_{alpha,gamma}(J) t)
double dyson_fourier_multiplier(const Tuple& J, const HeatParams& p);

// Density of B^{0,gamma}_t on the slice sum(v) = sum(u) mod 2pi, relative to
// |V(v)|^2 dv_1..dv_{k-1} / (2pi)^{k-1} on its decreasing part. The series is a
// class function of each argument, so no total-angle adjustment is applied;
// callers decide support. Throws TruncationFailure when tol is out of reach.
KernelEvaluation heat_kernel_suk(const AnglePoint& u, const AnglePoint& v, double gamma, double t, double tol = 1e-12);

// Density of B^{alpha,gamma}_t relative to |V(v)|^2 dv / (2pi)^k on the alcove.
KernelEvaluation heat_kernel_uk(const AnglePoint& u, const AnglePoint& v, const HeatParams& p, double tol = 1e-12);

// |V(v)| / |V(u)| det(P_t(u_i, v_j)) with the theta series P_t summed over
// |l| <= theta_terms. Throws SingularInput when |V(u)| < 1e-12.
double determinantal_kernel_11(const AnglePoint& u, const AnglePoint& v, double t, int theta_terms = 8);

// The determinantal expression rewritten as a density of the same kind as
// heat_kernel_uk at (alpha, gamma) = (1, 1):
// (2pi)^k exp(||I_0~||^2 t / k) determinantal_kernel_11(u, v, 2t) / |V(v)|^2.
double determinantal_as_series_density(const AnglePoint& u, const AnglePoint& v, double t, int theta_terms = 8);

// Bound on sum over J with J_k = 0 and J_1 > S of d_J^2 exp(-c K(J~)).
double series_shell_tail(int k, double c, long S);
// Calls f on every J with J_k = 0 and J_1 = s (J = (0) when k = 1, s = 0).
void for_each_shell(int k, long s, const std::function<void(const Tuple&)>& f);

} // namespace bkn
