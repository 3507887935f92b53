#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bkn/configurations.hpp"
#include "bkn/numeric.hpp"

namespace bkn {

using BigInt = boost::multiprecision::cpp_int;

struct SchurValue {
    cplx value;
    // 2^{k(k-1)/2} / |a_{I_0}(u)|; at least 1, large when angles nearly collide.
    double condition_estimate;
};

// a_J(u) = det(exp(i u_l J_m)).
cplx alternant(const Tuple& J, const std::vector<double>& u);

// S_J(u) = a_J(u) / a_{I_0}(u). J is any strictly decreasing integer tuple.
// Throws SingularInput when two angles coincide mod 2pi.
SchurValue schur_at(const Tuple& J, const AnglePoint& u);
cplx schur(const Tuple& J, const AnglePoint& u);

// prod_{j<j'} (e^{i u_j} - e^{i u_j'})
cplx vandermonde(const AnglePoint& u);
// |V(xi_n(I))| by the sine product 2^{k(k-1)/2} prod sin(pi (I_j - I_j') / n).
double vandermonde_abs(const Configuration& I);

// d_J = prod_{i<j} (J_i - J_j) / (j - i), exact.
BigInt weyl_dimension(const Tuple& J);
double weyl_dimension_value(const Tuple& J);

struct AsymptoticRatio {
    double main;  // 1 - (2pi)^2 / (2 (k^2-1) n^2) K(I_lambda~) K(u)
    cplx exact;   // s_lambda(exp(2 pi i u / n)) / s_lambda(exp(2 pi i I_0~ / n))
};
// u has k real coordinates summing to zero. Throws std::domain_error for k = 1.
AsymptoticRatio asymptotic_schur_ratio(const Partition& lambda, int k, const std::vector<double>& u, int n);

} // namespace bkn
