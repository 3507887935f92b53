#include "bkn/schur.hpp"

#include <cmath>
#include <stdexcept>

namespace bkn {

namespace {

constexpr double collision_floor = 1e-12;

double circular_gap(double a, double b)
{
    const double d = wrap_angle(a - b);
    return std::min(d, two_pi - d);
}

void require_distinct(const std::vector<double>& u)
{
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (circular_gap(u[i], u[j]) < collision_floor)
                throw SingularInput("Schur evaluation at coinciding angles");
}

Tuple rho_tuple(int k)
{
    Tuple t(k);
    for (int j = 0; j < k; ++j) t[j] = k - 1 - j;
    return t;
}

} // namespace

cplx alternant(const Tuple& J, const std::vector<double>& u)
{
    const int k = static_cast<int>(J.size());
    std::vector<cplx> m(static_cast<std::size_t>(k) * k);
    for (int l = 0; l < k; ++l)
        for (int c = 0; c < k; ++c) m[l * k + c] = std::polar(1.0, std::fmod(u[l] * static_cast<double>(J[c]), two_pi));
    return determinant(m, k);
}

SchurValue schur_at(const Tuple& J, const AnglePoint& u)
{
    if (static_cast<int>(J.size()) != u.k()) throw std::invalid_argument("Schur index and point differ in length");
    require_distinct(u.angles);
    const int k = u.k();
    const cplx den = alternant(rho_tuple(k), u.angles);
    const cplx num = alternant(J, u.angles);
    const double scale = std::pow(2.0, k * (k - 1) / 2.0);
    return SchurValue{num / den, scale / std::abs(den)};
}

cplx schur(const Tuple& J, const AnglePoint& u) { return schur_at(J, u).value; }

cplx vandermonde(const AnglePoint& u)
{
    cplx v = 1.0;
    for (int i = 0; i < u.k(); ++i)
        for (int j = i + 1; j < u.k(); ++j) v *= std::polar(1.0, u.angles[i]) - std::polar(1.0, u.angles[j]);
    return v;
}

double vandermonde_abs(const Configuration& I)
{
    double v = 1.0;
    for (int i = 0; i < I.k(); ++i)
        for (int j = i + 1; j < I.k(); ++j) v *= 2.0 * std::sin(pi * (I[i] - I[j]) / I.n());
    return v;
}

BigInt weyl_dimension(const Tuple& J)
{
    BigInt num = 1, den = 1;
    const int k = static_cast<int>(J.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            num *= J[i] - J[j];
            den *= j - i;
        }
    return num / den;
}

double weyl_dimension_value(const Tuple& J)
{
    double d = 1.0;
    const int k = static_cast<int>(J.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) d *= static_cast<double>(J[i] - J[j]) / (j - i);
    return d;
}

AsymptoticRatio asymptotic_schur_ratio(const Partition& lambda, int k, const std::vector<double>& u, int n)
{
    if (k < 2) throw std::domain_error("asymptotic Schur ratio needs k >= 2");
    if (static_cast<int>(u.size()) != k || lambda.length() > k)
        throw std::invalid_argument("asymptotic Schur ratio: dimension mismatch");
    Tuple J = rho_tuple(k);
    const std::vector<int> p = lambda.padded(k);
    for (int j = 0; j < k; ++j) J[j] += p[j];

    const double c = two_pi * two_pi / (2.0 * (k * k - 1.0) * n * n);
    const double main = 1.0 - c * K_tilde(J) * K_value(u);

    std::vector<double> x(k), y(k);
    for (int j = 0; j < k; ++j) {
        x[j] = two_pi * u[j] / n;
        y[j] = two_pi * ((k - 1) / 2.0 - j) / n;
    }
    require_distinct(x);
    const Tuple rho = rho_tuple(k);
    const cplx sx = alternant(J, x) / alternant(rho, x);
    const cplx sy = alternant(J, y) / alternant(rho, y);
    return AsymptoticRatio{main, sx / sy};
}

} // namespace bkn
