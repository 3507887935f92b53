#include "bkn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bkn/schur.hpp"

namespace bkn {

namespace {

constexpr std::size_t full_orthogonality_limit = 1500;
constexpr std::size_t orthogonality_sample = 64;

std::string where(const SpectralData& sd)
{
    return " (k=" + std::to_string(sd.k) + ", n=" + std::to_string(sd.n) + ")";
}

} // namespace

std::size_t SpectralData::index(const Configuration& I) const
{
    if (I.k() != k || I.n() != n) throw std::invalid_argument("configuration " + I.str() + " not in B_{k,n}" + where(*this));
    return rank(I);
}

SpectralData build_spectral(int k, int n, std::size_t cap)
{
    if (k <= 0 || n <= 0 || k > n) throw std::invalid_argument("build_spectral needs 1 <= k <= n");
    const std::uint64_t count = binomial(n, k);
    if (count > cap)
        throw SizeError("C(" + std::to_string(n) + "," + std::to_string(k) + ") = " + std::to_string(count) +
                            " exceeds the vertex cap " + std::to_string(cap),
                        count);

    SpectralData sd;
    sd.k = k;
    sd.n = n;
    sd.vertices = enumerate(k, n);
    const std::size_t N = sd.vertices.size();

    // e^{i u_l j} with u_l = pi (2 I_l - (k-1)) / n is the 2n-th root of unity
    // with exponent (2 I_l - (k-1)) j mod 2n; index arithmetic stays exact.
    std::vector<cplx> roots(2 * static_cast<std::size_t>(n));
    for (int e = 0; e < 2 * n; ++e) roots[e] = std::polar(1.0, pi * e / n);
    const long two_n = 2L * n;
    auto root = [&](long a, long j) {
        long e = (a * j) % two_n;
        if (e < 0) e += two_n;
        return roots[static_cast<std::size_t>(e)];
    };

    sd.S.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    parallel_for(N, [&](std::size_t col) {
        const Configuration& I = sd.vertices[col];
        std::vector<long> a(k);
        for (int l = 0; l < k; ++l) a[l] = 2L * I[l] - (k - 1);
        std::vector<cplx> m(static_cast<std::size_t>(k) * k);
        for (int l = 0; l < k; ++l)
            for (int c = 0; c < k; ++c) m[l * k + c] = root(a[l], k - 1 - c);
        const cplx den = determinant(m, k);
        sd.S(0, static_cast<Eigen::Index>(col)) = 1.0; // S_{I_0} = 1 identically
        for (std::size_t row = 1; row < N; ++row) {
            const Configuration& J = sd.vertices[row];
            for (int l = 0; l < k; ++l)
                for (int c = 0; c < k; ++c) m[l * k + c] = root(a[l], J[c]);
            sd.S(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = determinant(m, k) / den;
        }
    });

    const double nk = std::pow(static_cast<double>(n), k);
    sd.vmod.resize(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < N; ++i) sd.vmod(static_cast<Eigen::Index>(i)) = vandermonde_abs(sd.vertices[i]);
    sd.mu_h = sd.vmod.array().square() / nk;
    sd.h_l = sd.S.col(0).real();
    sd.h_r = sd.vmod * (sd.vmod(0) / nk);

    verify_spectral(sd);
    return sd;
}

void verify_spectral(const SpectralData& sd)
{
    const double tol = tolerances().num;
    const auto N = static_cast<Eigen::Index>(sd.size());
    if (sd.S.rows() != N || sd.S.cols() != N || sd.vmod.size() != N || sd.mu_h.size() != N || sd.h_l.size() != N ||
        sd.h_r.size() != N)
        throw ConsistencyError("spectral tables have inconsistent sizes" + where(sd));

    auto fail = [&](const std::string& what, double residual) {
        std::ostringstream os;
        os << what << where(sd) << ": residual " << residual;
        throw NumericalDegradation(os.str(), residual);
    };

    const double mass = sd.mu_h.sum();
    if (std::abs(mass - 1.0) > tol) fail("mu_h does not sum to 1", std::abs(mass - 1.0));
    if (std::abs(sd.h_l(0) - 1.0) > tol) fail("h_l(I_0) != 1", std::abs(sd.h_l(0) - 1.0));
    const double pairing = sd.h_l.dot(sd.h_r);
    if (std::abs(pairing - 1.0) > tol) fail("<h_l, h_r> != 1", std::abs(pairing - 1.0));

    for (Eigen::Index i = 0; i < N; ++i) {
        const double v = sd.vmod(i);
        const double r1 = std::abs(sd.vmod(0) * sd.h_l(i) - v);
        if (r1 > 1e-10 * std::max(1.0, v)) fail("|V_0| S_I(xi(I_0)) != |V(xi(I))|", r1);
        const double r2 = std::abs(sd.h_l(i) * sd.h_r(i) - sd.mu_h(i));
        if (r2 > tol) fail("h_l h_r != mu_h", r2);
        if (std::abs(sd.S(i, 0).imag()) > tol) fail("S_I(xi(I_0)) not real", std::abs(sd.S(i, 0).imag()));
    }

    // Perron bound, row-wise.
    for (Eigen::Index j = 0; j < N; ++j) {
        const double bound = sd.h_l(j) + tol * std::max(1.0, sd.h_l(j));
        const double worst = sd.S.row(j).cwiseAbs().maxCoeff();
        if (worst > bound) fail("Perron bound violated", worst - sd.h_l(j));
    }

    // Normalised Gram matrix sqrt(mu_h(I) mu_h(I')) (S^H S)(I,I') = delta.
    std::vector<Eigen::Index> cols;
    if (sd.size() <= full_orthogonality_limit) {
        for (Eigen::Index i = 0; i < N; ++i) cols.push_back(i);
    } else {
        const std::size_t step = sd.size() / orthogonality_sample;
        for (std::size_t s = 0; s < orthogonality_sample; ++s) cols.push_back(static_cast<Eigen::Index>(s * step));
    }
    Eigen::MatrixXcd sub(N, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = sd.S.col(cols[c]);
    const Eigen::MatrixXcd G = sd.S.adjoint() * sub;
    const Eigen::VectorXd root_mu = sd.mu_h.cwiseSqrt();
    double worst = 0;
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (Eigen::Index i = 0; i < N; ++i) {
            const cplx expected = (i == cols[c]) ? 1.0 : 0.0;
            const cplx got = G(i, static_cast<Eigen::Index>(c)) * root_mu(i) * root_mu(cols[c]);
            worst = std::max(worst, std::abs(got - expected));
        }
    if (worst > tol) fail("orthogonality relation violated", worst);
}

Eigen::MatrixXcd adjacency_raw(const Configuration& J, const SpectralData& sd)
{
    const auto j = static_cast<Eigen::Index>(sd.index(J));
    const Eigen::VectorXcd d = sd.mu_h.cast<cplx>().cwiseProduct(sd.S.row(j).transpose());
    return sd.S.conjugate() * d.asDiagonal() * sd.S.transpose();
}

StructureMatrix adjacency(const Configuration& J, const SpectralData& sd)
{
    const Eigen::MatrixXcd raw = adjacency_raw(J, sd);
    const Tolerances& tol = tolerances();
    StructureMatrix out;
    out.A.resize(raw.rows(), raw.cols());
    for (Eigen::Index c = 0; c < raw.cols(); ++c)
        for (Eigen::Index r = 0; r < raw.rows(); ++r) {
            const cplx z = raw(r, c);
            const double rounded = std::round(z.real());
            const double residual = std::max(std::abs(z.real() - rounded), std::abs(z.imag()));
            out.residual = std::max(out.residual, residual);
            if (z.real() < -tol.constant_clamp)
                throw NumericalDegradation("negative structure constant at (" + sd.vertices[r].str() + ", " +
                                               sd.vertices[c].str() + ")",
                                           -z.real());
            out.A(r, c) = std::max(0.0, rounded);
        }
    if (out.residual > tol.rounding)
        throw NumericalDegradation("structure constants of " + J.str() + " are not integral" + where(sd), out.residual);
    return out;
}

MarkovKernel markov_kernel(const Configuration& J, const SpectralData& sd)
{
    const StructureMatrix A = adjacency(J, sd);
    const double lambda = perron_eigenvalue(J, sd);
    MarkovKernel K{sd.h_r.cwiseInverse().asDiagonal() * A.A * sd.h_r.asDiagonal(), J};
    K.P /= lambda;
    const double tol = tolerances().num;
    for (Eigen::Index r = 0; r < K.P.rows(); ++r) {
        const double s = K.P.row(r).sum();
        if (std::abs(s - 1.0) > tol) throw NumericalDegradation("kernel row does not sum to 1", std::abs(s - 1.0));
    }
    return K;
}

MarkovKernel forward_kernel(const Configuration& J, const SpectralData& sd)
{
    MarkovKernel back = markov_kernel(J, sd);
    MarkovKernel K{sd.mu_h.cwiseInverse().asDiagonal() * back.P.transpose() * sd.mu_h.asDiagonal(), J};
    return K;
}

double perron_eigenvalue(const Configuration& J, const SpectralData& sd)
{
    return sd.h_l(static_cast<Eigen::Index>(sd.index(J)));
}

cplx stated_perron_sum(int k, int n)
{
    cplx s = 0;
    for (int a = 1; a <= k; ++a) s += std::polar(1.0, two_pi * (k + 1 - a) / n);
    return s;
}

std::vector<Configuration> sample_path(const MarkovKernel& kernel, const SpectralData& sd, const Configuration& start,
                                       int steps, std::uint64_t seed)
{
    if (steps < 0) throw std::invalid_argument("sample_path needs steps >= 0");
    if (kernel.P.rows() != static_cast<Eigen::Index>(sd.size()))
        throw std::invalid_argument("kernel and spectral data differ in size");
    std::size_t cur = sd.index(start);
    std::mt19937_64 rng(seed);
    std::vector<Configuration> path{start};
    path.reserve(static_cast<std::size_t>(steps) + 1);
    const Eigen::Index N = kernel.P.cols();
    for (int s = 0; s < steps; ++s) {
        // 53 random bits, independent of the standard library's distributions.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0;
        Eigen::Index next = -1;
        for (Eigen::Index j = 0; j < N; ++j) {
            const double p = kernel.P(static_cast<Eigen::Index>(cur), j);
            if (p <= 0) continue;
            acc += p;
            next = j;
            if (u < acc) break;
        }
        if (next < 0) throw ConsistencyError("kernel row without mass at " + sd.vertices[cur].str());
        cur = static_cast<std::size_t>(next);
        path.push_back(sd.vertices[cur]);
    }
    return path;
}

} // namespace bkn
