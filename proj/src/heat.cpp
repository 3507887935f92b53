#include "bkn/heat.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "bkn/schur.hpp"

namespace bkn {

namespace {

constexpr long max_series_terms = 4'000'000;

double superfactorial(int k) // prod_{j<k} j!
{
    double r = 1, f = 1;
    for (int j = 1; j < k; ++j) {
        f *= j;
        r *= f;
    }
    return r;
}

// Bound on sum over J_k = 0, J_1 - J_k = s of d_J^2 exp(-c K(J~)), using
// d_J <= s^{k(k-1)/2} / prod j!, ||J~||^2 >= s^2 / 2 and C(s-1, k-2) shapes.
double shell_bound(int k, double c, long s)
{
    const double rho2 = rho_norm2(k).value();
    const double e = k * (k - 1) / 2.0;
    const double logd = e * std::log(static_cast<double>(s)) - std::log(superfactorial(k));
    const double count = k == 2 ? 1.0 : std::exp(std::lgamma(s) - std::lgamma(k - 1) - std::lgamma(s - k + 2));
    return count * std::exp(2 * logd - c * (0.5 * s * s - rho2));
}

// Sum of shell_bound over s > S.
double shell_tail(int k, double c, long S)
{
    if (k == 1) return 0;
    double total = 0, prev = std::numeric_limits<double>::infinity();
    for (long s = S + 1;; ++s) {
        const double b = shell_bound(k, c, s);
        total += b;
        // Past the peak every later shell shrinks by a factor < 1/2 once
        // b <= prev / 2, so the remainder is at most b.
        if (b <= prev / 2 && b <= total * 1e-17) return total + b;
        if (b == 0 && s > S + 10) return total;
        prev = b;
    }
}

// All J with J_k = 0 and J_1 = s.
void shell(int k, long s, const std::function<void(const Tuple&)>& f)
{
    Tuple J(static_cast<std::size_t>(k), 0);
    if (k == 1) {
        if (s == 0) f(J);
        return;
    }
    J[0] = s;
    std::function<void(int, long)> rec = [&](int pos, long hi) {
        if (pos == k - 1) {
            f(J);
            return;
        }
        for (long x = hi - 1; x >= k - 1 - pos; --x) {
            J[static_cast<std::size_t>(pos)] = x;
            rec(pos + 1, x);
        }
    };
    rec(1, s);
}

class PowerTable {
public:
    PowerTable(const std::vector<double>& u, long max_exp) : k_(static_cast<int>(u.size())), stride_(max_exp + 1)
    {
        table_.resize(static_cast<std::size_t>(k_) * static_cast<std::size_t>(stride_));
        for (int l = 0; l < k_; ++l)
            for (long j = 0; j <= max_exp; ++j)
                table_[static_cast<std::size_t>(l * stride_ + j)] = std::polar(1.0, std::fmod(u[l] * j, two_pi));
    }

    cplx alternant(const Tuple& J) const
    {
        std::vector<cplx> m(static_cast<std::size_t>(k_) * k_);
        for (int l = 0; l < k_; ++l)
            for (int c = 0; c < k_; ++c) m[l * k_ + c] = table_[static_cast<std::size_t>(l * stride_ + J[c])];
        return determinant(m, k_);
    }

private:
    int k_;
    long stride_;
    std::vector<cplx> table_;
};

Tuple rho(int k)
{
    Tuple J(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) J[j] = k - 1 - j;
    return J;
}

// Sum over J with J_k = 0 of exp(-c K(J~)) weight(J) conj(S_J(u)) S_J(v), with
// |weight| <= weight_bound. Truncation chosen so the tail is below tol.
KernelEvaluation hat_series(const AnglePoint& u, const AnglePoint& v, double c, double weight_bound, double tol,
                            const std::function<cplx(const Tuple&)>& weight)
{
    const int k = u.k();
    if (v.k() != k) throw std::invalid_argument("kernel arguments differ in dimension");
    // Terms with J_1 <= S: C(S, k - 1).
    auto terms = [k](long S) {
        double r = 1;
        for (int j = 1; j < k; ++j) r *= static_cast<double>(S - k + 1 + j) / j;
        return r;
    };
    auto tail_at = [&](long S) { return shell_tail(k, c, S) * weight_bound; };
    long cap = k - 1, over = 2 * k;
    while (terms(over) <= max_series_terms) over *= 2;
    while (over - cap > 1) {
        const long mid = cap + (over - cap) / 2;
        (terms(mid) <= max_series_terms ? cap : over) = mid;
    }
    if (const double t = tail_at(cap); t > tol)
        throw TruncationFailure("heat kernel series needs more than the term cap (gamma t too small)", t);
    long lo = k - 2, S = k - 1; // tail_at(lo) > tol whenever lo >= k - 1
    while (tail_at(S) > tol) {
        lo = S;
        S = std::min(2 * S, cap);
    }
    while (S - lo > 1) {
        const long mid = lo + (S - lo) / 2;
        (tail_at(mid) > tol ? lo : S) = mid;
    }
    const double tail = tail_at(S);
    const PowerTable pu(u.angles, S), pv(v.angles, S);
    const Tuple r = rho(k);
    const cplx au = pu.alternant(r), av = pv.alternant(r);
    if (std::abs(au) < 1e-12 || std::abs(av) < 1e-12) throw SingularInput("heat kernel at coinciding angles");
    cplx sum = 0;
    for (long s = k - 1; s <= S; ++s)
        shell(k, s, [&](const Tuple& J) {
            const double w = std::exp(-c * K_tilde(J));
            sum += w * weight(J) * std::conj(pu.alternant(J) / au) * (pv.alternant(J) / av);
        });
    return KernelEvaluation{sum.real(), S, tail};
}

double vandermonde_modulus(const AnglePoint& u) { return std::abs(vandermonde(u)); }

} // namespace

double series_shell_tail(int k, double c, long S) { return shell_tail(k, c, S); }

void for_each_shell(int k, long s, const std::function<void(const Tuple&)>& f) { shell(k, s, f); }

double kappa(const Tuple& J, double alpha, double gamma)
{
    const double k = static_cast<double>(J.size());
    const double l = static_cast<double>(lambda_size(J));
    return gamma / k * K_tilde(J) + alpha / (k * k) * l * l;
}

double kappa(const Tuple& J)
{
    const double k = static_cast<double>(J.size());
    return kappa(J, k, k);
}

double dyson_fourier_multiplier(const Tuple& J, const HeatParams& p) { return std::exp(-kappa(J, p.alpha, p.gamma) * p.t); }

KernelEvaluation heat_kernel_suk(const AnglePoint& u, const AnglePoint& v, double gamma, double t, double tol)
{
    if (!(gamma > 0 && t > 0)) throw std::invalid_argument("SU(k) kernel needs gamma t > 0");
    const int k = u.k();
    if (k == 1) return KernelEvaluation{1.0, 0, 0};
    return hat_series(u, v, gamma * t / k, 1.0, tol, [](const Tuple&) { return cplx(1.0); });
}

KernelEvaluation heat_kernel_uk(const AnglePoint& u, const AnglePoint& v, const HeatParams& p, double tol)
{
    if (!(p.alpha > 0 && p.gamma >= 0 && p.t > 0)) throw std::invalid_argument("U(k) kernel needs alpha, t > 0");
    const int k = u.k();
    const double beta = p.alpha * p.t;        // coefficient of (l + x)^2
    const double phase = v.total() - u.total();
    const double I0 = k * (k - 1) / 2.0;

    // The l-sum is bounded by 1 + sqrt(pi / beta); its own truncation error is
    // kept below tol / 4 relative to the bound on the outer sum.
    const double lmult = 1.0 + std::sqrt(pi / beta);
    const double outer_mass = 1.0 + shell_tail(k, p.gamma * p.t / k, k - 1);
    const double leps = tol / (4.0 * outer_mass);
    long L = 1;
    while (2.0 * std::exp(-beta * L * L) / (1.0 - std::exp(-beta * (2.0 * L + 1))) > leps) ++L;

    auto weight = [&](const Tuple& J) {
        const double x = (static_cast<double>(tuple_size(J)) - I0) / k; // l + x
        const long centre = static_cast<long>(std::lround(-x));
        cplx s = 0;
        for (long l = centre - L; l <= centre + L; ++l) {
            const double y = l + x;
            s += std::exp(-beta * y * y) * std::polar(1.0, std::fmod(l * phase, two_pi));
        }
        return s;
    };
    if (k == 1) {
        const Tuple J{0};
        const cplx s = weight(J);
        return KernelEvaluation{s.real(), 0, leps};
    }
    KernelEvaluation e = hat_series(u, v, p.gamma * p.t / k, lmult, tol / 2, weight);
    e.tail_bound += leps * outer_mass;
    return e;
}

double determinantal_kernel_11(const AnglePoint& u, const AnglePoint& v, double t, int theta_terms)
{
    const int k = u.k();
    if (v.k() != k) throw std::invalid_argument("kernel arguments differ in dimension");
    if (!(t > 0) || theta_terms < 1) throw std::invalid_argument("determinantal kernel needs t > 0, theta_terms >= 1");
    const double vu = vandermonde_modulus(u);
    if (vu < 1e-12) throw SingularInput("determinantal kernel at a start point with coinciding angles");
    const double norm = std::sqrt(k / (two_pi * t));
    auto P = [&](double a, double b) {
        double s = 0;
        for (int l = -theta_terms; l <= theta_terms; ++l) {
            const double sign = ((static_cast<long>(l) * (k + 1)) % 2 == 0) ? 1.0 : -1.0;
            const double d = b - a + two_pi * l;
            s += sign * std::exp(-k * d * d / (2 * t));
        }
        return norm * s;
    };
    std::vector<double> m(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i * k + j] = P(u.angles[i], v.angles[j]);
    return vandermonde_modulus(v) / vu * determinant(m, k);
}

double determinantal_as_series_density(const AnglePoint& u, const AnglePoint& v, double t, int theta_terms)
{
    const int k = u.k();
    const double vv = vandermonde_modulus(v);
    if (vv < 1e-12) throw SingularInput("density at an end point with coinciding angles");
    return std::pow(two_pi, k) * std::exp(rho_norm2(k).value() * t / k) * determinantal_kernel_11(u, v, 2 * t, theta_terms) /
           (vv * vv);
}

} // namespace bkn
