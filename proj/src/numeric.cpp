#include "bkn/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>
#include <utility>

namespace bkn {

Tolerances& tolerances()
{
    static Tolerances t;
    return t;
}

unsigned& thread_limit()
{
    static unsigned limit = 0;
    return limit;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f)
{
    unsigned workers = thread_limit() ? thread_limit() : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    // r * (n - k + i) is divisible by i at every step.
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

namespace {

template <class T>
T determinant_impl(std::vector<T>& a, int k)
{
    T det = T(1);
    for (int c = 0; c < k; ++c) {
        int piv = c;
        double best = std::abs(a[c * k + c]);
        for (int r = c + 1; r < k; ++r) {
            double v = std::abs(a[r * k + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return T(0);
        if (piv != c) {
            for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
            det = -det;
        }
        const T d = a[c * k + c];
        det *= d;
        for (int r = c + 1; r < k; ++r) {
            const T f = a[r * k + c] / d;
            if (f == T(0)) continue;
            for (int j = c + 1; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
        }
    }
    return det;
}

} // namespace

cplx determinant(std::vector<cplx>& a, int k) { return determinant_impl(a, k); }
double determinant(std::vector<double>& a, int k) { return determinant_impl(a, k); }

cplx ipow(cplx z, long m)
{
    cplx r = 1.0;
    while (m > 0) {
        if (m & 1) r *= z;
        z *= z;
        m >>= 1;
    }
    return r;
}

double wrap_angle(double x)
{
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    return r;
}

Fraction::Fraction(std::int64_t n, std::int64_t d)
{
    if (d == 0) throw std::domain_error("fraction with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
}

Fraction operator+(const Fraction& a, const Fraction& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Fraction operator-(const Fraction& a, const Fraction& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Fraction operator*(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }
Fraction operator/(const Fraction& a, const Fraction& b) { return {a.num * b.den, a.den * b.num}; }

} // namespace bkn
