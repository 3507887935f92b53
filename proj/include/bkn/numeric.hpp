#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkn {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double pi = 3.141592653589793238462643383279;

// Process-wide tolerances. Set once at startup (the CLI does this from flags);
// treated as read-only afterwards.
struct Tolerances {
    double num = 1e-9;            // complex comparisons in cross-identity checks
    double rounding = 1e-6;       // distance to nearest integer for structure constants
    double measure_clamp = 1e-9;  // negative weights above -measure_clamp are clamped to 0
    double constant_clamp = 1e-6; // same, for rounded structure constants
};

Tolerances& tolerances();

// Upper bound on worker threads used by parallel_for; 0 means hardware concurrency.
unsigned& thread_limit();

// Runs f(i) for i in [0, count) across workers. Each index is handled by exactly
// one call, so writes to disjoint slots stay deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeError : public Error {
public:
    SizeError(const std::string& what, std::uint64_t count) : Error(what), count(count) {}
    std::uint64_t count;
};

class SingularInput : public Error {
public:
    using Error::Error;
};

class NumericalDegradation : public Error {
public:
    NumericalDegradation(const std::string& what, double residual) : Error(what), residual(residual) {}
    double residual;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class TruncationFailure : public Error {
public:
    TruncationFailure(const std::string& what, double achieved) : Error(what), achieved(achieved) {}
    double achieved;
};

std::uint64_t binomial(int n, int k);

// Determinant of a k x k row-major complex matrix by Gaussian elimination with
// partial pivoting. The input is consumed.
cplx determinant(std::vector<cplx>& a, int k);
double determinant(std::vector<double>& a, int k);

// z^m by repeated squaring, m >= 0.
cplx ipow(cplx z, long m);

// Reduce an angle to [0, 2pi).
double wrap_angle(double x);

// Exact fraction with positive denominator in lowest terms.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d = 1);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend Fraction operator+(const Fraction& a, const Fraction& b);
    friend Fraction operator-(const Fraction& a, const Fraction& b);
    friend Fraction operator*(const Fraction& a, const Fraction& b);
    friend Fraction operator/(const Fraction& a, const Fraction& b);
    friend bool operator==(const Fraction& a, const Fraction& b) = default;
};

} // namespace bkn
