#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "bkn/numeric.hpp"

namespace bkn {

// Strictly decreasing integer k-tuple; an element of the infinite set B_k.
using Tuple = std::vector<long>;

// A k-subset of {0,...,n-1}, parts stored strictly decreasing.
class Configuration {
public:
    Configuration() = default;
    Configuration(std::vector<int> parts, int n);

    int k() const { return static_cast<int>(parts_.size()); }
    int n() const { return n_; }
    const std::vector<int>& parts() const { return parts_; }
    int operator[](std::size_t i) const { return parts_[i]; }
    long size() const;
    Tuple tuple() const { return Tuple(parts_.begin(), parts_.end()); }
    std::string str() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration& a, const Configuration& b)
    {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int n_ = 0;
};

// Weakly decreasing nonnegative parts, trailing zeros removed.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    long size() const;
    bool in_box(int k, int n) const; // membership in R_{k,n}
    std::vector<int> padded(int k) const;
    std::string str() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

// Point of T_k: k angles in [0, 2pi), weakly decreasing.
struct AnglePoint {
    std::vector<double> angles;

    int k() const { return static_cast<int>(angles.size()); }
    double total() const;
};

// Reduces every coordinate mod 2pi and sorts decreasingly.
AnglePoint make_angle_point(std::vector<double> raw);

std::vector<Configuration> enumerate(int k, int n);

// Position of I in enumerate(k, n); colex rank, O(k).
std::size_t rank(const Configuration& I);

Configuration ground(int k, int n);          // I_0 = (k-1, ..., 0)
Configuration pieri_generator(int k, int n); // I_1 = (k, k-2, ..., 0); needs k < n

std::vector<Configuration> neighbors_subset_rule(const Configuration& I);
std::vector<Partition> neighbors_partition_rule(const Partition& lambda, int k, int n);
// Out-neighbours of I, sorted. Both rules are evaluated and must coincide.
std::vector<Configuration> pieri_neighbors(const Configuration& I);

// lambda~ = (lambda_2 - 1, ..., lambda_k - 1, 0)
Partition wrap_move(const Partition& lambda, int k);

Partition to_partition(const Configuration& I);
Configuration from_partition(const Partition& lambda, int k, int n);

Configuration dual(const Configuration& I);      // (n - 1 - I_{k+1-j})_j
std::vector<Fraction> tilde(const Tuple& J);     // J - <J>/k
Tuple hat(const Tuple& J);                       // J - J_k 1
long tuple_size(const Tuple& J);
Fraction rho_norm2(int k);                       // ||I_0~||^2 = k(k^2-1)/12
Fraction K_exact(const std::vector<Fraction>& x);
double K_value(const std::vector<double>& x);    // ||x||^2 - ||I_0~||^2
double K_tilde(const Tuple& J);                  // K(J~)
long lambda_size(const Tuple& J);                // <J> - <I_0>

struct Shifts {
    long size;
    std::vector<Fraction> tilde;
    Tuple hat;
    Configuration dual;
};
Shifts shifts_and_dual(const Configuration& I);

// xi_n: angles (2pi/n)(I_j - (k-1)/2) mod 2pi, sorted decreasingly.
AnglePoint embed(const Configuration& I);
// Same formula for an arbitrary integer tuple; used for infinite-B_k indices.
AnglePoint embed_tuple(const Tuple& J, int n);

// u_i - angle mod 2pi, sorted. Callers pass the angle literally (for R_t with
// the 2pi t convention, pass 2 pi t).
AnglePoint rotate(const AnglePoint& u, double angle);

// Unique element of B_{k,n} with the same residues mod n as J.
Configuration reduce_mod_n(const Tuple& J, int n);

} // namespace bkn
