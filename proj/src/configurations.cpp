#include "bkn/configurations.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bkn {

namespace {

std::string join(const std::vector<int>& v)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

} // namespace

Configuration::Configuration(std::vector<int> parts, int n) : parts_(std::move(parts)), n_(n)
{
    const int k = static_cast<int>(parts_.size());
    if (n <= 0 || k <= 0 || k > n)
        throw std::invalid_argument("configuration needs 1 <= k <= n, got k=" + std::to_string(k) +
                                    " n=" + std::to_string(n));
    for (int i = 0; i < k; ++i) {
        if (parts_[i] < 0 || parts_[i] > n - 1)
            throw std::invalid_argument("configuration part out of [0, n-1]: " + join(parts_));
        if (i > 0 && parts_[i - 1] <= parts_[i])
            throw std::invalid_argument("configuration parts must be strictly decreasing: " + join(parts_));
    }
}

long Configuration::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

std::string Configuration::str() const { return join(parts_); }

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw std::invalid_argument("partition with negative part: " + join(parts_));
        if (i > 0 && parts_[i - 1] < parts_[i])
            throw std::invalid_argument("partition parts must be weakly decreasing: " + join(parts_));
    }
}

long Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

bool Partition::in_box(int k, int n) const
{
    return length() <= k && (parts_.empty() || parts_[0] <= n - k);
}

std::vector<int> Partition::padded(int k) const
{
    std::vector<int> out(k, 0);
    for (int i = 0; i < std::min(k, length()); ++i) out[i] = parts_[i];
    return out;
}

std::string Partition::str() const { return join(parts_); }

double AnglePoint::total() const { return std::accumulate(angles.begin(), angles.end(), 0.0); }

AnglePoint make_angle_point(std::vector<double> raw)
{
    for (double& a : raw) a = wrap_angle(a);
    std::sort(raw.begin(), raw.end(), std::greater<>());
    return AnglePoint{std::move(raw)};
}

std::vector<Configuration> enumerate(int k, int n)
{
    if (k <= 0 || n <= 0 || k > n)
        throw std::invalid_argument("enumerate needs 1 <= k <= n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
    std::vector<Configuration> out;
    out.reserve(binomial(n, k));
    // Colex order on increasing subsets equals lex order on the decreasing tuples.
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.emplace_back(std::vector<int>(c.rbegin(), c.rend()), n);
        int j = 0;
        while (j < k - 1 && c[j] + 1 == c[j + 1]) {
            c[j] = j;
            ++j;
        }
        if (c[j] + 1 > n - 1) break;
        ++c[j];
    }
    return out;
}

std::size_t rank(const Configuration& I)
{
    std::size_t r = 0;
    const int k = I.k();
    for (int j = 0; j < k; ++j) r += binomial(I[j], k - j);
    return r;
}

Configuration ground(int k, int n)
{
    std::vector<int> p(k);
    for (int j = 0; j < k; ++j) p[j] = k - 1 - j;
    return Configuration(p, n);
}

Configuration pieri_generator(int k, int n)
{
    if (k >= n) throw std::invalid_argument("I_1 needs k < n");
    std::vector<int> p(k);
    for (int j = 0; j < k; ++j) p[j] = k - 1 - j;
    p[0] = k;
    return Configuration(p, n);
}

std::vector<Configuration> neighbors_subset_rule(const Configuration& I)
{
    const int n = I.n();
    const long target = ((I.size() + 1) % n + n) % n;
    std::vector<bool> occupied(n, false);
    for (int p : I.parts()) occupied[p] = true;
    std::vector<Configuration> out;
    for (int a : I.parts()) {
        for (int b = 0; b < n; ++b) {
            if (occupied[b]) continue;
            std::vector<int> parts;
            for (int p : I.parts())
                if (p != a) parts.push_back(p);
            parts.push_back(b);
            std::sort(parts.begin(), parts.end(), std::greater<>());
            Configuration J(parts, n);
            if ((J.size() % n + n) % n == target) out.push_back(J);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Partition wrap_move(const Partition& lambda, int k)
{
    std::vector<int> p = lambda.padded(k);
    std::vector<int> out(k, 0);
    for (int i = 1; i < k; ++i) out[i - 1] = p[i] - 1;
    return Partition(out);
}

std::vector<Partition> neighbors_partition_rule(const Partition& lambda, int k, int n)
{
    if (!lambda.in_box(k, n)) throw std::invalid_argument("partition outside R_{k,n}: " + lambda.str());
    std::vector<int> p = lambda.padded(k);
    std::vector<Partition> out;
    for (int i = 0; i < k; ++i) {
        if (p[i] + 1 > n - k) continue;
        if (i > 0 && p[i - 1] < p[i] + 1) continue;
        std::vector<int> q = p;
        ++q[i];
        out.emplace_back(q);
    }
    if (k > 0 && p[0] == n - k && p[k - 1] > 0) out.push_back(wrap_move(lambda, k));
    return out;
}

std::vector<Configuration> pieri_neighbors(const Configuration& I)
{
    std::vector<Configuration> subset = neighbors_subset_rule(I);
    std::vector<Configuration> pieri;
    for (const Partition& mu : neighbors_partition_rule(to_partition(I), I.k(), I.n()))
        pieri.push_back(from_partition(mu, I.k(), I.n()));
    std::sort(pieri.begin(), pieri.end());
    if (pieri != subset) throw ConsistencyError("edge rule and Pieri rule disagree at " + I.str());
    return subset;
}

Partition to_partition(const Configuration& I)
{
    std::vector<int> p(I.k());
    for (int j = 0; j < I.k(); ++j) p[j] = I[j] - (I.k() - 1 - j);
    return Partition(p);
}

Configuration from_partition(const Partition& lambda, int k, int n)
{
    if (!lambda.in_box(k, n))
        throw std::invalid_argument("partition " + lambda.str() + " not in R_{" + std::to_string(k) + "," +
                                    std::to_string(n) + "}");
    std::vector<int> p = lambda.padded(k);
    for (int j = 0; j < k; ++j) p[j] += k - 1 - j;
    return Configuration(p, n);
}

Configuration dual(const Configuration& I)
{
    const int k = I.k();
    std::vector<int> p(k);
    for (int j = 0; j < k; ++j) p[j] = I.n() - 1 - I[k - 1 - j];
    return Configuration(p, I.n());
}

long tuple_size(const Tuple& J) { return std::accumulate(J.begin(), J.end(), 0L); }

std::vector<Fraction> tilde(const Tuple& J)
{
    const long k = static_cast<long>(J.size());
    const long s = tuple_size(J);
    std::vector<Fraction> out;
    for (long x : J) out.emplace_back(k * x - s, k);
    return out;
}

Tuple hat(const Tuple& J)
{
    Tuple out = J;
    for (long& x : out) x -= J.back();
    return out;
}

Fraction rho_norm2(int k) { return Fraction(static_cast<std::int64_t>(k) * (k * k - 1), 12); }

Fraction K_exact(const std::vector<Fraction>& x)
{
    Fraction s(0);
    for (const Fraction& v : x) s = s + v * v;
    return s - rho_norm2(static_cast<int>(x.size()));
}

double K_value(const std::vector<double>& x)
{
    double s = 0;
    for (double v : x) s += v * v;
    return s - rho_norm2(static_cast<int>(x.size())).value();
}

double K_tilde(const Tuple& J) { return K_exact(tilde(J)).value(); }

long lambda_size(const Tuple& J)
{
    const long k = static_cast<long>(J.size());
    return tuple_size(J) - k * (k - 1) / 2;
}

Shifts shifts_and_dual(const Configuration& I)
{
    return Shifts{I.size(), tilde(I.tuple()), hat(I.tuple()), dual(I)};
}

AnglePoint embed_tuple(const Tuple& J, int n)
{
    const double shift = (static_cast<double>(J.size()) - 1.0) / 2.0;
    std::vector<double> a;
    a.reserve(J.size());
    // Reduce the integer part mod n first so large J keep full precision.
    for (long x : J) {
        const long r = ((x % n) + n) % n;
        a.push_back(two_pi / n * (static_cast<double>(r) - shift));
    }
    return make_angle_point(std::move(a));
}

AnglePoint embed(const Configuration& I) { return embed_tuple(I.tuple(), I.n()); }

AnglePoint rotate(const AnglePoint& u, double angle)
{
    std::vector<double> a = u.angles;
    for (double& x : a) x -= angle;
    return make_angle_point(std::move(a));
}

Configuration reduce_mod_n(const Tuple& J, int n)
{
    std::vector<int> r;
    for (long x : J) r.push_back(static_cast<int>(((x % n) + n) % n));
    std::sort(r.begin(), r.end(), std::greater<>());
    if (std::adjacent_find(r.begin(), r.end()) != r.end())
        throw std::invalid_argument("tuple has repeated residues mod n");
    return Configuration(r, n);
}

} // namespace bkn
