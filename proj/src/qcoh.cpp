#include "bkn/qcoh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bkn {

CohomologyClass CohomologyClass::schubert(const Partition& lambda, int k, int n)
{
    if (!lambda.in_box(k, n)) throw std::invalid_argument("partition " + lambda.str() + " not in R_{k,n}");
    CohomologyClass c{k, n, {}};
    c.coeffs[lambda] = 1;
    return c;
}

std::optional<long> CohomologyClass::degree() const
{
    std::optional<long> d;
    for (const auto& [lambda, c] : coeffs) {
        if (c == 0) continue;
        if (d && *d != lambda.size()) return std::nullopt;
        d = lambda.size();
    }
    return d;
}

QuantumClass QuantumClass::lift(const CohomologyClass& x)
{
    QuantumClass q{x.k, x.n, {}};
    for (const auto& [lambda, c] : x.coeffs)
        if (c != 0) q.terms[{lambda, 0}] += c;
    return q;
}

CohomologyClass QuantumClass::collapse() const
{
    CohomologyClass c{k, n, {}};
    for (const auto& [key, v] : terms) c.coeffs[key.first] += v;
    return c;
}

QuantumClass pieri_multiply(const QuantumClass& x)
{
    QuantumClass out{x.k, x.n, {}};
    for (const auto& [key, c] : x.terms) {
        if (c == 0) continue;
        const auto& [lambda, d] = key;
        for (const Partition& mu : neighbors_partition_rule(lambda, x.k, x.n)) {
            // The wrap move removes n - 1 boxes net and carries one power of q.
            const long dq = (mu.size() == lambda.size() + 1) ? 0 : 1;
            out.terms[{mu, d + dq}] += c;
        }
    }
    return out;
}

QuantumClass pieri_multiply(const CohomologyClass& x) { return pieri_multiply(QuantumClass::lift(x)); }

VerlindeResult verlinde_product(const std::vector<Configuration>& factors, const SpectralData& sd)
{
    const auto N = static_cast<Eigen::Index>(sd.size());
    Eigen::VectorXcd theta = sd.mu_h.cast<cplx>();
    for (const Configuration& v : factors) {
        const auto j = static_cast<Eigen::Index>(sd.index(v));
        theta = theta.cwiseProduct(sd.S.row(j).transpose());
    }
    const Eigen::VectorXcd c = sd.S.conjugate() * theta;

    const Tolerances& tol = tolerances();
    VerlindeResult out;
    out.raw.resize(static_cast<std::size_t>(N));
    out.coeffs.resize(static_cast<std::size_t>(N));
    Eigen::Index worst = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
        const double r = std::round(c(i).real());
        const double res = std::max(std::abs(c(i).real() - r), std::abs(c(i).imag()));
        if (res > out.residual) {
            out.residual = res;
            worst = i;
        }
        if (c(i).real() < -tol.constant_clamp)
            throw NumericalDegradation("negative Verlinde coefficient at " + sd.vertices[i].str(), -c(i).real());
        out.raw[i] = c(i).real();
        out.coeffs[i] = static_cast<long long>(std::max(0.0, r));
    }
    if (out.residual > tol.rounding) {
        std::ostringstream os;
        os << "Verlinde coefficient at " << sd.vertices[worst].str() << " is " << c(worst) << ", not an integer";
        throw NumericalDegradation(os.str(), out.residual);
    }
    return out;
}

QLRResult qlr(const Partition& lambda, const Partition& mu, const SpectralData& sd)
{
    const Configuration a = from_partition(lambda, sd.k, sd.n);
    const Configuration b = from_partition(mu, sd.k, sd.n);
    const VerlindeResult v = verlinde_product({a, b}, sd);
    QLRResult out;
    const long total = lambda.size() + mu.size();
    for (std::size_t i = 0; i < sd.size(); ++i) {
        if (v.coeffs[i] == 0) continue;
        const Partition nu = to_partition(sd.vertices[i]);
        const long diff = total - nu.size();
        if (diff < 0 || diff % sd.n != 0)
            throw ConsistencyError("nonzero coefficient at " + nu.str() + " with non-integral degree");
        out[{nu, diff / sd.n}] = v.coeffs[i];
    }
    return out;
}

namespace {

long checked_degree(const CohomologyClass& M)
{
    const auto d = M.degree();
    if (!d) throw std::invalid_argument("class is empty or not homogeneous");
    for (const auto& [lambda, c] : M.coeffs)
        if (c < 0) throw std::invalid_argument("class has a negative coefficient at " + lambda.str());
    return *d;
}

} // namespace

double qdim(const CohomologyClass& M, const SpectralData& sd)
{
    checked_degree(M);
    double q = 0;
    for (const auto& [lambda, c] : M.coeffs) {
        const auto i = static_cast<Eigen::Index>(sd.index(from_partition(lambda, sd.k, sd.n)));
        q += static_cast<double>(c) * sd.h_l(i);
    }
    return q;
}

ClassStats class_stats(const CohomologyClass& M, const SpectralData& sd)
{
    const long d = checked_degree(M);
    ClassStats s;
    s.qdim = qdim(M, sd);
    s.p.assign(sd.size(), 0.0);
    const double centre = (static_cast<double>(d) + sd.k * (sd.k - 1) / 2.0) / sd.k;
    for (const auto& [lambda, c] : M.coeffs) {
        if (c == 0) continue;
        const Configuration I = from_partition(lambda, sd.k, sd.n);
        const std::size_t i = sd.index(I);
        const double p = static_cast<double>(c) * sd.h_l(static_cast<Eigen::Index>(i)) / s.qdim;
        s.p[i] = p;
        double t2 = 0, t3 = 0;
        for (int j = 0; j < sd.k; ++j) {
            const double x = I[j] - centre;
            t2 += x * x;
            t3 += x * x * x;
        }
        s.norm2_prob += p * t2;
        s.norm3_prob += p * t3;
    }
    s.norm2 = s.norm2_prob / s.qdim;
    s.norm3 = s.norm3_prob / s.qdim;
    return s;
}

std::vector<BigInt> multiply_exact(const std::vector<CohomologyClass>& factors, const SpectralData& sd)
{
    const std::size_t N = sd.size();
    std::vector<BigInt> v(N, 0);
    v[0] = 1; // sigma_empty
    const Partition box({1});

    std::vector<std::vector<std::size_t>> out_edges;
    std::map<Partition, Eigen::MatrixXd> structure;

    for (const CohomologyClass& f : factors) {
        if (f.k != sd.k || f.n != sd.n) throw std::invalid_argument("class and spectral data differ in (k, n)");
        std::vector<BigInt> next(N, 0);
        for (const auto& [lambda, c] : f.coeffs) {
            if (c == 0) continue;
            if (lambda == box && sd.k < sd.n) {
                if (out_edges.empty()) {
                    out_edges.resize(N);
                    for (std::size_t i = 0; i < N; ++i)
                        for (const Configuration& J : pieri_neighbors(sd.vertices[i])) out_edges[i].push_back(rank(J));
                }
                for (std::size_t i = 0; i < N; ++i) {
                    if (v[i] == 0) continue;
                    const BigInt t = c * v[i];
                    for (std::size_t j : out_edges[i]) next[j] += t;
                }
                continue;
            }
            auto it = structure.find(lambda);
            if (it == structure.end())
                it = structure.emplace(lambda, adjacency(from_partition(lambda, sd.k, sd.n), sd).A).first;
            const Eigen::MatrixXd& A = it->second;
            for (std::size_t i = 0; i < N; ++i) {
                if (v[i] == 0) continue;
                const BigInt t = c * v[i];
                for (std::size_t j = 0; j < N; ++j) {
                    const double a = A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
                    if (a != 0) next[j] += t * static_cast<long long>(a);
                }
            }
        }
        v = std::move(next);
    }
    return v;
}

CountResult enumerative_count(const std::vector<CohomologyClass>& classes, long d, const SpectralData& sd)
{
    if (classes.empty()) throw std::invalid_argument("enumerative_count needs at least one class");
    long total = 0;
    for (const CohomologyClass& c : classes) {
        const auto deg = c.degree();
        if (!deg) throw std::invalid_argument("enumerative_count needs homogeneous classes");
        total += *deg;
    }
    CountResult r;
    if (d < 0 || total != static_cast<long>(sd.k) * (sd.n - sd.k) + d * sd.n) {
        r.degree_mismatch = true;
        return r;
    }
    const std::vector<CohomologyClass> head(classes.begin(), classes.end() - 1);
    const std::vector<BigInt> prod = multiply_exact(head, sd);
    for (const auto& [lambda, a] : classes.back().coeffs) {
        if (a == 0) continue;
        const Configuration I = from_partition(lambda, sd.k, sd.n);
        r.count += a * prod[rank(dual(I))];
    }
    return r;
}

} // namespace bkn
