#include "bkn/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace bkn {

MeasureSequence MeasureSequence::repeat(const HMeasure& mu, long m)
{
    MeasureSequence s;
    if (m > 0) s.runs.emplace_back(mu, m);
    return s;
}

long MeasureSequence::length() const
{
    long m = 0;
    for (const auto& r : runs) m += r.second;
    return m;
}

SequenceStats sequence_stats(const MeasureSequence& seq, const SpectralData& sd)
{
    SequenceStats s;
    s.k = sd.k;
    s.n = sd.n;
    s.m = seq.length();
    if (s.m == 0) throw std::invalid_argument("statistics of an empty sequence");
    std::vector<MomentSummary> per;
    per.reserve(static_cast<std::size_t>(s.m));
    for (const auto& [mu, mult] : seq.runs) {
        const MomentSummary x = moments(mu, sd);
        for (long i = 0; i < mult; ++i) per.push_back(x);
    }
    s.agg = aggregate(per, sd.k);

    const double k = sd.k;
    const double kk1 = k * k - 1;
    s.alpha = s.agg.var2 / 2;
    s.alpha_simplified = s.agg.var2 / (2 * k * k);
    s.gamma = kk1 > 0 ? k * s.agg.K / (2 * kk1) : 0;
    s.gamma_simplified = kk1 > 0 ? k * s.agg.norm2 / (2 * kk1) : 0;
    s.gamma_local_limit = kk1 > 0 ? k * s.agg.norm2 / kk1 : 0;
    s.t0 = two_pi * two_pi * static_cast<double>(s.m) / (static_cast<double>(sd.n) * sd.n);
    s.M_var = s.agg.var2 > 0 ? s.agg.var3 / std::pow(s.agg.var2, 1.5) : 0;
    s.M_hat = s.agg.K > 0 ? s.agg.hat3 / std::pow(s.agg.K, 1.5) : 0;
    s.M = std::max(s.M_var, s.M_hat);
    s.M_simplified = s.agg.norm2 > 0 ? s.agg.norm3 / (k * k * k * std::pow(s.agg.norm2, 1.5)) : 0;
    return s;
}

double gamma_of(const SequenceStats& s, GammaConvention c)
{
    switch (c) {
    case GammaConvention::centred_K: return s.gamma;
    case GammaConvention::simplified_norm: return s.gamma_simplified;
    case GammaConvention::local_limit_norm: return s.gamma_local_limit;
    }
    return s.gamma;
}

namespace {

double tilde_inf(const Tuple& J)
{
    const double k = static_cast<double>(J.size());
    const double mean = static_cast<double>(tuple_size(J)) / k;
    double m = 0;
    for (long x : J) m = std::max(m, std::abs(x - mean));
    return m;
}

} // namespace

Tuple centred_representative(const Configuration& Jn)
{
    const int k = Jn.k(), n = Jn.n();
    Tuple best;
    double best_inf = std::numeric_limits<double>::infinity();
    long best_lambda = std::numeric_limits<long>::max();
    for (int r = 0; r < k; ++r) {
        Tuple J;
        for (int j = r; j < k; ++j) J.push_back(Jn[j]);
        for (int j = 0; j < r; ++j) J.push_back(Jn[j] - n);
        // Shifting by n 1 keeps the residues; pick the shift closest to <lambda> = 0.
        const long lam = lambda_size(J);
        const long q = static_cast<long>(std::lround(-static_cast<double>(lam) / (static_cast<double>(k) * n)));
        for (long& x : J) x += q * n;
        const double inf = tilde_inf(J);
        const long al = std::labs(lambda_size(J));
        if (inf < best_inf - 1e-12 || (std::abs(inf - best_inf) <= 1e-12 && al < best_lambda)) {
            best = J;
            best_inf = inf;
            best_lambda = al;
        }
    }
    return best;
}

std::optional<std::pair<std::size_t, int>> reduce_with_sign(const Tuple& J, int n)
{
    const int k = static_cast<int>(J.size());
    std::vector<int> r(static_cast<std::size_t>(k));
    long wraps = 0;
    for (int j = 0; j < k; ++j) {
        const long q = (J[j] >= 0) ? J[j] / n : -((-J[j] + n - 1) / n);
        r[j] = static_cast<int>(J[j] - q * n);
        wraps += q;
    }
    // e^{i u (x + n)} = (-1)^{k-1} e^{i u x} at every grid point.
    int sign = ((k - 1) % 2 == 1 && (wraps % 2 != 0)) ? -1 : 1;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            if (r[a] == r[b]) return std::nullopt;
            if (r[a] < r[b]) sign = -sign;
        }
    std::sort(r.begin(), r.end(), std::greater<>());
    return std::make_pair(rank(Configuration(r, n)), sign);
}

FourierWindow fourier_window(const SequenceStats& s, double c)
{
    FourierWindow w;
    const double m13 = std::cbrt(static_cast<double>(s.m));
    const double M13 = std::cbrt(s.M);
    const double inf = std::numeric_limits<double>::infinity();
    w.max_tilde_inf = (s.agg.K > 0 && s.M > 0) ? c * s.n / (m13 * M13 * std::sqrt(s.agg.K)) : inf;
    w.max_lambda = (s.agg.var2 > 0 && s.M > 0) ? c * s.k * s.n / (m13 * M13 * std::sqrt(s.agg.var2)) : inf;
    return w;
}

namespace {

FourierDecay decay_at(const SequenceStats& s, const FourierWindow& w, const Configuration& Jn, cplx actual)
{
    FourierDecay out;
    out.representative = centred_representative(Jn);
    const double k = s.k, n = s.n;
    const double lam = static_cast<double>(lambda_size(out.representative));
    const double Kt = K_tilde(out.representative);
    const double total_shift = static_cast<double>(s.m) * s.agg.mean; // m <m>
    const double expo = static_cast<double>(s.m) * two_pi * two_pi / (2 * n * n) *
                        ((k > 1 ? s.agg.K * Kt / (k * k - 1) : 0.0) + s.agg.var2 * lam * lam / (k * k));
    // Reduce m<m><lambda_J> mod kn before scaling to keep the phase exact.
    const double phase_num = std::fmod(total_shift * lam, k * n);
    out.predicted = std::polar(std::exp(-expo), two_pi * phase_num / (k * n));
    out.actual = actual;
    out.error = std::abs(out.actual - out.predicted);
    out.in_window = tilde_inf(out.representative) <= w.max_tilde_inf && std::abs(lam) <= w.max_lambda;
    return out;
}

} // namespace

FourierDecay fourier_decay_check(const MeasureSequence& seq, const Configuration& Jn, const SpectralData& sd,
                                 double window_c)
{
    const SequenceStats s = sequence_stats(seq, sd);
    const auto j = static_cast<Eigen::Index>(sd.index(Jn));
    cplx actual = 1.0;
    for (const auto& [mu, mult] : seq.runs) actual *= ipow(fourier(mu, sd)(j), mult);
    return decay_at(s, fourier_window(s, window_c), Jn, actual);
}

std::vector<FourierDecay> fourier_decay_scan(const MeasureSequence& seq, const SpectralData& sd, double window_c)
{
    const SequenceStats s = sequence_stats(seq, sd);
    const FourierWindow w = fourier_window(s, window_c);
    FourierCoeffs actual = FourierCoeffs::Ones(static_cast<Eigen::Index>(sd.size()));
    for (const auto& [mu, mult] : seq.runs) {
        const FourierCoeffs phi = fourier(mu, sd);
        for (Eigen::Index j = 0; j < actual.size(); ++j) actual(j) *= ipow(phi(j), mult);
    }
    std::vector<FourierDecay> out;
    out.reserve(sd.size());
    for (std::size_t i = 0; i < sd.size(); ++i)
        out.push_back(decay_at(s, w, sd.vertices[i], actual(static_cast<Eigen::Index>(i))));
    return out;
}

namespace {

Eigen::VectorXd sequence_law(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd)
{
    FourierCoeffs acc = fourier(HMeasure::dirac(I, sd), sd);
    for (const auto& [mu, mult] : seq.runs) {
        const FourierCoeffs phi = fourier(mu, sd);
        for (Eigen::Index j = 0; j < acc.size(); ++j) acc(j) *= ipow(phi(j), mult);
    }
    return inverse_fourier(acc, sd).weights;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

struct Edge {
    std::size_t to;
    double weight;
};

// Out-edges I -> I' of one step by mu, weights c^{I'}_{J,I} mu(J) h_l(I') / (h_l(J) h_l(I)).
std::vector<std::vector<Edge>> step_edges(const HMeasure& mu, const SpectralData& sd)
{
    const std::size_t N = sd.size();
    std::vector<std::map<std::size_t, double>> acc(N);
    const Configuration I1 = sd.k < sd.n ? pieri_generator(sd.k, sd.n) : ground(sd.k, sd.n);
    for (std::size_t j = 0; j < N; ++j) {
        const double w = mu[j];
        if (w == 0) continue;
        const double hj = sd.h_l(static_cast<Eigen::Index>(j));
        if (sd.vertices[j] == ground(sd.k, sd.n)) {
            for (std::size_t i = 0; i < N; ++i) acc[i][i] += w;
            continue;
        }
        if (sd.vertices[j] == I1) {
            for (std::size_t i = 0; i < N; ++i)
                for (const Configuration& t : pieri_neighbors(sd.vertices[i])) {
                    const std::size_t to = rank(t);
                    acc[i][to] += w * sd.h_l(static_cast<Eigen::Index>(to)) / (hj * sd.h_l(static_cast<Eigen::Index>(i)));
                }
            continue;
        }
        const Eigen::MatrixXd A = adjacency(sd.vertices[j], sd).A;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t to = 0; to < N; ++to) {
                const double c = A(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(i));
                if (c != 0)
                    acc[i][to] += w * c * sd.h_l(static_cast<Eigen::Index>(to)) / (hj * sd.h_l(static_cast<Eigen::Index>(i)));
            }
    }
    std::vector<std::vector<Edge>> out(N);
    for (std::size_t i = 0; i < N; ++i)
        for (const auto& [to, w] : acc[i]) out[i].push_back({to, w});
    return out;
}

} // namespace

Eigen::VectorXd propagate_law(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd)
{
    const auto N = static_cast<Eigen::Index>(sd.size());
    Eigen::VectorXd p = Eigen::VectorXd::Zero(N);
    p(static_cast<Eigen::Index>(sd.index(I))) = 1;
    for (const auto& [mu, mult] : seq.runs) {
        const auto edges = step_edges(mu, sd);
        for (long step = 0; step < mult; ++step) {
            Eigen::VectorXd next = Eigen::VectorXd::Zero(N);
            for (Eigen::Index i = 0; i < N; ++i) {
                if (p(i) == 0) continue;
                for (const Edge& e : edges[static_cast<std::size_t>(i)]) next(static_cast<Eigen::Index>(e.to)) += p(i) * e.weight;
            }
            p = std::move(next);
        }
    }
    return p;
}

LocalLimitReport local_limit_check(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd,
                                   GammaConvention conv)
{
    for (const auto& run : seq.runs)
        if (moments(run.first, sd).var2 > 1e-9) throw std::invalid_argument("local limit check needs Var_2 = 0 measures");
    LocalLimitReport rep;
    const long n = sd.n;
    const long size_I = I.size();
    if (seq.length() == 0) {
        rep.supported_residue = mod(size_I, n);
        rep.proof_residue = rep.supported_residue;
        rep.stated_residue = rep.supported_residue;
        return rep;
    }
    rep.stats = sequence_stats(seq, sd);
    const Eigen::VectorXd p = propagate_law(seq, I, sd);
    const Eigen::VectorXd pf = sequence_law(seq, I, sd);
    rep.route_deviation = (p - pf).cwiseAbs().maxCoeff();

    std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < sd.size(); ++i)
        mass[static_cast<std::size_t>(mod(sd.vertices[i].size(), n))] += p(static_cast<Eigen::Index>(i));
    rep.supported_residue = std::max_element(mass.begin(), mass.end()) - mass.begin();

    const long shift_steps = std::lround(static_cast<double>(rep.stats.m) * rep.stats.agg.mean); // m <m>
    rep.proof_residue = mod(size_I + shift_steps, n);
    if (shift_steps % sd.k == 0) rep.stated_residue = mod(size_I + shift_steps / sd.k, n);
    rep.shift = two_pi * static_cast<double>(mod(shift_steps, static_cast<long>(sd.k) * n)) / (sd.k * static_cast<double>(n));

    const AnglePoint v = rotate(embed(I), -rep.shift);
    const double gamma = gamma_of(rep.stats, conv), t0 = rep.stats.t0;
    double sum_err = 0;
    long count = 0;
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        const Configuration& target = sd.vertices[i];
        const double lhs = p(ii) / (sd.mu_h(ii) * static_cast<double>(n));
        const long residue = mod(target.size(), n);
        if (residue != rep.supported_residue) {
            rep.off_class_mass += std::abs(p(ii));
            rep.off_class_mass_fourier += std::abs(pf(ii));
            rep.sup_error = std::max(rep.sup_error, std::abs(lhs));
            continue;
        }
        double rhs = 0;
        if (residue == rep.proof_residue) {
            const KernelEvaluation e = heat_kernel_suk(embed(target), v, gamma, t0);
            rhs = e.value;
            rep.kernel_radius = std::max(rep.kernel_radius, e.truncation_radius);
        }
        const double err = std::abs(lhs - rhs);
        rep.sup_error = std::max(rep.sup_error, err);
        sum_err += err;
        ++count;
        rep.rows.push_back({target, lhs, rhs});
    }
    rep.mean_error = count ? sum_err / static_cast<double>(count) : 0;
    return rep;
}

WassersteinBound wasserstein_upper_bound(const CoefficientFunction& c1, const CoefficientFunction& c2, int k,
                                         const std::vector<double>& t_grid, double coeff_bound, double tol)
{
    if (t_grid.empty()) throw std::invalid_argument("Wasserstein bound needs a nonempty time grid");
    const double rho2 = rho_norm2(k).value();
    const double I0 = k * (k - 1) / 2.0;
    const double cb2 = coeff_bound * coeff_bound;

    // |c1 - c2|^2 at each J is independent of t; memoise across the grid.
    std::map<Tuple, double> diff;
    auto diff2 = [&](const Tuple& J) {
        auto it = diff.find(J);
        if (it != diff.end()) return it->second;
        const double d = std::norm(c1(J) - c2(J));
        diff.emplace(J, d);
        return d;
    };

    WassersteinBound best;
    best.bound = std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        if (!(t > 0)) throw std::invalid_argument("Wasserstein time grid must be positive");
        const double lmult = 1.0 + std::sqrt(pi / (2 * t * k));
        long S = k - 1;
        auto shell_part = [&](long s) {
            const double kmin = 0.5 * s * s - rho2;
            if (kmin < 1) return std::numeric_limits<double>::infinity();
            return cb2 / kmin * lmult * series_shell_tail(k, 2 * t, s);
        };
        while (shell_part(S) > tol / 2) ++S;
        const double outer = cb2 * (1.0 + series_shell_tail(k, 2 * t, k - 1));
        long L = 1;
        auto ltail = [&](long L) {
            const double b = 2 * t * k;
            return outer * 2 * std::exp(-b * L * L) / (1 - std::exp(-b * (2.0 * L + 1))) / (k * double(L) * L);
        };
        while (ltail(L) > tol / 2) ++L;
        const double tail = shell_part(S) + ltail(L);

        double sum = 0;
        for (long s = k - 1; s <= S; ++s)
            for_each_shell(k, s, [&](const Tuple& Jh) {
                const double x = (static_cast<double>(tuple_size(Jh)) - I0) / k;
                const long lo = static_cast<long>(std::ceil(-x - L)), hi = static_cast<long>(std::floor(-x + L));
                Tuple J = Jh;
                for (long l = lo; l <= hi; ++l) {
                    for (int j = 0; j < k; ++j) J[j] = Jh[j] + l;
                    const double kap = kappa(J);
                    if (kap < 1e-12) continue; // J = I_0
                    sum += std::exp(-2 * kap * t) / kap * diff2(J);
                }
            });
        const double value = 2 * std::sqrt(2 * t) * k + std::sqrt(sum + tail);
        if (value < best.bound) {
            best.bound = value;
            best.best_t = t;
            best.tail_bound = tail;
            best.radius = S;
        }
    }
    return best;
}

BerryEsseenReport berry_esseen_check(const MeasureSequence& seq, const Configuration& I, const SpectralData& sd,
                                     const std::vector<double>& t_grid)
{
    BerryEsseenReport rep;
    rep.stats = sequence_stats(seq, sd);
    const Eigen::VectorXd p = sequence_law(seq, I, sd);
    const Eigen::VectorXcd Sp = sd.S * p.cast<cplx>(); // E[S_J(xi(I'))] for J in B_{k,n}
    const auto iI = static_cast<Eigen::Index>(sd.index(I));
    const int k = sd.k;
    const double kn = static_cast<double>(k) * sd.n;
    const long shift_steps = std::lround(static_cast<double>(rep.stats.m) * rep.stats.agg.mean);
    const double shift_mod = static_cast<double>(((shift_steps % (k * sd.n)) + k * sd.n) % (k * sd.n));
    const HeatParams hp{rep.stats.alpha, rep.stats.gamma, rep.stats.t0};

    CoefficientFunction discrete = [&](const Tuple& J) -> cplx {
        const auto r = reduce_with_sign(J, sd.n);
        if (!r) return 0.0;
        // R_theta with theta = 2 pi m<m>/(kn) multiplies S_J by e^{-i theta <lambda_J>}.
        const double lam = static_cast<double>(lambda_size(J) % static_cast<long>(kn));
        const double phase = -two_pi * std::fmod(shift_mod * lam, kn) / kn;
        return std::polar(static_cast<double>(r->second), phase) * Sp(static_cast<Eigen::Index>(r->first));
    };
    CoefficientFunction brownian = [&](const Tuple& J) -> cplx {
        const auto r = reduce_with_sign(J, sd.n);
        if (!r) return 0.0;
        return dyson_fourier_multiplier(J, hp) * static_cast<double>(r->second) *
               sd.S(static_cast<Eigen::Index>(r->first), iI);
    };
    rep.w = wasserstein_upper_bound(discrete, brownian, k, t_grid);
    return rep;
}

double log_big(const BigInt& x)
{
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(x);
    if (bits < 900) return std::log(x.convert_to<double>());
    const std::size_t drop = bits - 60;
    const BigInt top = x >> drop;
    return std::log(top.convert_to<double>()) + static_cast<double>(drop) * std::log(2.0);
}

CorollaryReport corollary_check(const std::vector<CohomologyClass>& classes, const SpectralData& sd)
{
    if (classes.size() < 2) throw std::invalid_argument("corollary check needs at least the two end classes");
    CorollaryReport rep;
    const int k = sd.k, n = sd.n;
    long total = 0;
    for (const CohomologyClass& c : classes) {
        const auto deg = c.degree();
        if (!deg) throw std::invalid_argument("corollary check needs homogeneous classes");
        total += *deg;
    }
    const long excess = total - static_cast<long>(k) * (n - k);
    if (excess < 0 || excess % n != 0) {
        rep.degree_mismatch = true;
        return rep;
    }
    rep.d = excess / n;
    const CountResult cnt = enumerative_count(classes, rep.d, sd);
    rep.exact = cnt.count;
    rep.log_exact = log_big(cnt.count);

    // Middle classes become h-measures p^{M_i}; equal neighbours share a run.
    MeasureSequence seq;
    long middle_degree = 0;
    double log_qdim = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const ClassStats st = class_stats(classes[i], sd);
        log_qdim += std::log(st.qdim);
        if (i == 0 || i + 1 == classes.size()) continue;
        middle_degree += *classes[i].degree();
        if (!seq.runs.empty() && classes[i].coeffs == classes[i - 1].coeffs) {
            ++seq.runs.back().second;
            continue;
        }
        seq.runs.emplace_back(HMeasure(k, n, Eigen::Map<const Eigen::VectorXd>(st.p.data(), static_cast<Eigen::Index>(st.p.size()))), 1);
    }
    if (seq.length() == 0 || k < 2) return rep;
    const SequenceStats s = sequence_stats(seq, sd);
    rep.gamma = s.gamma;
    rep.t0 = s.t0;

    const ClassStats first = class_stats(classes.front(), sd);
    const ClassStats last = class_stats(classes.back(), sd);
    const double shift = two_pi * static_cast<double>(middle_degree % (static_cast<long>(k) * n)) / (k * static_cast<double>(n));
    double kernel_sum = 0;
    for (std::size_t a = 0; a < sd.size(); ++a) {
        if (first.p[a] == 0) continue;
        const AnglePoint x = rotate(embed(sd.vertices[a]), -shift);
        for (std::size_t b = 0; b < sd.size(); ++b) {
            if (last.p[b] == 0) continue;
            const AnglePoint y = embed(dual(sd.vertices[b]));
            kernel_sum += first.p[a] * last.p[b] * heat_kernel_suk(x, y, s.gamma, s.t0).value;
        }
    }
    rep.log_asymptotic = 2 * std::log(sd.vmod(0)) + log_qdim - (k - 1) * std::log(static_cast<double>(n)) + std::log(kernel_sum);
    rep.ratio = std::exp(rep.log_exact - rep.log_asymptotic);
    rep.asymptotic = true;
    return rep;
}

} // namespace bkn
