#include "bkn/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bkn/cache.hpp"
#include "bkn/harmonic.hpp"
#include "bkn/heat.hpp"
#include "bkn/limits.hpp"
#include "bkn/measure_spec.hpp"
#include "bkn/qcoh.hpp"
#include "bkn/spectral.hpp"

namespace bkn {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

const char* const measure_help =
    "Measure specs (law weights p(I)):\n"
    "  dirac:[3,1]               point mass at a configuration\n"
    "  pieri                     point mass at I_1 = (k, k-2, ..., 0)\n"
    "  uniform-neighbors:[3,1]   uniform on the Pieri out-neighbours\n"
    "  mix:0.5*pieri+0.5*dirac:[1,0]   convex combination\n"
    "  @file.json                {\"[3,1]\": 0.5, ...}\n"
    "Sequences join specs with ';' and repeat with ^m, e.g. \"pieri^256\".\n"
    "Classes: 2*[2,1]+[3]; class lists use ';' and ^m, e.g. \"[10];[1]^576;[10]\".";

struct Common {
    int k = 2;
    int n = 4;
    std::size_t cap = default_vertex_cap;
    bool no_cache = false;
    std::string out;
};

// stdout unless a path is given.
class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw std::invalid_argument("cannot open output file " + path);
        os_ = &file_;
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = &std::cout;
};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::vector<double> parse_doubles(const std::string& text)
{
    std::string s = text;
    if (!s.empty() && (s.front() == '[' || s.front() == '(')) s = s.substr(1, s.size() - 2);
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

SpectralData spectral(const Common& c)
{
    if (c.k < 1 || c.k > c.n) throw std::invalid_argument("need 1 <= k <= n");
    if (binomial(c.n, c.k) > c.cap) throw SizeError("C(n,k) exceeds the vertex cap", binomial(c.n, c.k));
    return c.no_cache ? build_spectral(c.k, c.n, c.cap) : load_or_build(c.k, c.n, c.cap);
}

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("-k,--k", c.k, "number of particles")->required();
    sub->add_option("-n,--n", c.n, "circle size")->required();
    sub->add_option("--cap", c.cap, "largest allowed C(n,k)");
    sub->add_flag("--no-cache", c.no_cache, "rebuild spectral tables instead of using the cache");
    sub->add_option("-o,--out", c.out, "output file (default stdout)");
}

ojson stats_json(const SequenceStats& s)
{
    ojson j;
    j["m"] = s.m;
    j["mean"] = s.agg.mean;
    j["var2"] = s.agg.var2;
    j["var3"] = s.agg.var3;
    j["norm2"] = s.agg.norm2;
    j["norm3"] = s.agg.norm3;
    j["K"] = s.agg.K;
    j["hat3"] = s.agg.hat3;
    j["alpha"] = s.alpha;
    j["gamma"] = s.gamma;
    j["gamma_simplified"] = s.gamma_simplified;
    j["gamma_local_limit"] = s.gamma_local_limit;
    j["alpha_simplified"] = s.alpha_simplified;
    j["t0"] = s.t0;
    j["M"] = s.M;
    j["M_var"] = s.M_var;
    j["M_hat"] = s.M_hat;
    j["M_simplified"] = s.M_simplified;
    return j;
}

std::string tuple_str(const Tuple& J)
{
    std::string s = "[";
    for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
    return s + "]";
}

// ---- subcommands ----

int cmd_enum(const Common& c, const std::string& format)
{
    const SpectralData sd = spectral(c);
    Sink out(c.out);
    if (format == "json") {
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < sd.size(); ++i) {
            const Configuration& I = sd.vertices[i];
            rows.push_back({{"index", i}, {"config", I.str()}, {"partition", to_partition(I).str()}, {"size", I.size()},
                            {"qdim", sd.h_l(static_cast<Eigen::Index>(i))}});
        }
        *out << rows.dump(2) << '\n';
        return exit_ok;
    }
    *out << "index,config,partition,size\n";
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const Configuration& I = sd.vertices[i];
        *out << i << ',' << quoted(I.str()) << ',' << quoted(to_partition(I).str()) << ',' << I.size() << '\n';
    }
    return exit_ok;
}

int cmd_kernel(const Common& c, const std::string& label, bool forward, int steps, const std::string& start,
               std::uint64_t seed)
{
    const SpectralData sd = spectral(c);
    const Configuration J = label.empty() ? pieri_generator(sd.k, sd.n) : Configuration(parse_int_list(label), sd.n);
    const MarkovKernel K = forward ? forward_kernel(J, sd) : markov_kernel(J, sd);
    Sink out(c.out);
    if (steps > 0) {
        const Configuration s0 = start.empty() ? ground(sd.k, sd.n) : Configuration(parse_int_list(start), sd.n);
        const auto path = sample_path(K, sd, s0, steps, seed);
        *out << "step,config\n";
        for (std::size_t i = 0; i < path.size(); ++i) *out << i << ',' << quoted(path[i].str()) << '\n';
        return exit_ok;
    }
    *out << "from,to,probability\n";
    *out << std::setprecision(17);
    for (Eigen::Index i = 0; i < K.P.rows(); ++i)
        for (Eigen::Index j = 0; j < K.P.cols(); ++j)
            if (K.P(i, j) != 0)
                *out << quoted(sd.vertices[static_cast<std::size_t>(i)].str()) << ','
                     << quoted(sd.vertices[static_cast<std::size_t>(j)].str()) << ',' << K.P(i, j) << '\n';
    return exit_ok;
}

int cmd_conv(const Common& c, const std::vector<std::string>& specs, const std::string& base, bool direct,
             bool show_fourier)
{
    const SpectralData sd = spectral(c);
    const HMeasure b = base.empty() ? HMeasure::dirac(ground(sd.k, sd.n), sd) : parse_measure(base, sd);
    Eigen::VectorXd law;
    if (direct) {
        if (specs.size() != 2) throw std::invalid_argument("--direct convolves exactly two measures");
        law = convolve_direct(parse_measure(specs[0], sd), parse_measure(specs[1], sd), sd);
    } else {
        std::vector<HMeasure> seq;
        for (const std::string& s : specs)
            for (const auto& [mu, m] : parse_sequence(s, sd).runs)
                for (long i = 0; i < m; ++i) seq.push_back(mu);
        law = convolve_sequence(seq, b, sd).weights();
    }
    Sink out(c.out);
    if (show_fourier) {
        const FourierCoeffs phi = fourier_weights(law, sd);
        *out << "config,re,im\n" << std::setprecision(17);
        for (std::size_t i = 0; i < sd.size(); ++i)
            *out << quoted(sd.vertices[i].str()) << ',' << phi(static_cast<Eigen::Index>(i)).real() << ','
                 << phi(static_cast<Eigen::Index>(i)).imag() << '\n';
        return exit_ok;
    }
    *out << measure_to_json(law, sd) << '\n';
    return exit_ok;
}

int cmd_qlr(const Common& c, const std::string& lambda_s, const std::string& mu_s, const std::string& format)
{
    const SpectralData sd = spectral(c);
    const Partition lambda(parse_int_list(lambda_s)), mu(parse_int_list(mu_s));
    if (!lambda.in_box(sd.k, sd.n) || !mu.in_box(sd.k, sd.n)) throw std::invalid_argument("partition outside the box");
    const QLRResult table = qlr(lambda, mu, sd);
    Sink out(c.out);
    if (format == "json") {
        ojson rows = ojson::array();
        for (const auto& [key, coeff] : table)
            rows.push_back({{"lambda", lambda.str()}, {"mu", mu.str()}, {"nu", key.first.str()}, {"d", key.second},
                            {"coefficient", coeff}});
        *out << rows.dump(2) << '\n';
        return exit_ok;
    }
    *out << "lambda,mu,nu,d,coefficient\n";
    for (const auto& [key, coeff] : table)
        *out << quoted(lambda.str()) << ',' << quoted(mu.str()) << ',' << quoted(key.first.str()) << ',' << key.second
             << ',' << coeff << '\n';
    return exit_ok;
}

int cmd_count(const Common& c, const std::string& classes_s, std::optional<long> d)
{
    const SpectralData sd = spectral(c);
    const auto classes = parse_class_list(classes_s, sd.k, sd.n);
    if (classes.empty()) throw std::invalid_argument("--classes is empty");
    long total = 0;
    for (const auto& x : classes) {
        const auto deg = x.degree();
        if (!deg) throw std::invalid_argument("classes must be homogeneous");
        total += *deg;
    }
    const long dim = static_cast<long>(sd.k) * (sd.n - sd.k);
    const long dd = d ? *d : ((total - dim) % sd.n == 0 && total >= dim ? (total - dim) / sd.n : -1);
    const CountResult r = enumerative_count(classes, dd, sd);
    ojson j;
    j["k"] = sd.k;
    j["n"] = sd.n;
    j["classes"] = classes.size();
    j["d"] = dd;
    j["degree_mismatch"] = r.degree_mismatch;
    j["count"] = r.count.str();
    Sink out(c.out);
    *out << j.dump(2) << '\n';
    return r.degree_mismatch ? exit_failed : exit_ok;
}

int cmd_heat(int k, const std::string& kind, const std::string& u_s, double t, double alpha, double gamma, int grid,
             double tol, const std::string& out_path)
{
    if (grid < 1) throw std::invalid_argument("--grid must be positive");
    const AnglePoint u{parse_doubles(u_s)};
    if (u.k() != k) throw std::invalid_argument("--u needs k angles");
    const bool su = kind == "su";
    const int free = su ? k - 1 : k;
    Sink out(out_path);
    *out << std::setprecision(17);
    for (int j = 0; j < k; ++j) *out << 'v' << j + 1 << ',';
    *out << "value\n";
    std::vector<int> idx(static_cast<std::size_t>(free), 0);
    const double h = two_pi / grid;
    for (;;) {
        std::vector<double> v(static_cast<std::size_t>(k));
        double used = 0;
        for (int j = 0; j < free; ++j) {
            v[j] = (idx[j] + 0.5) * h;
            used += v[j];
        }
        if (su) v[k - 1] = wrap_angle(u.total() - used);
        const AnglePoint vp{v};
        bool distinct = true;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (std::abs(std::remainder(v[a] - v[b], two_pi)) < 1e-9) distinct = false;
        if (distinct) {
            double value = 0;
            if (su) value = heat_kernel_suk(u, vp, gamma, t, tol).value;
            else if (kind == "u") value = heat_kernel_uk(u, vp, HeatParams{alpha, gamma, t}, tol).value;
            else value = determinantal_kernel_11(u, vp, t);
            for (double x : v) *out << x << ',';
            *out << value << '\n';
        }
        int j = 0;
        while (j < free && ++idx[j] == grid) idx[j++] = 0;
        if (j == free) break;
    }
    return exit_ok;
}

struct ValidateArgs {
    std::string check;
    long m = -1;
    std::uint64_t seed = 0;
    std::string measure = "pieri";
    std::string sequence;
    std::string start;
    std::string classes;
    std::string gamma_convention = "centred";
    double max_error = std::numeric_limits<double>::infinity();
    double window_c = 1.0;
    double t_min = 1e-4, t_max = 1.0;
    int t_points = 41;
    double ratio_min = 0, ratio_max = std::numeric_limits<double>::infinity();
    bool rows = false;
};

int cmd_validate(const Common& c, const ValidateArgs& a)
{
    const SpectralData sd = spectral(c);
    const long m = a.m >= 0 ? a.m : static_cast<long>(sd.n) * sd.n;
    const Configuration start = a.start.empty() ? ground(sd.k, sd.n) : Configuration(parse_int_list(a.start), sd.n);
    auto sequence = [&] {
        return a.sequence.empty() ? MeasureSequence::repeat(parse_measure(a.measure, sd), m) : parse_sequence(a.sequence, sd);
    };

    ojson rep;
    rep["check"] = a.check;
    rep["k"] = sd.k;
    rep["n"] = sd.n;
    rep["seed"] = a.seed;
    bool pass = true;

    if (a.check == "local-limit") {
        GammaConvention conv = GammaConvention::centred_K;
        if (a.gamma_convention == "simplified") conv = GammaConvention::simplified_norm;
        else if (a.gamma_convention == "local-limit") conv = GammaConvention::local_limit_norm;
        else if (a.gamma_convention != "centred") throw std::invalid_argument("unknown gamma convention " + a.gamma_convention);
        const MeasureSequence seq = sequence();
        const LocalLimitReport r = local_limit_check(seq, start, sd, conv);
        rep["m"] = seq.length();
        rep["start"] = start.str();
        rep["gamma_convention"] = a.gamma_convention;
        if (seq.length() > 0) rep["stats"] = stats_json(r.stats);
        rep["supported_residue"] = r.supported_residue;
        rep["proof_residue"] = r.proof_residue;
        rep["stated_residue"] = r.stated_residue ? ojson(*r.stated_residue) : ojson(nullptr);
        rep["supported_matches_proof"] = r.supported_residue == r.proof_residue;
        rep["supported_matches_stated"] = r.stated_residue && *r.stated_residue == r.supported_residue;
        rep["off_class_mass"] = r.off_class_mass;
        rep["off_class_mass_fourier"] = r.off_class_mass_fourier;
        rep["route_deviation"] = r.route_deviation;
        rep["shift"] = r.shift;
        rep["sup_error"] = r.sup_error;
        rep["mean_error"] = r.mean_error;
        rep["kernel_radius"] = r.kernel_radius;
        if (a.rows) {
            ojson rows = ojson::array();
            for (const auto& row : r.rows) rows.push_back({{"target", row.target.str()}, {"lhs", row.lhs}, {"rhs", row.rhs}});
            rep["rows"] = rows;
        }
        pass = r.off_class_mass <= 1e-12 && r.supported_residue == r.proof_residue && r.sup_error <= a.max_error;
    } else if (a.check == "fourier") {
        const MeasureSequence seq = sequence();
        const SequenceStats s = sequence_stats(seq, sd);
        const FourierWindow w = fourier_window(s, a.window_c);
        const auto scan = fourier_decay_scan(seq, sd, a.window_c);
        double worst = 0;
        long inside = 0;
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < scan.size(); ++i) {
            if (!scan[i].in_window) continue;
            ++inside;
            worst = std::max(worst, scan[i].error);
            if (a.rows)
                rows.push_back({{"J", sd.vertices[i].str()}, {"representative", tuple_str(scan[i].representative)},
                                {"actual", {scan[i].actual.real(), scan[i].actual.imag()}},
                                {"predicted", {scan[i].predicted.real(), scan[i].predicted.imag()}},
                                {"error", scan[i].error}});
        }
        rep["m"] = seq.length();
        rep["stats"] = stats_json(s);
        rep["window_c"] = a.window_c;
        rep["window_max_tilde_inf"] = std::isfinite(w.max_tilde_inf) ? ojson(w.max_tilde_inf) : ojson("inf");
        rep["window_max_lambda"] = std::isfinite(w.max_lambda) ? ojson(w.max_lambda) : ojson("inf");
        rep["in_window"] = inside;
        rep["max_error"] = worst;
        rep["n_times_max_error"] = worst * sd.n;
        if (a.rows) rep["rows"] = rows;
        pass = worst <= a.max_error;
    } else if (a.check == "wasserstein") {
        if (a.t_points < 1 || !(a.t_min > 0) || a.t_max < a.t_min) throw std::invalid_argument("bad time grid");
        std::vector<double> grid;
        for (int i = 0; i < a.t_points; ++i) {
            const double f = a.t_points == 1 ? 0.0 : static_cast<double>(i) / (a.t_points - 1);
            grid.push_back(a.t_min * std::pow(a.t_max / a.t_min, f));
        }
        const MeasureSequence seq = sequence();
        const BerryEsseenReport r = berry_esseen_check(seq, start, sd, grid);
        rep["m"] = seq.length();
        rep["start"] = start.str();
        rep["stats"] = stats_json(r.stats);
        rep["bound"] = r.w.bound;
        rep["best_t"] = r.w.best_t;
        rep["tail_bound"] = r.w.tail_bound;
        rep["radius"] = r.w.radius;
        rep["log_n_over_n"] = std::log(static_cast<double>(sd.n)) / sd.n;
        pass = std::isfinite(r.w.bound) && r.w.bound <= a.max_error;
    } else if (a.check == "corollary") {
        const auto classes = a.classes.empty() ? balanced_pieri_classes(sd.k, sd.n, m) : parse_class_list(a.classes, sd.k, sd.n);
        const CorollaryReport r = corollary_check(classes, sd);
        rep["classes"] = classes.size();
        rep["degree_mismatch"] = r.degree_mismatch;
        rep["d"] = r.d;
        rep["exact"] = r.exact.str();
        rep["log_exact"] = r.log_exact;
        rep["asymptotic"] = r.asymptotic;
        if (r.asymptotic) {
            rep["log_asymptotic"] = r.log_asymptotic;
            rep["ratio"] = r.ratio;
            rep["gamma"] = r.gamma;
            rep["t0"] = r.t0;
        }
        pass = !r.degree_mismatch && (!r.asymptotic || (r.ratio >= a.ratio_min && r.ratio <= a.ratio_max));
    } else {
        throw std::invalid_argument("unknown check " + a.check);
    }
    rep["pass"] = pass;
    Sink out(c.out);
    *out << rep.dump(2) << '\n';
    return pass ? exit_ok : exit_failed;
}

int cmd_cache(const Common& c, const std::string& action)
{
    ojson j;
    j["k"] = c.k;
    j["n"] = c.n;
    j["path"] = cache_path(c.k, c.n).string();
    j["format_version"] = cache_format_version;
    if (action == "build") {
        if (binomial(c.n, c.k) > c.cap) throw SizeError("C(n,k) exceeds the vertex cap", binomial(c.n, c.k));
        bool hit = false;
        const SpectralData sd = load_or_build(c.k, c.n, c.cap, &hit);
        j["vertices"] = sd.size();
        j["from_cache"] = hit;
    } else {
        const auto path = cache_path(c.k, c.n);
        j["exists"] = std::filesystem::exists(path);
        if (std::filesystem::exists(path)) {
            try {
                const SpectralData sd = load_spectral(path);
                j["valid"] = true;
                j["vertices"] = sd.size();
            } catch (const Error& e) {
                j["valid"] = false;
                j["error"] = e.what();
            }
        }
    }
    Sink out(c.out);
    *out << j.dump(2) << '\n';
    return exit_ok;
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Random walks on nonintersecting circle configurations: spectra, convolution, quantum cohomology "
                 "and heat kernel limits."};
    app.footer(measure_help);
    app.require_subcommand(1);

    unsigned threads = 0;
    double tol_num = tolerances().num, tol_round = tolerances().rounding, tol_clamp = tolerances().measure_clamp;
    app.add_option("--threads", threads, "worker thread bound (0 = hardware)");
    app.add_option("--tol", tol_num, "tolerance for cross-identity checks");
    app.add_option("--rounding-tol", tol_round, "largest accepted distance of a structure constant to an integer");
    app.add_option("--clamp-tol", tol_clamp, "negative weights above -clamp-tol are clamped to zero");

    Common common;
    std::string format = "csv";

    auto* s_enum = app.add_subcommand("enum", "list B_{k,n} in rank order");
    add_common(s_enum, common);
    s_enum->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    std::string label, start;
    bool forward = false;
    int steps = 0;
    std::uint64_t seed = 0;
    auto* s_kernel = app.add_subcommand("kernel", "emit the Markov kernel P^J or sample a path");
    add_common(s_kernel, common);
    s_kernel->add_option("--J", label, "kernel label (default I_1)");
    s_kernel->add_flag("--forward", forward, "emit the mu_h-reversed kernel");
    s_kernel->add_option("--steps", steps, "sample a path of this length instead");
    s_kernel->add_option("--start", start, "path start (default I_0)");
    s_kernel->add_option("--seed", seed);

    std::vector<std::string> specs;
    std::string base;
    bool direct = false, show_fourier = false;
    auto* s_conv = app.add_subcommand("conv", "convolve measure specs");
    add_common(s_conv, common);
    s_conv->add_option("--measure", specs, "measure or sequence spec, repeatable")->required();
    s_conv->add_option("--base", base, "starting measure (default dirac at I_0)");
    s_conv->add_flag("--direct", direct, "use structure constants instead of the transform");
    s_conv->add_flag("--fourier", show_fourier, "emit Fourier coefficients of the result");

    std::string lambda_s, mu_s;
    auto* s_qlr = app.add_subcommand("qlr", "quantum Littlewood-Richardson table for sigma_lambda * sigma_mu");
    add_common(s_qlr, common);
    s_qlr->add_option("--lambda", lambda_s)->required();
    s_qlr->add_option("--mu", mu_s)->required();
    s_qlr->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    std::string classes_s;
    std::optional<long> degree;
    auto* s_count = app.add_subcommand("count", "count degree-d maps meeting Schubert classes");
    add_common(s_count, common);
    s_count->add_option("--classes", classes_s)->required();
    s_count->add_option("--d", degree, "degree (default: forced by the codimensions)");

    int heat_k = 2, grid = 64;
    std::string kind = "su", u_s, heat_out;
    double t = 1, alpha = 1, gamma = 1, heat_tol = 1e-12;
    auto* s_heat = app.add_subcommand("heat", "tabulate a heat kernel over a midpoint grid of end points");
    s_heat->add_option("-k,--k", heat_k)->required();
    s_heat->add_option("--kind", kind)->check(CLI::IsMember({"su", "u", "det"}));
    s_heat->add_option("--u", u_s, "start angles, comma separated")->required();
    s_heat->add_option("--t", t);
    s_heat->add_option("--alpha", alpha);
    s_heat->add_option("--gamma", gamma);
    s_heat->add_option("--grid", grid);
    s_heat->add_option("--series-tol", heat_tol);
    s_heat->add_option("-o,--out", heat_out);

    ValidateArgs va;
    auto* s_val = app.add_subcommand("validate", "run a limit-theorem check and write a JSON report");
    add_common(s_val, common);
    s_val->add_option("--check", va.check)->required()->check(CLI::IsMember({"fourier", "local-limit", "wasserstein", "corollary"}));
    s_val->add_option("-m,--m", va.m, "sequence length (default n^2)");
    s_val->add_option("--seed", va.seed);
    s_val->add_option("--measure", va.measure, "measure repeated m times (default pieri)");
    s_val->add_option("--sequence", va.sequence, "explicit sequence spec, overrides --measure and --m");
    s_val->add_option("--start", va.start, "starting configuration (default I_0)");
    s_val->add_option("--classes", va.classes, "corollary classes (default balanced single-box sequence)");
    s_val->add_option("--gamma-convention", va.gamma_convention)->check(CLI::IsMember({"centred", "simplified", "local-limit"}));
    s_val->add_option("--max-error", va.max_error, "fail when the error exceeds this");
    s_val->add_option("--window-c", va.window_c);
    s_val->add_option("--t-min", va.t_min);
    s_val->add_option("--t-max", va.t_max);
    s_val->add_option("--t-points", va.t_points);
    s_val->add_option("--ratio-min", va.ratio_min);
    s_val->add_option("--ratio-max", va.ratio_max);
    s_val->add_flag("--rows", va.rows, "include per-configuration rows");

    std::string action;
    auto* s_cache = app.add_subcommand("cache", "build or inspect the spectral cache");
    add_common(s_cache, common);
    s_cache->add_option("action", action)->required()->check(CLI::IsMember({"build", "inspect"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    thread_limit() = threads;
    tolerances().num = tol_num;
    tolerances().rounding = tol_round;
    tolerances().measure_clamp = tol_clamp;

    try {
        if (*s_enum) return cmd_enum(common, format);
        if (*s_kernel) return cmd_kernel(common, label, forward, steps, start, seed);
        if (*s_conv) return cmd_conv(common, specs, base, direct, show_fourier);
        if (*s_qlr) return cmd_qlr(common, lambda_s, mu_s, format);
        if (*s_count) return cmd_count(common, classes_s, degree);
        if (*s_heat) return cmd_heat(heat_k, kind, u_s, t, alpha, gamma, grid, heat_tol, heat_out);
        if (*s_val) return cmd_validate(common, va);
        if (*s_cache) return cmd_cache(common, action);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const SizeError& e) {
        std::cerr << "error: " << e.what() << " (" << e.count << ")\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_usage;
}

} // namespace bkn
