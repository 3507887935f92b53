#include "bkn/cache.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace bkn {

using nlohmann::json;

std::filesystem::path cache_directory()
{
    if (const char* env = std::getenv("BKN_CACHE_DIR"); env && *env) return env;
    return ".bkn_cache";
}

std::filesystem::path cache_path(int k, int n)
{
    return cache_directory() / ("spectral_k" + std::to_string(k) + "_n" + std::to_string(n) + "_v" +
                                std::to_string(cache_format_version) + ".json");
}

void save_spectral(const SpectralData& sd, const std::filesystem::path& file)
{
    json j;
    j["format_version"] = cache_format_version;
    j["k"] = sd.k;
    j["n"] = sd.n;
    json s = json::array();
    for (Eigen::Index r = 0; r < sd.S.rows(); ++r)
        for (Eigen::Index c = 0; c < sd.S.cols(); ++c) s.push_back({sd.S(r, c).real(), sd.S(r, c).imag()});
    j["S"] = std::move(s);
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    j["vmod"] = vec(sd.vmod);
    j["mu_h"] = vec(sd.mu_h);
    j["h_l"] = vec(sd.h_l);
    j["h_r"] = vec(sd.h_r);

    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cannot write cache file " + tmp.string());
        out << j.dump();
    }
    std::filesystem::rename(tmp, file);
}

SpectralData load_spectral(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw Error("cannot read cache file " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConsistencyError("malformed cache file " + file.string() + ": " + e.what());
    }
    if (j.value("format_version", -1) != cache_format_version)
        throw ConsistencyError("cache file " + file.string() + " has a stale format version");

    SpectralData sd;
    sd.k = j.at("k").get<int>();
    sd.n = j.at("n").get<int>();
    sd.vertices = enumerate(sd.k, sd.n);
    const auto N = static_cast<Eigen::Index>(sd.vertices.size());
    const json& s = j.at("S");
    if (static_cast<Eigen::Index>(s.size()) != N * N) throw ConsistencyError("cache table has the wrong size");
    sd.S.resize(N, N);
    for (Eigen::Index r = 0; r < N; ++r)
        for (Eigen::Index c = 0; c < N; ++c) {
            const json& z = s[static_cast<std::size_t>(r * N + c)];
            sd.S(r, c) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
        }
    auto vec = [&](const char* key) {
        const auto v = j.at(key).get<std::vector<double>>();
        if (static_cast<Eigen::Index>(v.size()) != N) throw ConsistencyError(std::string("cache vector ") + key + " has the wrong size");
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), N));
    };
    sd.vmod = vec("vmod");
    sd.mu_h = vec("mu_h");
    sd.h_l = vec("h_l");
    sd.h_r = vec("h_r");
    verify_spectral(sd);
    return sd;
}

SpectralData load_or_build(int k, int n, std::size_t cap, bool* from_cache)
{
    const std::filesystem::path file = cache_path(k, n);
    if (std::filesystem::exists(file)) {
        try {
            SpectralData sd = load_spectral(file);
            if (sd.k == k && sd.n == n) {
                if (from_cache) *from_cache = true;
                return sd;
            }
        } catch (const Error&) {
            // Fall through and rebuild over the stale file.
        }
    }
    SpectralData sd = build_spectral(k, n, cap);
    save_spectral(sd, file);
    if (from_cache) *from_cache = false;
    return sd;
}

} // namespace bkn
