#pragma once

#include <filesystem>

#include "bkn/spectral.hpp"

namespace bkn {

inline constexpr int cache_format_version = 2;

// $BKN_CACHE_DIR if set, else ./.bkn_cache
std::filesystem::path cache_directory();
// <dir>/spectral_k{k}_n{n}_v{version}.json
std::filesystem::path cache_path(int k, int n);

void save_spectral(const SpectralData& sd, const std::filesystem::path& file);
// Rejects other format versions with ConsistencyError; re-runs verify_spectral.
SpectralData load_spectral(const std::filesystem::path& file);
// Loads the cached tables when present and valid, otherwise builds and stores them.
SpectralData load_or_build(int k, int n, std::size_t cap = default_vertex_cap, bool* from_cache = nullptr);

} // namespace bkn
