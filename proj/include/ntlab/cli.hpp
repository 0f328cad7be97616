#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ntlab/arith_families.hpp"
#include "ntlab/sieve_core.hpp"

namespace ntlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertFail = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t limit = 1'000'000;
  std::vector<FamilySpec> families;
  std::vector<Alpha> alphas;
  std::filesystem::path out = "ntlab_out";
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::filesystem::path cache_dir;
};

// Cache directory: --cache, then $NTLAB_CACHE_DIR, then ".ntlab_cache".
std::filesystem::path resolve_cache_dir(const std::string& flag_value);

enum class CacheStatus { built, cached, rebuilt };

// Loads <cache>/<name>_<limit>.ntft or builds and writes it; a corrupt file is
// reported on `warn` and rebuilt.
FunctionTable load_or_build(Classical f, std::uint64_t limit, const std::filesystem::path& cache_dir,
                            std::ostream& warn, CacheStatus* status = nullptr);

// Entry point shared by the ntlab executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ntlab
