#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ntlab/arith_families.hpp"
#include "ntlab/expsum.hpp"
#include "ntlab/report.hpp"

namespace ntlab {

// Portable uniform draw in [0, 1) from the standard-specified mt19937_64 sequence.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

struct SuiteCheck {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool pass() const;
  CsvTable csv() const;           // check, statistic, threshold, pass
  CsvTable failures_csv() const;  // failing rows only
};

struct SuiteOptions {
  std::uint64_t limit = 1'000'000;
  std::uint64_t seed = 20240601;
  std::vector<Alpha> alphas;  // conditions suite; empty selects {1, 2, -1, 1/2, i}
};

inline const std::vector<std::string_view> kSuiteNames = {"vaughan", "vaaler", "kusmin",
                                                          "conditions", "tau", "partition"};

// Throws UsageError for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options);

// Seeded windows with P in [10, 10^5], Q <= 10^10 and the Kusmin-Landau condition applicable.
std::vector<SumWindow> kusmin_windows(std::uint64_t seed, int count);

// Seeded windows with P <= 10^5 for which the smooth/rough threshold z is at least 4.
std::vector<SumWindow> partition_windows(std::uint64_t seed, int count);

}  // namespace ntlab
