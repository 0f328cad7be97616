#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ntlab/error_lab.hpp"
#include "ntlab/expsum.hpp"
#include "ntlab/numeric.hpp"
#include "ntlab/verify_lab.hpp"

namespace ntlab {

// Doubles are written with %.17g so files round-trip bit-exactly.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  void add_row(std::vector<std::string> row);  // throws UsageError on width mismatch
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable expsum_csv(const std::vector<ExpSumRecord>& records);
CsvTable condition_csv(const std::vector<ConditionReport>& reports);
CsvTable profile_csv(const std::vector<ErrorProfile>& profiles);
CsvTable coeffs_csv(const std::vector<std::pair<FamilySpec, MainTermCoeffs>>& rows);

// Static line chart of |E| / envelope against log10 x, one polyline per envelope.
std::string profile_svg(const ErrorProfile& profile);

}  // namespace ntlab
