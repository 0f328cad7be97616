#include "ntlab/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ntlab/errors.hpp"

namespace ntlab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw UsageError("CSV row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << str();
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

namespace {

std::string bound_or_empty(const ExpSumRecord& r, const std::string& key) {
  auto it = r.bounds.find(key);
  return it == r.bounds.end() ? "" : format_double(it->second);
}

std::string ratio_or_empty(const ExpSumRecord& r, const std::string& key) {
  auto it = r.bounds.find(key);
  if (it == r.bounds.end() || it->second <= 0.0) return "";
  return format_double(std::abs(r.value) / it->second);
}

}  // namespace

CsvTable expsum_csv(const std::vector<ExpSumRecord>& records) {
  CsvTable t({"P", "P_prime", "Q", "re", "im", "abs", "n_terms", "bound_kl", "bound_walfisz_gamma1",
              "ratio_trivial", "ratio_kl", "ratio_walfisz"});
  for (const auto& r : records) {
    t.add_row({format_double(r.window.P), format_double(r.window.P_prime), format_double(r.window.Q),
               format_double(r.value.real()), format_double(r.value.imag()), format_double(std::abs(r.value)),
               std::to_string(r.n_terms), bound_or_empty(r, "kusmin_landau"), bound_or_empty(r, "walfisz_envelope"),
               ratio_or_empty(r, "trivial"), ratio_or_empty(r, "kusmin_landau"),
               ratio_or_empty(r, "walfisz_envelope")});
  }
  return t;
}

CsvTable condition_csv(const std::vector<ConditionReport>& reports) {
  CsvTable t({"condition", "x", "statistic", "implied_constant_or_ratio", "verdict"});
  for (const auto& r : reports) {
    const std::string verdict = r.bounded ? "bounded" : "unbounded_trend";
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      t.add_row({std::string(to_string(r.condition)), format_double(r.grid[i]), format_double(r.statistic[i]),
                 format_double(r.implied_constant[i]), verdict});
    }
  }
  return t;
}

CsvTable profile_csv(const std::vector<ErrorProfile>& profiles) {
  CsvTable t({"family", "alpha_re", "alpha_im", "x", "exact_re", "exact_im", "main_re", "main_im", "err_abs",
              "env_mertens", "env_walfisz", "env_liu", "env_bp", "ratio_mertens", "ratio_walfisz", "ratio_liu",
              "ratio_bp"});
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
      const auto& s = p.samples[i];
      const auto& e = p.envelopes[i];
      const double err = std::abs(s.error);
      t.add_row({std::string(to_string(p.family.id)), format_double(p.family.alpha.re()),
                 format_double(p.family.alpha.im()), format_double(s.x), format_double(s.exact.real()),
                 format_double(s.exact.imag()), format_double(s.main.real()), format_double(s.main.imag()),
                 format_double(err), format_double(e.mertens), format_double(e.walfisz), format_double(e.liu),
                 format_double(e.bp), format_double(err / e.mertens), format_double(err / e.walfisz),
                 format_double(err / e.liu), format_double(err / e.bp)});
    }
  }
  return t;
}

CsvTable coeffs_csv(const std::vector<std::pair<FamilySpec, MainTermCoeffs>>& rows) {
  CsvTable t({"family", "alpha_re", "alpha_im", "method", "term", "re", "im", "condition_number",
              "residual_rms", "tail"});
  for (const auto& [spec, c] : rows) {
    auto add = [&](const std::string& term, cplx v) {
      t.add_row({std::string(to_string(spec.id)), format_double(spec.alpha.re()), format_double(spec.alpha.im()),
                 std::string(to_string(c.method)), term, format_double(v.real()), format_double(v.imag()),
                 format_double(c.condition_number), format_double(c.residual_rms), format_double(c.tail)});
    };
    add("linear", c.linear);
    for (std::size_t r = 0; r < c.logpoly.size(); ++r) add("A" + std::to_string(r), c.logpoly[r]);
    add("constant", c.constant);
  }
  return t;
}

std::string profile_svg(const ErrorProfile& profile) {
  constexpr double kW = 640, kH = 400, kPad = 50;
  struct Series {
    const char* name;
    const char* color;
    double Envelopes::*env;
  };
  const std::array<Series, 3> series{{{"mertens", "#1f77b4", &Envelopes::mertens},
                                      {"walfisz", "#2ca02c", &Envelopes::walfisz},
                                      {"liu", "#d62728", &Envelopes::liu}}};
  const std::size_t n = profile.samples.size();
  double x_lo = INFINITY, x_hi = -INFINITY, y_hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log10(profile.samples[i].x);
    x_lo = std::min(x_lo, lx);
    x_hi = std::max(x_hi, lx);
    for (const auto& s : series) y_hi = std::max(y_hi, profile.ratio(i, s.env));
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > 0.0)) y_hi = 1.0;
  auto px = [&](double lx) { return kPad + (lx - x_lo) / (x_hi - x_lo) * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - y / y_hi * (kH - 2 * kPad); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\"" << kH - kPad
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\"" << kH - kPad
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">log10 x</text>\n";
  out << "<text x=\"" << kPad << "\" y=\"" << kPad - 10 << "\">" << to_string(profile.family.id)
      << " |E(x)| / envelope (max " << format_double(y_hi) << ")</text>\n";
  int legend = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      out << (i ? " " : "") << px(std::log10(profile.samples[i].x)) << ',' << py(profile.ratio(i, s.env));
    }
    out << "\"/>\n";
    out << "<text x=\"" << kW - kPad - 80 << "\" y=\"" << kPad + 15 * legend++ << "\" fill=\"" << s.color << "\">"
        << s.name << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ntlab
