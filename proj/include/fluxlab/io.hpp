#pragma once

#include "fluxlab/curve.hpp"
#include "fluxlab/curve_analysis.hpp"
#include "fluxlab/model.hpp"
#include "fluxlab/sampler.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fluxlab {

// Curve <-> JSON: {"closed": bool, "vertices": [[re, im], ...]}
std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& text);

// CSV import: two columns re,im; a non-numeric first line is treated as a
// header. `closed` is supplied by the caller (CSV carries geometry only).
Curve curve_from_csv(std::istream& in, bool closed);

std::string ahlfors_report_to_json(const AhlforsReport& r);

// PointConfig CSV: '#'-prefixed JSON header (model, R, seed, intensity),
// then re,im rows.
void write_point_config_csv(std::ostream& out, const PointConfig& cfg);

// Tabulated model ingestion: CSV with columns t,k(t); JSON sidecar with
// {"name":..., "intensity":...}.
TabulatedData load_tabulated_csv(std::istream& csv, const std::string& sidecar_json);

// CSV emitter with '#'-prefixed header lines carrying the resolved config.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::string& tool_version, const std::string& config_json);
    void header_row(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

private:
    std::ostream& out_;
};

// Minimal SVG scatter plot with axes, sample points, and an optional fitted
// line y = slope x + intercept (in plot coordinates). Log-log handled by the
// caller passing transformed data.
void write_svg_plot(std::ostream& out, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<double>& x,
                    const std::vector<double>& y, bool with_fit_line, double slope,
                    double intercept);

} // namespace fluxlab
