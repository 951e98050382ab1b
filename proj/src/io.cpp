#include "fluxlab/io.hpp"
#include "fluxlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace fluxlab {

using nlohmann::json;

std::string curve_to_json(const Curve& c) {
    json j;
    j["closed"] = c.closed;
    json verts = json::array();
    for (const Complex& z : c.vertices) verts.push_back({z.real(), z.imag()});
    j["vertices"] = std::move(verts);
    return j.dump();
}

Curve curve_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("curve JSON parse error: ") + e.what());
    }
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ValidationError("curve JSON: missing vertices array");
    std::vector<Complex> v;
    for (const auto& p : j["vertices"]) {
        if (!p.is_array() || p.size() != 2)
            throw ValidationError("curve JSON: vertices must be [re, im] pairs");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    bool closed = j.value("closed", false);
    return make_polyline(std::move(v), closed);
}

Curve curve_from_csv(std::istream& in, bool closed) {
    std::vector<Complex> v;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double re, im;
        if (!(ls >> re >> im)) {
            if (first) {
                first = false;  // header line
                continue;
            }
            throw ValidationError("curve CSV: malformed row: " + line);
        }
        first = false;
        v.emplace_back(re, im);
    }
    return make_polyline(std::move(v), closed);
}

std::string ahlfors_report_to_json(const AhlforsReport& r) {
    json j;
    j["sup_ratio"] = r.sup_ratio;
    j["witness_center"] = {r.witness_center.real(), r.witness_center.imag()};
    j["witness_radius"] = r.witness_radius;
    j["centers_tested"] = r.centers_tested;
    j["radii_tested"] = r.radii_tested;
    return j.dump();
}

void write_point_config_csv(std::ostream& out, const PointConfig& cfg) {
    json j;
    j["model"] = cfg.model_label;
    j["window_radius"] = cfg.window_radius;
    j["seed"] = cfg.seed;
    j["intensity"] = cfg.physical_intensity;
    out << "# " << j.dump() << "\n";
    out << "re,im\n";
    out << std::setprecision(17);
    for (const Complex& z : cfg.points) out << z.real() << "," << z.imag() << "\n";
}

TabulatedData load_tabulated_csv(std::istream& csv, const std::string& sidecar_json) {
    TabulatedData data;
    json meta;
    try {
        meta = json::parse(sidecar_json);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("tabulated sidecar parse error: ") + e.what());
    }
    if (!meta.contains("intensity"))
        throw ValidationError("tabulated sidecar: missing intensity");
    data.intensity = meta["intensity"].get<double>();
    data.name = meta.value("name", std::string("tabulated"));

    std::string line;
    bool first = true;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t, k;
        if (!(ls >> t >> k)) {
            if (first) {
                first = false;
                continue;
            }
            throw ValidationError("tabulated CSV: malformed row: " + line);
        }
        first = false;
        data.t.push_back(t);
        data.k.push_back(k);
    }
    return data;
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& tool_version,
                     const std::string& config_json)
    : out_(out) {
    out_ << "# " << tool_version << "\n";
    out_ << "# config: " << config_json << "\n";
    out_ << std::setprecision(17);
}

void CsvWriter::header_row(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << "\n";
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << "\n"; }

// ---------------------------------------------------------------------------

void write_svg_plot(std::ostream& out, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<double>& x,
                    const std::vector<double>& y, bool with_fit_line, double slope,
                    double intercept) {
    if (x.size() != y.size() || x.empty()) throw ValidationError("svg plot: empty or mismatched data");
    const int W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
    double xlo = x[0], xhi = x[0], ylo = y[0], yhi = y[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
        xlo = std::min(xlo, x[i]);
        xhi = std::max(xhi, x[i]);
        ylo = std::min(ylo, y[i]);
        yhi = std::max(yhi, y[i]);
    }
    if (xhi == xlo) xhi = xlo + 1;
    if (yhi == ylo) yhi = ylo + 1;
    double padx = 0.05 * (xhi - xlo), pady = 0.08 * (yhi - ylo);
    xlo -= padx; xhi += padx; ylo -= pady; yhi += pady;
    auto px = [&](double v) { return ML + (v - xlo) / (xhi - xlo) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ylo) / (yhi - ylo) * (H - MT - MB); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n";
    // axes
    out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
        << H - MB << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
        << "\" stroke=\"black\"/>\n";
    out << std::setprecision(6);
    out << "<text x=\"" << ML << "\" y=\"" << H - MB + 20 << "\" font-size=\"11\">" << xlo
        << "</text>\n";
    out << "<text x=\"" << W - MR - 40 << "\" y=\"" << H - MB + 20 << "\" font-size=\"11\">" << xhi
        << "</text>\n";
    out << "<text x=\"4\" y=\"" << H - MB << "\" font-size=\"11\">" << ylo << "</text>\n";
    out << "<text x=\"4\" y=\"" << MT + 10 << "\" font-size=\"11\">" << yhi << "</text>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << H / 2 << "\" font-size=\"13\" transform=\"rotate(-90 16 "
        << H / 2 << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    if (with_fit_line) {
        double y1 = slope * xlo + intercept, y2 = slope * xhi + intercept;
        out << "<line x1=\"" << px(xlo) << "\" y1=\"" << py(y1) << "\" x2=\"" << px(xhi)
            << "\" y2=\"" << py(y2) << "\" stroke=\"steelblue\" stroke-dasharray=\"5,3\"/>\n";
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        out << "<circle cx=\"" << px(x[i]) << "\" cy=\"" << py(y[i])
            << "\" r=\"3.5\" fill=\"crimson\"/>\n";
    out << "</svg>\n";
}

} // namespace fluxlab
