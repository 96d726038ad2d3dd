#include "a2lab/lab/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace a2lab::lab {

FitResult fit_exponent(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_exponent: size mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_exponent: needs at least 3 points");
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_exponent: inputs must be positive");
        lx[i] = std::log2(xs[i]);
        ly[i] = std::log2(ys[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_exponent: degenerate abscissae");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.slope * lx[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "a,alpha,a2_log2,quantity_log2,oracle_log2,cpu_ms\n";
    for (const ExperimentRow& r : report.rows) {
        out << r.a << ',' << format_double(r.alpha) << ',' << format_double(r.a2_log2) << ','
            << format_double(r.quantity_log2) << ',';
        if (r.oracle_log2) out << format_double(*r.oracle_log2);
        out << ',' << format_double(r.cpu_ms) << '\n';
    }
    return out.str();
}

nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["name"] = report.name;
    j["timestamp"] = report.timestamp;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : report.config) cfg[k] = v;
    j["config"] = std::move(cfg);
    nlohmann::json rows = nlohmann::json::array();
    for (const ExperimentRow& r : report.rows) {
        nlohmann::json row{{"a", r.a},
                           {"alpha", r.alpha},
                           {"a2_log2", r.a2_log2},
                           {"quantity_log2", r.quantity_log2},
                           {"cpu_ms", r.cpu_ms}};
        if (r.oracle_log2)
            row["oracle_log2"] = *r.oracle_log2;
        else
            row["oracle_log2"] = nullptr;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (report.fit) {
        j["fit"] = {{"slope", report.fit->slope},
                    {"intercept", report.fit->intercept},
                    {"residual", report.fit->residual}};
    }
    for (const auto& [k, f] : report.extra_fits)
        j["extra_fits"][k] = {{"slope", f.slope}, {"intercept", f.intercept},
                              {"residual", f.residual}};
    for (const auto& [k, series] : report.extra_series) j["extra_series"][k] = series;
    j["notes"] = report.notes;
    return j;
}

ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport report;
    report.name = j.at("name").get<std::string>();
    report.timestamp = j.value("timestamp", std::string());
    if (j.contains("config"))
        for (const auto& [k, v] : j.at("config").items())
            report.config.emplace_back(k, v.get<std::string>());
    for (const nlohmann::json& row : j.at("rows")) {
        ExperimentRow r;
        r.a = row.at("a").get<int>();
        r.alpha = row.at("alpha").get<double>();
        r.a2_log2 = row.at("a2_log2").get<double>();
        r.quantity_log2 = row.at("quantity_log2").get<double>();
        if (row.contains("oracle_log2") && !row.at("oracle_log2").is_null())
            r.oracle_log2 = row.at("oracle_log2").get<double>();
        r.cpu_ms = row.value("cpu_ms", 0.0);
        report.rows.push_back(r);
    }
    if (j.contains("fit")) {
        FitResult f;
        f.slope = j.at("fit").at("slope").get<double>();
        f.intercept = j.at("fit").at("intercept").get<double>();
        f.residual = j.at("fit").at("residual").get<double>();
        report.fit = f;
    }
    if (j.contains("extra_fits"))
        for (const auto& [k, v] : j.at("extra_fits").items())
            report.extra_fits[k] = FitResult{v.at("slope").get<double>(),
                                             v.at("intercept").get<double>(),
                                             v.at("residual").get<double>()};
    if (j.contains("extra_series"))
        for (const auto& [k, v] : j.at("extra_series").items())
            report.extra_series[k] = v.get<std::vector<double>>();
    if (j.contains("notes")) report.notes = j.at("notes").get<std::vector<std::string>>();
    return report;
}

std::string to_svg(const ExperimentReport& report) {
    const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    std::vector<double> xs, ys;
    for (const ExperimentRow& r : report.rows) {
        xs.push_back(static_cast<double>(r.a));
        ys.push_back(r.quantity_log2);
    }
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!xs.empty()) {
        xmin = *std::min_element(xs.begin(), xs.end());
        xmax = *std::max_element(xs.begin(), xs.end());
        ymin = *std::min_element(ys.begin(), ys.end());
        ymax = *std::max_element(ys.begin(), ys.end());
        if (xmax == xmin) xmax = xmin + 1;
        if (ymax == ymin) ymax = ymin + 1;
    }
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    svg << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    svg << "<text x='" << W / 2 << "' y='" << H - 12
        << "' text-anchor='middle' font-size='13'>log2(1/alpha)</text>\n";
    svg << "<text x='18' y='" << H / 2 << "' font-size='13' transform='rotate(-90 18 " << H / 2
        << ")' text-anchor='middle'>log2(quantity)</text>\n";
    svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>" << report.name
        << "</text>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        svg << "<circle cx='" << X(xs[i]) << "' cy='" << Y(ys[i])
            << "' r='4' fill='steelblue'/>\n";
    if (report.fit && !xs.empty()) {
        const double y1 = report.fit->slope * xmin + report.fit->intercept;
        const double y2 = report.fit->slope * xmax + report.fit->intercept;
        svg << "<line x1='" << X(xmin) << "' y1='" << Y(y1) << "' x2='" << X(xmax) << "' y2='"
            << Y(y2) << "' stroke='crimson' stroke-width='1.5'/>\n";
        svg << "<text x='" << W - mr - 8 << "' y='" << mt + 16
            << "' text-anchor='end' font-size='13' fill='crimson'>slope " << report.fit->slope
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               const std::vector<std::string>& formats,
                                               const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const std::string& fmt : formats) {
        const std::filesystem::path path = out_dir / (report.name + "." + fmt);
        std::ofstream out(path);
        if (!out) throw std::runtime_error("emit_report: cannot write " + path.string());
        if (fmt == "csv")
            out << to_csv(report);
        else if (fmt == "json")
            out << report_to_json(report).dump(2) << '\n';
        else if (fmt == "svg")
            out << to_svg(report);
        else
            throw std::invalid_argument("emit_report: unknown format '" + fmt + "'");
        written.push_back(path);
    }
    return written;
}

} // namespace a2lab::lab
