#include "vi/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace vi {

namespace {

std::string real(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double parse_real(const std::string& s)
{
    if (s == "nan" || s == "-nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::invalid_argument(s);
    }
    return v;
}

template <typename Int>
Int parse_int(const std::string& s)
{
    std::size_t used = 0;
    const auto v = std::stoull(s[0] == '-' ? s.substr(1) : s, &used);
    if (used + (s[0] == '-' ? 1 : 0) != s.size()) {
        throw std::invalid_argument(s);
    }
    return s[0] == '-' ? -static_cast<Int>(v) : static_cast<Int>(v);
}

struct CellKey {
    std::string experiment;
    bench::Dimensions dims;
    double eps;

    bool operator<(const CellKey& o) const
    {
        if (experiment != o.experiment) {
            return experiment < o.experiment;
        }
        if (dims != o.dims) {
            return dims < o.dims;
        }
        return eps > o.eps;  // coarse accuracies first
    }
};

struct CellStats {
    int trials = 0;
    int converged = 0;
    double iterations = 0.0;
    double oracle_calls = 0.0;
    double final_gap = 0.0;
    double wall_time = 0.0;
};

std::map<CellKey, CellStats> aggregate(const std::vector<bench::ResultRow>& rows)
{
    std::map<CellKey, CellStats> cells;
    for (const auto& r : rows) {
        auto& c = cells[{r.experiment, {r.dim_a, r.dim_b, r.dim_c}, r.eps}];
        ++c.trials;
        c.converged += r.converged ? 1 : 0;
        c.iterations += static_cast<double>(r.iterations);
        c.oracle_calls += static_cast<double>(r.oracle_calls);
        c.final_gap += r.final_gap;
        c.wall_time += r.wall_time_s;
    }
    for (auto& [key, c] : cells) {
        c.iterations /= c.trials;
        c.oracle_calls /= c.trials;
        c.final_gap /= c.trials;
        c.wall_time /= c.trials;
    }
    return cells;
}

std::string dims_label(const std::string& experiment, const bench::Dimensions& d)
{
    std::ostringstream os;
    if (experiment == "nonsmooth-saddle") {
        os << "p=" << d.a << ", q=" << d.b;
    } else if (experiment == "fermat-torricelli") {
        os << "n=" << d.a << ", m=" << d.b << ", N=" << d.c;
    } else {
        os << "n=" << d.a;
    }
    return os.str();
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<bench::ResultRow>& rows)
{
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << r.experiment << ',' << r.dim_a << ',' << r.dim_b << ',' << r.dim_c << ',' << real(r.eps) << ','
           << r.trial << ',' << r.seed << ',' << r.iterations << ',' << r.oracle_calls << ',' << real(r.final_gap)
           << ',' << (r.converged ? 1 : 0) << ',' << real(r.wall_time_s) << '\n';
    }
}

std::vector<bench::ResultRow> parse_csv(std::istream& is)
{
    std::vector<bench::ResultRow> rows;
    std::string line;
    long line_no = 0;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw Error("csv line 1: expected header '" + std::string(kCsvHeader) + "'");
    }
    ++line_no;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 12) {
            throw Error("csv line " + std::to_string(line_no) + ": expected 12 fields, got " +
                        std::to_string(f.size()));
        }
        try {
            bench::ResultRow r;
            r.experiment = f[0];
            r.dim_a = parse_int<long>(f[1]);
            r.dim_b = parse_int<long>(f[2]);
            r.dim_c = parse_int<long>(f[3]);
            r.eps = parse_real(f[4]);
            r.trial = parse_int<int>(f[5]);
            r.seed = parse_int<std::uint64_t>(f[6]);
            r.iterations = parse_int<long>(f[7]);
            r.oracle_calls = parse_int<long>(f[8]);
            r.final_gap = parse_real(f[9]);
            if (f[10] != "0" && f[10] != "1") {
                throw std::invalid_argument(f[10]);
            }
            r.converged = f[10] == "1";
            r.wall_time_s = parse_real(f[11]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error& e) {
            throw Error("csv line " + std::to_string(line_no) + ": bad field '" + e.what() + "'");
        }
    }
    return rows;
}

std::string summary_json(const std::vector<bench::ResultRow>& rows)
{
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& [key, c] : aggregate(rows)) {
        nlohmann::ordered_json cell;
        cell["experiment"] = key.experiment;
        cell["dim_a"] = key.dims.a;
        cell["dim_b"] = key.dims.b;
        cell["dim_c"] = key.dims.c;
        cell["eps"] = key.eps;
        cell["trials"] = c.trials;
        cell["converged"] = c.converged;
        cell["mean_iterations"] = c.iterations;
        cell["mean_oracle_calls"] = c.oracle_calls;
        // NaN (restart rows) has no JSON spelling.
        cell["mean_final_gap"] = std::isfinite(c.final_gap) ? nlohmann::ordered_json(c.final_gap) : nullptr;
        cells.push_back(std::move(cell));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = rows.size();
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::string convergence_svg(const std::vector<bench::ResultRow>& rows, PlotMetric metric)
{
    constexpr double W = 640, H = 420, left = 70, right = 160, top = 40, bottom = 50;
    const auto cells = aggregate(rows);
    const auto value = [metric](const CellStats& c) {
        return metric == PlotMetric::iterations ? c.iterations : c.wall_time;
    };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    std::map<std::pair<std::string, bench::Dimensions>, std::vector<std::pair<double, double>>> series;
    for (const auto& [key, c] : cells) {
        const double y = value(c);
        if (!(key.eps > 0.0) || !(y > 0.0)) {
            continue;  // not representable on log axes
        }
        const double lx = std::log10(key.eps), ly = std::log10(y);
        series[{key.experiment, key.dims}].emplace_back(lx, ly);
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
    }
    if (series.empty()) {
        xmin = -1, xmax = 0, ymin = 0, ymax = 1;
    }
    xmin = std::floor(xmin), xmax = std::ceil(xmax);
    ymin = std::floor(ymin), ymax = std::ceil(ymax);
    if (xmax == xmin) {
        xmax += 1;
    }
    if (ymax == ymin) {
        ymax += 1;
    }
    // eps decreases to the right, as accuracy increases.
    const auto px = [&](double lx) { return left + (xmax - lx) / (xmax - xmin) * (W - left - right); };
    const auto py = [&](double ly) { return H - bottom - (ly - ymin) / (ymax - ymin) * (H - top - bottom); };

    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const std::string title = rows.empty() ? std::string("no data") : rows.front().experiment;
    const std::string ylabel = metric == PlotMetric::iterations ? "iterations" : "time, s";

    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << (left + (W - left - right) / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << title << ": " << ylabel << " vs eps</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
       << "\" stroke=\"black\"/>\n";
    for (double t = xmin; t <= xmax + 1e-9; t += 1.0) {
        os << "<line x1=\"" << px(t) << "\" y1=\"" << H - bottom << "\" x2=\"" << px(t) << "\" y2=\"" << H - bottom + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(t) << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">1e" << t
           << "</text>\n";
    }
    for (double t = ymin; t <= ymax + 1e-9; t += 1.0) {
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">1e" << t << "</text>\n";
    }
    os << "<text x=\"" << (left + (W - left - right) / 2) << "\" y=\"" << H - 10
       << "\" text-anchor=\"middle\">eps (log scale)</text>\n";
    os << "<text transform=\"translate(18," << (top + (H - top - bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << ylabel << " (log scale)</text>\n";

    std::size_t k = 0;
    for (const auto& [key, pts] : series) {
        const char* colour = palette[k % std::size(palette)];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (const auto& [lx, ly] : pts) {
            os << px(lx) << ',' << py(ly) << ' ';
        }
        os << "\"/>\n";
        for (const auto& [lx, ly] : pts) {
            os << "<circle cx=\"" << px(lx) << "\" cy=\"" << py(ly) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        os << "<line x1=\"" << W - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - right + 30 << "\" y2=\"" << ly
           << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - right + 35 << "\" y=\"" << ly + 4 << "\">" << dims_label(key.first, key.second)
           << "</text>\n";
        ++k;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace vi
