#include "vi/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vi {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

// Shortest text that reads back to the same double.
std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <typename T>
bool parse_number(const std::string& s, T& out)
{
    if (s.empty()) {
        return false;
    }
    const char* first = s.data();
    if constexpr (std::is_floating_point_v<T>) {
        if (*first == '+') {
            ++first;
        }
    }
    const auto res = std::from_chars(first, s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

const std::set<std::string> kKeys = {"experiment", "dims",          "eps",      "seed",   "trials", "search_factor",
                                     "m_init",     "lambda_radius", "x_radius", "method", "mu",     "max_iters"};

}  // namespace

std::vector<double> parse_real_list(const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text, ',')) {
        double v = 0.0;
        if (!parse_number(item, v)) {
            throw ConfigurationError("not a real number: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::string format_dimensions(const std::vector<bench::Dimensions>& dims, bench::Experiment e)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        os << (i ? ", " : "") << dims[i].a;
        if (e != bench::Experiment::exp_operator) {
            os << 'x' << dims[i].b;
        }
        if (e == bench::Experiment::fermat_torricelli) {
            os << 'x' << dims[i].c;
        }
    }
    return os.str();
}

ConfigReport parse_config(const std::string& text)
{
    ConfigReport rep;
    std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)

    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            rep.errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKeys.count(key)) {
            rep.errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            continue;
        }
        if (entries.count(key)) {
            rep.errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            continue;
        }
        entries[key] = {value, line_no};
    }

    const auto bad = [&](const std::string& key, const std::string& what) {
        rep.errors.push_back(key + ": " + what + " (line " + std::to_string(entries[key].second) + ")");
    };

    bench::ExperimentConfig cfg;
    if (!entries.count("experiment")) {
        rep.errors.emplace_back("experiment: missing experiment");
        return rep;
    }
    if (auto e = bench::parse_experiment(entries["experiment"].first)) {
        cfg.experiment = *e;
    } else {
        bad("experiment", "unknown experiment '" + entries["experiment"].first + "'");
        return rep;
    }

    if (entries.count("dims")) {
        const std::size_t arity = cfg.experiment == bench::Experiment::exp_operator       ? 1
                                  : cfg.experiment == bench::Experiment::nonsmooth_saddle ? 2
                                                                                          : 3;
        for (const auto& tuple : split_list(entries["dims"].first, ',')) {
            const auto parts = split_list(tuple, 'x');
            std::array<long, 3> v{0, 0, 0};
            bool ok = parts.size() == arity;
            for (std::size_t i = 0; ok && i < parts.size(); ++i) {
                ok = parse_number(parts[i], v[i]);
            }
            if (!ok) {
                bad("dims", "expected " + std::to_string(arity) + " integer component(s) in '" + tuple + "'");
                continue;
            }
            cfg.dimensions.push_back({v[0], v[1], v[2]});
        }
    } else {
        cfg.dimensions = bench::ExperimentConfig::default_dimensions(cfg.experiment);
    }

    if (entries.count("eps")) {
        try {
            cfg.eps = parse_real_list(entries["eps"].first);
        } catch (const ConfigurationError& e) {
            bad("eps", e.what());
        }
    } else {
        cfg.eps = bench::ExperimentConfig::default_eps(cfg.experiment);
    }

    const auto number = [&](const std::string& key, auto& target) {
        if (entries.count(key) && !parse_number(entries[key].first, target)) {
            bad(key, "not a number: '" + entries[key].first + "'");
        }
    };
    number("seed", cfg.seed);
    number("trials", cfg.trials);
    number("search_factor", cfg.search_factor);
    number("lambda_radius", cfg.lambda_radius);
    number("x_radius", cfg.x_radius);
    number("mu", cfg.mu);
    number("max_iters", cfg.iteration_budget);
    if (entries.count("m_init") && entries["m_init"].first != "auto") {
        double m = 0.0;
        if (parse_number(entries["m_init"].first, m)) {
            cfg.M_init = m;
        } else {
            bad("m_init", "expected 'auto' or a positive real");
        }
    }
    if (entries.count("method")) {
        const auto& m = entries["method"].first;
        if (m == "gmp") {
            cfg.method = bench::ExperimentConfig::Method::gmp;
        } else if (m == "restart") {
            cfg.method = bench::ExperimentConfig::Method::restart;
        } else {
            bad("method", "expected 'gmp' or 'restart'");
        }
    }

    for (auto& v : cfg.violations()) {
        rep.errors.push_back(std::move(v));
    }
    if (rep.errors.empty()) {
        rep.config = std::move(cfg);
    }
    return rep;
}

std::string format_config(const bench::ExperimentConfig& cfg)
{
    std::ostringstream os;
    os << "experiment = " << bench::experiment_name(cfg.experiment) << '\n';
    os << "dims = " << format_dimensions(cfg.dimensions, cfg.experiment) << '\n';
    os << "eps = ";
    for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
        os << (i ? ", " : "") << shortest(cfg.eps[i]);
    }
    os << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "trials = " << cfg.trials << '\n';
    os << "search_factor = " << shortest(cfg.search_factor) << '\n';
    os << "m_init = " << (cfg.M_init ? shortest(*cfg.M_init) : std::string("auto")) << '\n';
    os << "lambda_radius = " << shortest(cfg.lambda_radius) << '\n';
    os << "x_radius = " << shortest(cfg.x_radius) << '\n';
    os << "method = " << (cfg.method == bench::ExperimentConfig::Method::gmp ? "gmp" : "restart") << '\n';
    os << "mu = " << shortest(cfg.mu) << '\n';
    os << "max_iters = " << cfg.iteration_budget << '\n';
    return os.str();
}

ConfigReport validate_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        return {std::nullopt, {"cannot read config file '" + path + "'"}};
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace vi
