#include "rydpol/io.hpp"
#include "rydpol/common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydpol {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section = "global";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ValidationError("config line " + std::to_string(lineno) + ": empty key or value");
        cfg.sections_[section][key] = val;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

bool Config::has_section(const std::string& section) const { return sections_.count(section) > 0; }

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ValidationError("config: [" + section + "] " + key + " = '" + *v + "' is not a number");
    }
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    const double d = get_double(section, key, fallback);
    const int i = static_cast<int>(std::llround(d));
    if (std::abs(d - i) > 1e-9)
        throw ValidationError("config: [" + section + "] " + key + " must be an integer");
    return i;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const auto v = get(section, key);
    return v ? *v : fallback;
}

DerivedParams Config::resolve_params() const {
    const bool phys = has_section("physical");
    const bool dimless = has_section("dimensionless");
    if (phys && dimless)
        throw ValidationError("config: [physical] and [dimensionless] blocks are mutually exclusive");
    if (!phys && !dimless)
        throw ValidationError("config: need a [physical] or a [dimensionless] block");
    if (dimless) {
        const double alpha = get_double("dimensionless", "alpha", -1.0);
        const double lambda = get_double("dimensionless", "lambda", -1.0);
        const int sign = get_int("dimensionless", "sign_regime", -1);
        return dimensionless_mode(alpha, lambda, sign);
    }
    PhysicalParams p;
    p.omega = get_double("physical", "omega", 0.0);
    p.delta = get_double("physical", "delta", 0.0);
    p.gamma = get_double("physical", "gamma", 0.0);
    p.g_coupling = get_double("physical", "g", 0.0);
    p.c6 = get_double("physical", "c6", 0.0);
    p.c_light = get_double("physical", "c", 0.0);
    p.detuning_ratio_min = get_double("physical", "ratio_min", 5.0);
    return derive(p);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t ncols;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : impl_(std::make_unique<Impl>()) {
    impl_->out.open(path, std::ios::binary); // binary: keep '\n' on every platform
    if (!impl_->out) throw ValidationError("csv: cannot open " + path + " for writing");
    impl_->ncols = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "");
    impl_->out << "\n";
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != impl_->ncols) throw ValidationError("csv: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << format_g17(values[i]) << (i + 1 < values.size() ? "," : "");
    impl_->out << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != impl_->ncols) throw ValidationError("csv: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "");
    impl_->out << "\n";
}

std::string CsvWriter::format(double v) { return format_g17(v); }

namespace {

struct Rgb {
    double r, g, b;
};

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
    return {a.r + t * (b.r - a.r), a.g + t * (b.g - a.g), a.b + t * (b.b - a.b)};
}

// small multi-stop maps; enough for a glanceable figure
Rgb sequential(double t) {
    static const Rgb stops[] = {{0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
                                {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
                                {0.135, 0.659, 0.518}, {0.267, 0.749, 0.441}, {0.478, 0.821, 0.318},
                                {0.741, 0.873, 0.150}, {0.993, 0.906, 0.144}};
    t = std::clamp(t, 0.0, 1.0) * 9.999;
    const int i = static_cast<int>(t);
    return lerp(stops[i], stops[i + 1], t - i);
}

Rgb diverging(double t) {
    const Rgb lo{0.230, 0.299, 0.754}, mid{0.95, 0.95, 0.95}, hi{0.706, 0.016, 0.150};
    t = std::clamp(t, 0.0, 1.0);
    return t < 0.5 ? lerp(lo, mid, 2.0 * t) : lerp(mid, hi, 2.0 * t - 1.0);
}

int chan(double x) { return static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); }

} // namespace

void svg_heatmap(const std::string& path, const Field& f, const Grid2D& grid,
                 const std::string& title, bool div) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("svg: cannot open " + path + " for writing");

    const int n = grid.n;
    const int stride = std::max(1, n / 220);
    const int m = (n + stride - 1) / stride;
    const double vmax = std::max(std::abs(f.maxCoeff()), std::abs(f.minCoeff()));
    const double lo = div ? -vmax : f.minCoeff();
    const double hi = div ? vmax : f.maxCoeff();
    const double span = (hi > lo) ? (hi - lo) : 1.0;

    const int cell = 3, margin = 40;
    const int size = m * cell;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size + 2 * margin << "' height='"
        << size + 2 * margin + 20 << "'>\n";
    out << "<text x='" << margin << "' y='20' font-family='sans-serif' font-size='13'>" << title
        << "</text>\n";
    for (int bi = 0; bi < m; ++bi)
        for (int bj = 0; bj < m; ++bj) {
            const int i = std::min(bi * stride, n - 1);
            const int j = std::min(bj * stride, n - 1);
            const double t = (f(i, j) - lo) / span;
            const Rgb c = div ? diverging(t) : sequential(t);
            // zeta horizontal, eta vertical, origin centered
            out << "<rect x='" << margin + bj * cell << "' y='" << margin + (m - 1 - bi) * cell
                << "' width='" << cell << "' height='" << cell << "' fill='rgb(" << chan(c.r) << ","
                << chan(c.g) << "," << chan(c.b) << ")'/>\n";
        }
    out << "<text x='" << margin << "' y='" << size + 2 * margin + 12
        << "' font-family='sans-serif' font-size='11'>zeta right, eta up; range [" << format_g17(lo)
        << ", " << format_g17(hi) << "], box half-width " << format_g17(grid.box_l) << "</text>\n";
    out << "</svg>\n";
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("json: cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

} // namespace rydpol
