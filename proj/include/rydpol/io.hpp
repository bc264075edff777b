#ifndef RYDPOL_IO_HPP
#define RYDPOL_IO_HPP

#include "rydpol/params.hpp"
#include "rydpol/potentials.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rydpol {

/// key = value configuration files with [section] headers and '#' comments.
/// A run specifies either a [physical] or a [dimensionless] block, never both.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    bool has_section(const std::string& section) const;

    /// Enforces the physical/dimensionless exclusivity and runs derive() or
    /// dimensionless_mode accordingly.
    DerivedParams resolve_params() const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Deterministic CSV writing: fixed column order, 17 significant digits,
/// '\n' line endings.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    static std::string format(double v);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::string format_g17(double v);

/// Pair of heatmap export helpers; presentation only, every checked quantity
/// goes through CSV/JSON.
void svg_heatmap(const std::string& path, const Field& f, const Grid2D& grid,
                 const std::string& title, bool diverging);

void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace rydpol

#endif
