// Command-line front end: parameter handling, solver runs, CSV/JSON/SVG export.
// Exit codes: 0 success, 1 validation error, 2 solver non-convergence.

#include "rydpol/adiabatic.hpp"
#include "rydpol/common.hpp"
#include "rydpol/eigensolve.hpp"
#include "rydpol/geometry.hpp"
#include "rydpol/io.hpp"
#include "rydpol/numerics.hpp"
#include "rydpol/params.hpp"
#include "rydpol/potentials.hpp"
#include "rydpol/propagate.hpp"
#include "rydpol/reference.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rydpol;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    double alpha = std::nan("");
    double lambda = std::nan("");
    double medium_length = std::nan("");
    int grid_n = -1;
    double box_l = -1.0;
    int kmax = -1;
    int threads = 1;
    bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "configuration file (key = value)");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--alpha", a.alpha, "Rydberg fraction alpha in [0,1]");
    cmd->add_option("--lambda", a.lambda, "interaction strength lambda > 0");
    cmd->add_option("--medium-length", a.medium_length, "medium length R in blockade radii");
    cmd->add_option("--grid-n", a.grid_n, "grid points per axis");
    cmd->add_option("--box-l", a.box_l, "box half-width in blockade radii");
    cmd->add_option("--kmax", a.kmax, "partial-wave cutoff (multiple of 6)");
    cmd->add_option("--threads", a.threads, "worker threads for scans");
    cmd->add_flag("--svg", a.svg, "also write SVG heatmaps");
}

struct Resolved {
    DerivedParams params;
    Config config; // possibly empty
    json manifest;
    fs::path out;
    std::chrono::steady_clock::time_point t0;
};

Resolved resolve(const CommonArgs& a, const std::string& command, bool need_params = true) {
    Resolved r;
    r.t0 = std::chrono::steady_clock::now();
    if (!a.config_path.empty()) r.config = Config::parse_file(a.config_path);

    if (need_params) {
        const bool flag_alpha = !std::isnan(a.alpha);
        const bool flag_lambda = !std::isnan(a.lambda);
        if (!a.config_path.empty() && !(flag_alpha || flag_lambda)) {
            r.params = r.config.resolve_params();
        } else {
            double alpha = flag_alpha ? a.alpha : r.config.get_double("dimensionless", "alpha", std::nan(""));
            double lambda = flag_lambda ? a.lambda : r.config.get_double("dimensionless", "lambda", std::nan(""));
            if (std::isnan(alpha) || std::isnan(lambda))
                throw ValidationError("need --alpha and --lambda (or a config with a parameter block)");
            r.params = dimensionless_mode(alpha, lambda);
        }
        if (!r.params.coherent)
            throw ValidationError("gamma != 0: solvers require coherent dynamics; only the "
                                  "potential command accepts complex chi");
    }

    r.out = fs::path(a.out_dir);
    fs::create_directories(r.out);

    r.manifest["command"] = command;
    r.manifest["version"] = version_tag();
    if (need_params) {
        r.manifest["params"] = {{"alpha", r.params.alpha},
                                {"lambda", r.params.lambda},
                                {"sign_regime", r.params.sign_regime},
                                {"has_physical", r.params.has_physical}};
        if (r.params.has_physical) {
            r.manifest["params"]["xi"] = r.params.xi;
            r.manifest["params"]["kappa_xi"] = r.params.kappa_xi;
            r.manifest["params"]["v_group"] = r.params.v_group;
            r.manifest["params"]["chi_re"] = r.params.chi.real();
            r.manifest["params"]["chi_im"] = r.params.chi.imag();
        }
        for (const auto& w : r.params.warnings) r.manifest["warnings"].push_back(w);
    }
    return r;
}

void finish(Resolved& r, const std::string& name) {
    const auto dt = std::chrono::steady_clock::now() - r.t0;
    r.manifest["wall_time_s"] = std::chrono::duration<double>(dt).count();
    const fs::path p = r.out / (name + "_manifest.json");
    write_json_file(p.string(), r.manifest);
    std::cout << "wrote " << p.string() << "\n";
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ValidationError(std::string("bad ") + what + " list entry: '" + tok + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string(what) + " list is empty");
    return out;
}

int cmd_potential(const CommonArgs& a) {
    Resolved r = resolve(a, "potential");
    const int n = a.grid_n > 0 ? a.grid_n : r.config.get_int("grid", "n", 301);
    const double L = a.box_l > 0 ? a.box_l : r.config.get_double("grid", "box_l", 6.0);
    const Grid2D grid = Grid2D::make(L, n);
    const double alpha = r.params.alpha;

    const PotentialFields f = potential_on_jacobi_grid(grid, alpha);

    const fs::path csv = r.out / "potential_fields.csv";
    {
        CsvWriter w(csv.string(), {"eta", "zeta", "u2sum", "u3", "utotal"});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w.row({grid.x(i), grid.x(j), f.u2_sum(i, j), f.u3(i, j), f.u_total(i, j)});
    }

    // permutation-symmetry audit over a deterministic sample
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> uni(-L, L);
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        const double eta = uni(rng), zeta = uni(rng);
        const double ref = total_potential_jacobi(eta, zeta, alpha).u_total;
        for (const auto& im : symmetry_orbit(eta, zeta))
            worst = std::max(worst, std::abs(total_potential_jacobi(im[0], im[1], alpha).u_total - ref));
    }

    r.manifest["grid"] = {{"n", n}, {"box_l", L}, {"h", grid.h}};
    r.manifest["outputs"].push_back(csv.string());
    r.manifest["orbit_symmetry_max_deviation"] = worst;
    r.manifest["units_note"] = "fields are chi*V/alpha^2; multiply by alpha^2 for 1/|chi| units";

    if (a.svg) {
        const fs::path s1 = r.out / "potential_total.svg";
        svg_heatmap(s1.string(), f.u_total, grid, "total interaction (alpha^2/|chi| units)", true);
        r.manifest["outputs"].push_back(s1.string());
        const fs::path s2 = r.out / "potential_three_body.svg";
        svg_heatmap(s2.string(), f.u3, grid, "connected three-body term", false);
        r.manifest["outputs"].push_back(s2.string());
    }
    finish(r, "potential");
    return 0;
}

int cmd_adiabatic(const CommonArgs& a) {
    Resolved r = resolve(a, "adiabatic");
    const int kmax = a.kmax > 0 ? a.kmax : r.config.get_int("grid", "kmax", 36);
    const double rho_min = r.config.get_double("grid", "rho_min", 0.05);
    const double rho_max = a.box_l > 0 ? a.box_l : r.config.get_double("grid", "rho_max", 80.0);
    const int n_rho = r.config.get_int("grid", "n_rho", 400);

    const ChannelBasis basis{kmax, ChannelBasis::Sector::full};
    const auto rho = geometric_grid(rho_min, rho_max, n_rho);
    const AdiabaticChannelSet set = adiabatic_curves(basis, rho, r.params.alpha, r.params.lambda);

    const fs::path csv = r.out / "adiabatic_curves.csv";
    {
        CsvWriter w(csv.string(), {"rho", "k", "lambda_k", "delta_k"});
        for (std::size_t s = 0; s < set.labels.size(); ++s) {
            if (set.labels[s] > 12) continue; // plot range; full set available via kmax
            for (std::size_t i = 0; i < set.rho.size(); ++i)
                w.row({set.rho[i], double(set.labels[s]),
                       set.lambda_curves(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)),
                       set.delta_curves(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s))});
        }
    }

    const EigenSolution e2 = two_body_ground_auto(r.params.lambda);
    const int ch0 = set.channel_of(0);
    r.manifest["grid"] = {{"kmax", kmax}, {"rho_min", rho_min}, {"rho_max", rho_max}, {"n_rho", n_rho}};
    r.manifest["outputs"].push_back(csv.string());
    r.manifest["e2"] = e2.energies.at(0);
    r.manifest["delta0_at_rho_max"] = set.delta_curves(set.delta_curves.rows() - 1, ch0);
    r.manifest["max_quad_error"] = set.max_quad_error;
    finish(r, "adiabatic");
    return 0;
}

int cmd_bound(const CommonArgs& a) {
    Resolved r = resolve(a, "bound");
    const double lambda = r.params.lambda, alpha = r.params.alpha;

    const EigenSolution e2 = two_body_ground_auto(lambda);
    EigenSolution e3;
    if (a.grid_n > 0 && a.box_l > 0) {
        e3 = three_body_ground(lambda, alpha, Grid2D::make(a.box_l, a.grid_n));
    } else {
        e3 = three_body_ground_auto(lambda, alpha, {},
                                    r.config.get_double("grid", "h_target", -1.0),
                                    r.config.get_int("grid", "n_cap", 1700));
    }
    const Grid2D grid = Grid2D::make(e3.box_l, e3.grid_n);

    const fs::path csv = r.out / "bound_wavefunction.csv";
    {
        CsvWriter w(csv.string(), {"eta", "zeta", "psi"});
        const Eigen::VectorXd& psi = e3.wavefunctions.at(0);
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j)
                w.row({grid.x(i), grid.x(j), psi(static_cast<long>(i) * grid.n + j)});
    }

    r.manifest["grid"] = {{"n", grid.n}, {"box_l", grid.box_l}, {"h", grid.h}};
    r.manifest["outputs"].push_back(csv.string());
    r.manifest["e2"] = e2.energies.at(0);
    r.manifest["e3"] = e3.energies.at(0);
    r.manifest["ratio"] = e3.energies.at(0) / e2.energies.at(0);
    r.manifest["residual3"] = e3.residuals.at(0);
    r.manifest["boundary_leak"] = e3.boundary_leak;
    r.manifest["iterations"] = e3.iterations;
    for (const auto& nX : e3.notes) r.manifest["notes"].push_back(nX);

    if (a.svg) {
        Field dens(grid.n, grid.n);
        const Eigen::VectorXd& psi = e3.wavefunctions.at(0);
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j)
                dens(i, j) = psi(static_cast<long>(i) * grid.n + j) * psi(static_cast<long>(i) * grid.n + j);
        const fs::path s = r.out / "bound_density.svg";
        svg_heatmap(s.string(), dens, grid, "three-body ground-state density", false);
        r.manifest["outputs"].push_back(s.string());
    }
    finish(r, "bound");
    return 0;
}

int cmd_scan(const CommonArgs& a) {
    Resolved r = resolve(a, "scan", false);
    std::string ls = r.config.get_string("scan", "lambda_list", "");
    std::string as = r.config.get_string("scan", "alpha_list", "");
    if (!std::isnan(a.lambda)) ls = std::to_string(a.lambda);
    if (!std::isnan(a.alpha)) as = std::to_string(a.alpha);
    if (ls.empty() || as.empty())
        throw ValidationError("scan: need [scan] lambda_list and alpha_list (or --lambda/--alpha)");

    ScanOptions so;
    so.threads = a.threads > 0 ? a.threads : 1;
    so.h_target = r.config.get_double("grid", "h_target", -1.0);
    so.n_cap = r.config.get_int("grid", "n_cap", 1700);
    const ScanResult scan = ratio_scan(parse_list(ls, "lambda"), parse_list(as, "alpha"), so);

    const fs::path csv = r.out / "ratio_scan.csv";
    {
        CsvWriter w(csv.string(), {"lambda", "alpha", "e2", "e3", "ratio", "residual2", "residual3"});
        for (const auto& p : scan.points)
            w.row({p.lambda, p.alpha, p.e2, p.e3, p.ratio, p.residual2, p.residual3});
    }
    r.manifest["outputs"].push_back(csv.string());
    int failures = 0;
    for (const auto& p : scan.points)
        if (!p.ok) {
            ++failures;
            r.manifest["failures"].push_back({{"lambda", p.lambda}, {"alpha", p.alpha}, {"error", p.error}});
        }
    r.manifest["points"] = scan.points.size();
    r.manifest["failed_points"] = failures;
    finish(r, "scan");
    return 0;
}

int cmd_correlate(const CommonArgs& a) {
    Resolved r = resolve(a, "correlate");
    CorrelationOptions co;
    co.box_l = a.box_l > 0 ? a.box_l : r.config.get_double("grid", "box_l", 40.0);
    co.n = a.grid_n > 0 ? a.grid_n : r.config.get_int("grid", "n", 255);
    co.box_l_1d = r.config.get_double("grid", "box_l_1d", 4.0 * co.box_l);
    co.n_1d = r.config.get_int("grid", "n_1d", 4095);
    co.dtau = r.config.get_double("run", "dtau", 0.02);
    co.alpha_kinematic = r.config.get_double("run", "alpha_kinematic", 1.0);
    const double R = !std::isnan(a.medium_length)
                         ? a.medium_length
                         : r.config.get_double("run", "medium_length", 20.0);

    const CorrelationResult c = correlations_after_medium(r.params.alpha, r.params.lambda, R, co);

    const fs::path g2csv = r.out / "g2.csv";
    {
        CsvWriter w(g2csv.string(), {"r", "g2"});
        for (std::size_t i = 0; i < c.r_grid.size(); ++i) w.row({c.r_grid[i], c.g2[i]});
    }
    const fs::path g3csv = r.out / "g3.csv";
    {
        CsvWriter w(g3csv.string(), {"eta", "zeta", "g3", "g3_connected"});
        for (int i = 0; i < co.n; ++i)
            for (int j = 0; j < co.n; ++j)
                w.row({c.grid.x(i), c.grid.x(j), c.g3(i, j), c.g3_connected(i, j)});
    }

    r.manifest["run"] = {{"medium_length", R}, {"tau", c.tau}, {"dtau", co.dtau},
                         {"alpha_kinematic", co.alpha_kinematic}};
    r.manifest["grid"] = {{"n", co.n}, {"box_l", co.box_l}, {"n_1d", co.n_1d}, {"box_l_1d", co.box_l_1d}};
    r.manifest["outputs"].push_back(g2csv.string());
    r.manifest["outputs"].push_back(g3csv.string());
    r.manifest["peak"] = c.peak;
    r.manifest["fwhm_radial"] = c.fwhm_radial;
    r.manifest["fwhm_eta"] = c.fwhm_eta;
    r.manifest["far_field_max"] = c.far_field_max;
    r.manifest["annulus"] = {c.annulus_lo, c.annulus_hi};
    r.manifest["sixfold_asymmetry"] = c.sixfold_asymmetry;
    r.manifest["norm_drift_2d"] = c.stats_2d.max_step_norm_drift;
    r.manifest["absorbed_fraction_2d"] = c.stats_2d.absorbed_fraction;

    if (a.svg) {
        // central region of the connected correlation, Fig.-style layout
        const double Lc = std::min(12.0, co.box_l);
        int m = 0;
        for (int i = 0; i < co.n; ++i)
            if (std::abs(c.grid.x(i)) <= Lc) ++m;
        Field central(m, m);
        int ii = 0;
        for (int i = 0; i < co.n; ++i) {
            if (std::abs(c.grid.x(i)) > Lc) continue;
            int jj = 0;
            for (int j = 0; j < co.n; ++j) {
                if (std::abs(c.grid.x(j)) > Lc) continue;
                central(ii, jj++) = c.g3_connected(i, j);
            }
            ++ii;
        }
        const Grid2D cgrid = Grid2D::make(Lc, m);
        const fs::path s = r.out / "g3_connected.svg";
        svg_heatmap(s.string(), central, cgrid, "connected g3 after the medium", true);
        r.manifest["outputs"].push_back(s.string());
    }
    finish(r, "correlate");
    return 0;
}

int cmd_oracle_report(const CommonArgs& a) {
    Resolved r = resolve(a, "oracle-report", false);
    const double lambda = std::isnan(a.lambda) ? 0.05 : a.lambda;
    const double alpha = std::isnan(a.alpha) ? 1.0 : a.alpha;

    json rows = json::array();
    auto add = [&rows](const std::string& q, double v, const std::string& m, double tol) {
        rows.push_back({{"quantity", q}, {"value", v}, {"method", m}, {"tolerance", tol}});
    };
    add("mcguire_ratio", reference::mcguire_ratio(0.0), "analytic", 0.0);
    add("pair_potential_integral", reference::pair_potential_integral_quadrature(), "quadrature", 1e-10);
    std::string note;
    add("delta_limit_e2(lambda=" + format_g17(lambda) + ")",
        reference::delta_limit_two_body(lambda, &note), "analytic", 0.0);
    const auto sat = reference::saturation_constants(alpha);
    add("saturation_pair", sat[0], "analytic", 0.0);
    add("saturation_three_body(alpha=" + format_g17(alpha) + ")", sat[1], "analytic", 0.0);
    add("saturation_total(alpha=" + format_g17(alpha) + ")", sat[2], "analytic", 0.0);
    if (!note.empty()) r.manifest["notes"].push_back(note);

    r.manifest["oracles"] = rows;
    for (const auto& row : rows)
        std::cout << row["quantity"].get<std::string>() << " = "
                  << format_g17(row["value"].get<double>()) << "  [" << row["method"].get<std::string>()
                  << "]\n";
    finish(r, "oracle_report");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rydpol: bound states and photon correlations of three interacting "
                 "Rydberg slow-light polaritons"};
    app.require_subcommand(1);

    CommonArgs args[6];
    CLI::App* sub[6];
    const char* names[6] = {"potential", "adiabatic", "bound", "scan", "correlate", "oracle-report"};
    const char* descs[6] = {"interaction potential fields over the Jacobi plane",
                            "adiabatic channel curves Lambda_k, Delta_k",
                            "two- and three-body bound states at one parameter point",
                            "binding-energy ratio scan over (lambda, alpha)",
                            "photon correlations g2, g3 and connected g3 after the medium",
                            "print the analytic/quadrature oracle values"};
    for (int i = 0; i < 6; ++i) {
        sub[i] = app.add_subcommand(names[i], descs[i]);
        add_common(sub[i], args[i]);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub[0]->parsed()) return cmd_potential(args[0]);
        if (sub[1]->parsed()) return cmd_adiabatic(args[1]);
        if (sub[2]->parsed()) return cmd_bound(args[2]);
        if (sub[3]->parsed()) return cmd_scan(args[3]);
        if (sub[4]->parsed()) return cmd_correlate(args[4]);
        if (sub[5]->parsed()) return cmd_oracle_report(args[5]);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
