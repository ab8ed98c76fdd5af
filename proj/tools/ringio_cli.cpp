// ringio - figure datasets, sweeps and the validation suite from the command line

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ringio/commutator_lab.hpp"
#include "ringio/core_response.hpp"
#include "ringio/echo_kernels.hpp"
#include "ringio/errors.hpp"
#include "ringio/highq.hpp"
#include "ringio/lossy_cavity.hpp"
#include "ringio/table_io.hpp"
#include "ringio/two_photon.hpp"
#include "ringio/validation.hpp"

namespace fs = std::filesystem;
using namespace ringio;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> rho;
    std::optional<double> tau;
    double T{1.0};
    double eps{kDefaultEps};
    std::optional<double> dt;
    std::string out{"."};
    std::string format{"csv"};
};

std::optional<JunctionCoupling> coupling_override(const RunConfig& cfg)
{
    if (cfg.rho) return JunctionCoupling::from_rho(*cfg.rho);
    if (cfg.tau) return JunctionCoupling::from_tau(*cfg.tau);
    return std::nullopt;
}

std::string fmt(double x, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string tag(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

fs::path prepare_out(const RunConfig& cfg)
{
    fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + cfg.out);
    const fs::path probe = dir / ".ringio_write_probe";
    {
        std::ofstream f(probe);
        if (!f) throw UsageError("output directory is not writable: " + cfg.out);
    }
    fs::remove(probe, ec);
    return dir;
}

void emit_table(const fs::path& dir, const std::string& stem, const Table& table, const RunConfig& cfg)
{
    if (cfg.format == "json") {
        write_json_file(dir / (stem + ".json"), table_to_json(table));
    } else {
        write_csv(dir / (stem + ".csv"), table);
    }
}

// Grid step for a figure: --dt when given (must divide T), else T/16.
double lattice_step(const RunConfig& cfg)
{
    const double dt = cfg.dt.value_or(cfg.T / 16.0);
    commensurate_stride(cfg.T, dt);
    return dt;
}

int fig2(const RunConfig& cfg)
{
    const fs::path dir = prepare_out(cfg);
    const JunctionCoupling j = coupling_override(cfg).value_or(JunctionCoupling::from_rho(0.75));
    const JunctionCoupling flat = JunctionCoupling::from_rho(0.0);
    const double T = cfg.T;
    const double span = 3.0 * std::numbers::pi / T;
    std::size_t points = 1201;
    if (cfg.dt) points = static_cast<std::size_t>(std::llround(2.0 * span / *cfg.dt)) + 1;
    const FrequencyGrid grid = FrequencyGrid::spanning(-span, span, points);

    const auto dos = density_of_states_profile(j, T, grid);
    const auto dos0 = density_of_states_profile(flat, T, grid);
    Table t{{"omega", "dos_rho", "dos_rho0"}, {}};
    double peak = 0.0;
    for (std::size_t i = 0; i < dos.size(); ++i) {
        t.rows.push_back({dos[i].omega, dos[i].value, dos0[i].value});
        peak = std::max(peak, dos[i].value);
    }
    emit_table(dir, "fig2", t, cfg);

    const double exact = std::norm(g_ca(0.0, j, T));
    std::cout << "fig2: rho = " << fmt(j.rho()) << ", T = " << fmt(T) << "\n"
              << "  max |g_ca|^2 = " << fmt(exact, 10) << " (grid max " << fmt(peak, 10) << ")\n"
              << "  fsr integral = " << fmt(fsr_integral(j, T), 12) << "\n";
    return kExitOk;
}

int fig3(const RunConfig& cfg)
{
    const fs::path dir = prepare_out(cfg);
    const JunctionCoupling j = coupling_override(cfg).value_or(JunctionCoupling::from_rho(std::sqrt(0.998)));
    const RingGeometry ring(cfg.T, 1.0);
    const double T = ring.round_trip();
    CommutatorFigureOptions opts;
    if (cfg.dt) opts.t_points = static_cast<std::size_t>(std::llround((opts.t_stop - opts.t_start) * T / *cfg.dt)) + 1;
    const double broadening = T / 100.0;

    std::cout << "fig3: rho^2 = " << fmt(j.rho() * j.rho()) << ", L = " << fmt(ring.length()) << ", v = 1\n";
    for (double zp : {0.0, 0.333, 0.666}) {
        const double zprime = zp * ring.length();
        const CommutatorMap map = commutator_figure(j, zprime, ring, broadening, opts);
        const std::string stem = "fig3_zprime" + tag(zp);
        if (cfg.format == "json") {
            nlohmann::json doc = commutator_map_metadata(map);
            nlohmann::json rows = nlohmann::json::array();
            for (Eigen::Index r = 0; r < map.values.rows(); ++r) {
                std::vector<double> row(map.values.cols());
                for (Eigen::Index c = 0; c < map.values.cols(); ++c) row[c] = map.values(r, c);
                rows.push_back(row);
            }
            doc["values"] = std::move(rows);
            write_json_file(dir / (stem + ".json"), doc);
        } else {
            write_commutator_map(dir / (stem + ".csv"), map);
        }
        const auto crossings = spatial_commutator_support({0.0, 0.0}, {zprime, opts.tprime * T}, j, ring, 64);
        std::cout << "  z' = " << fmt(zp) << ": crossings at t = 0: " << crossings.size();
        for (const auto& s : crossings) std::cout << " (z = " << fmt(s.z_hit) << ", k = " << s.k << ")";
        std::cout << ", max |[C, C^dagger]| = " << fmt(map.values.maxCoeff()) << "\n";
    }
    return kExitOk;
}

int fig4(const RunConfig& cfg)
{
    const fs::path dir = prepare_out(cfg);
    std::vector<JunctionCoupling> cases;
    if (auto j = coupling_override(cfg)) cases.push_back(*j);
    else cases = {JunctionCoupling::from_rho(0.97), JunctionCoupling::from_rho(0.70)};
    const double T = cfg.T;
    Fig4Options opts;
    if (cfg.dt) opts.points = static_cast<std::size_t>(std::llround((opts.dt_stop - opts.dt_start) * T / *cfg.dt)) + 1;
    constexpr double kFlagThreshold = 0.02;

    for (const auto& j : cases) {
        const auto rows = fig4_dataset(j, T, KappaFlavor::linear, T / 20.0, opts);
        Table t{{"dt_sep", "exact_rendered", "approx_envelope"}, {}};
        for (const auto& r : rows) t.rows.push_back({r.dt_sep, r.exact_rendered, r.approx_envelope});
        emit_table(dir, "fig4_rho" + tag(j.rho()), t, cfg);

        const QuasimodeParams q = damping_rate(j, T, KappaFlavor::linear);
        const double dev = envelope_deviation(j, T, q, 20);
        std::cout << "fig4: rho = " << fmt(j.rho()) << ", kappa T = " << fmt(q.kappa * T) << " (linear)\n"
                  << "  peak ratio = " << fmt(peak_ratio(j, T), 8) << "\n"
                  << "  max envelope deviation = " << fmt(dev) << "\n"
                  << "  status: " << (dev > kFlagThreshold ? "DEVIATION: approximate envelope deviates significantly"
                                                           : "envelope tracks the echo train")
                  << "\n";
    }
    return kExitOk;
}

int fig56(const RunConfig& cfg, const std::string& name, double sigma, double beta)
{
    const fs::path dir = prepare_out(cfg);
    std::vector<JunctionCoupling> cases;
    if (auto j = coupling_override(cfg)) cases.push_back(*j);
    else for (double tau : {0.999, 0.95, 0.85, 0.60}) cases.push_back(JunctionCoupling::from_tau(tau));
    const double T = cfg.T;
    const TwoPhotonGaussian g(sigma * T, beta * T);
    const double dt = lattice_step(cfg);

    std::cout << name << ": sigma = " << fmt(sigma) << ", beta = " << fmt(beta) << ", T = " << fmt(T) << "\n";
    for (const auto& j : cases) {
        // Echoes shown down to 1e-3 of the first, at most 40.
        int echoes = 2;
        if (j.rho() > 0.0) echoes = std::clamp(static_cast<int>(std::ceil(std::log(1e-3) / std::log(j.rho()))) + 1, 2, 40);
        const double half = 4.0 * (g.sigma + g.beta);
        const double start = -std::ceil(half / dt) * dt;
        const auto count = static_cast<std::size_t>(std::llround((half + echoes * T - start) / dt)) + 1;
        const UniformAxis axis{start, dt, count};

        const JointAmplitudeGrid in = gaussian_amplitude(g, axis);
        const JointAmplitudeGrid out = transform_output(in, j, T, cfg.eps);
        const JointAmplitudeGrid closed = gaussian_output_closed_form(g, j, T, axis, cfg.eps);
        const double closed_diff = (out.values() - closed.values()).cwiseAbs().maxCoeff();
        const auto [p1, p2] = peak_locate(out);
        const Eigen::VectorXd sv_in = separability_rank(in);
        const Eigen::VectorXd sv_out = separability_rank(out);
        const double s2_in = sv_in.size() > 1 ? sv_in(1) : 0.0;
        const double s2_out = sv_out.size() > 1 ? sv_out(1) : 0.0;

        nlohmann::json extra{{"sigma", g.sigma}, {"beta", g.beta}, {"T", T},
                             {"tau", j.tau()},   {"rho", j.rho()},   {"eps", cfg.eps},
                             {"peak", {p1, p2}}, {"s2_over_s1", s2_out}};
        write_joint_amplitude(dir, name + "_tau" + tag(j.tau()), out, extra);

        std::cout << "  tau = " << fmt(j.tau()) << ": peak at (" << fmt(p1 / T, 4) << ", " << fmt(p2 / T, 4)
                  << ") T, s2/s1 in = " << fmt(s2_in, 3) << ", out = " << fmt(s2_out, 3)
                  << ", closed-form residual = " << fmt(closed_diff, 3) << "\n";
    }
    return kExitOk;
}

int cmd_figure(const std::string& name, const RunConfig& cfg)
{
    if (name == "fig2") return fig2(cfg);
    if (name == "fig3") return fig3(cfg);
    if (name == "fig4") return fig4(cfg);
    if (name == "fig5") return fig56(cfg, "fig5", 0.3, 0.3);
    if (name == "fig6") return fig56(cfg, "fig6", 0.2, 0.7);
    throw UsageError("unknown figure: " + name);
}

int cmd_validate(const RunConfig& cfg)
{
    const fs::path dir = prepare_out(cfg);
    ValidationConfig vc;
    if (auto j = coupling_override(cfg)) vc.coupling = *j;
    vc.T = cfg.T;
    vc.eps = cfg.eps;
    const ValidationReport report = run_validation(vc);
    write_json_file(dir / "validation_report.json", report.to_json());
    for (const auto& c : report.checks) {
        const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
        std::cout << status << "  " << c.name;
        if (!c.skipped) std::cout << "  measured " << fmt(c.measured, 3) << " tol " << fmt(c.tolerance, 3);
        if (!c.note.empty()) std::cout << "  (" << c.note << ")";
        std::cout << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : std::to_string(report.failures()) + " check(s) failed")
              << "\n";
    return report.all_passed() ? kExitOk : kExitValidation;
}

struct SweepSpec {
    std::string param;
    std::string metric;
    double from{0.0};
    double to{0.0};
    int steps{0};
};

int cmd_sweep(const SweepSpec& sw, const RunConfig& cfg)
{
    if (sw.metric != "peak_ratio" && sw.metric != "cw_residual" && sw.metric != "absorbed_fraction")
        throw UsageError("unknown metric: " + sw.metric);
    const bool ok = (sw.metric == "peak_ratio" && (sw.param == "rho" || sw.param == "tau")) ||
                    (sw.metric == "cw_residual" && sw.param == "kmax") ||
                    (sw.metric == "absorbed_fraction" && sw.param == "gamma_t");
    if (!ok) throw UsageError("metric " + sw.metric + " cannot be swept over " + sw.param);
    if (sw.steps < 1) throw UsageError("--steps must be at least 1");
    const fs::path dir = prepare_out(cfg);
    const double T = cfg.T;

    auto value_at = [&](int i) {
        return sw.steps == 1 ? sw.from : sw.from + (sw.to - sw.from) * i / (sw.steps - 1);
    };

    Table t{{sw.param, sw.metric}, {}};
    if (sw.metric == "peak_ratio") {
        for (int i = 0; i < sw.steps; ++i) {
            const double x = value_at(i);
            const JunctionCoupling j = sw.param == "rho" ? JunctionCoupling::from_rho(x) : JunctionCoupling::from_tau(x);
            t.rows.push_back({x, peak_ratio(j, T)});
        }
    } else if (sw.metric == "cw_residual") {
        const JunctionCoupling j = coupling_override(cfg).value_or(JunctionCoupling::from_rho(0.75));
        const double dt = lattice_step(cfg);
        const auto half = static_cast<std::size_t>(std::llround(3.0 * T / dt));
        const UniformAxis axis{-static_cast<double>(half) * dt, dt, 2 * half + 1};
        std::vector<cplx> d(axis.count);
        for (std::size_t i = 0; i < axis.count; ++i) d[i] = std::exp(-0.5 * std::pow(axis.at(i) / (0.4 * T), 2));
        const CwAmplitude amp(axis, d);
        for (int i = 0; i < sw.steps; ++i) {
            const auto kmax = static_cast<std::int64_t>(std::llround(value_at(i)));
            if (kmax < 0) throw UsageError("kmax must be non-negative");
            t.rows.push_back({static_cast<double>(kmax), cw_output(amp, j, T, kmax).residual});
        }
    } else {
        const JunctionCoupling j = coupling_override(cfg).value_or(JunctionCoupling::from_rho(0.0));
        const double omega_span = 2.0 * std::numbers::pi / T;
        const FrequencyGrid grid{-0.5 * omega_span, omega_span / 4096.0, 4096};
        const std::vector<cplx> flat(grid.count, cplx{1.0, 0.0});
        for (int i = 0; i < sw.steps; ++i) {
            const double gt = value_at(i);
            t.rows.push_back({gt, lossy_output_spectrum(flat, grid, j, T, gt / T).absorbed_fraction});
        }
    }
    emit_table(dir, "sweep_" + sw.metric + "_vs_" + sw.param, t, cfg);
    for (const auto& r : t.rows) std::cout << "  " << sw.param << " = " << fmt(r[0]) << "  " << sw.metric << " = " << fmt(r[1], 10) << "\n";
    return kExitOk;
}

// Values from --config fill in anything not given on the command line.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed config file: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "rho") { if (!given("--rho") && !given("--tau")) cfg.rho = value.get<double>(); }
            else if (key == "tau") { if (!given("--rho") && !given("--tau")) cfg.tau = value.get<double>(); }
            else if (key == "T") { if (!given("--T")) cfg.T = value.get<double>(); }
            else if (key == "eps") { if (!given("--eps")) cfg.eps = value.get<double>(); }
            else if (key == "dt") { if (!given("--dt")) cfg.dt = value.get<double>(); }
            else if (key == "out") { if (!given("--out")) cfg.out = value.get<std::string>(); }
            else if (key == "format") { if (!given("--format")) cfg.format = value.get<std::string>(); }
            else throw UsageError("unknown config key: " + key);
        } catch (const nlohmann::json::exception&) {
            throw UsageError("config key has the wrong type: " + key);
        }
    }
}

void check_config(const RunConfig& cfg)
{
    if (cfg.rho && cfg.tau) throw UsageError("give exactly one of rho and tau");
    if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw UsageError("T must be positive");
    if (!(cfg.eps > 0.0 && cfg.eps <= 1e-3)) throw UsageError("eps must lie in (0, 1e-3]");
    if (cfg.dt && !(*cfg.dt > 0.0)) throw UsageError("dt must be positive");
    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ringio: exact input-output numerics for a single-port ring cavity"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string config_path;
    double rho = 0.0, tau = 0.0, dt = 0.0;
    auto* rho_opt = app.add_option("--rho", rho, "junction amplitude reflection, [0, 1)");
    auto* tau_opt = app.add_option("--tau", tau, "junction amplitude transmission, (0, 1]");
    rho_opt->excludes(tau_opt);
    app.add_option("--T", cfg.T, "round-trip time");
    app.add_option("--eps", cfg.eps, "kernel truncation epsilon, (0, 1e-3]");
    auto* dt_opt = app.add_option("--dt", dt, "grid step");
    app.add_option("--out", cfg.out, "output directory");
    app.add_option("--format", cfg.format, "csv or json");
    app.add_option("--config", config_path, "JSON file with default option values");

    std::string figure_name;
    auto* figure = app.add_subcommand("figure", "write a figure dataset with its default parameters");
    figure->add_option("name", figure_name, "fig2, fig3, fig4, fig5 or fig6")->required();

    auto* validate = app.add_subcommand("validate", "run the invariant suite and write validation_report.json");

    SweepSpec sweep_spec;
    auto* sweep = app.add_subcommand("sweep", "tabulate a metric over a parameter range");
    sweep->add_option("--param", sweep_spec.param, "rho, tau, kmax or gamma_t")->required();
    sweep->add_option("--from", sweep_spec.from)->required();
    sweep->add_option("--to", sweep_spec.to)->required();
    sweep->add_option("--steps", sweep_spec.steps)->required();
    sweep->add_option("--metric", sweep_spec.metric, "peak_ratio, cw_residual or absorbed_fraction")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rho_opt->count()) cfg.rho = rho;
        if (tau_opt->count()) cfg.tau = tau;
        if (dt_opt->count()) cfg.dt = dt;
        if (!config_path.empty()) apply_config_file(config_path, cfg, app);
        check_config(cfg);
        coupling_override(cfg);

        if (figure->parsed()) return cmd_figure(figure_name, cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        if (sweep->parsed()) return cmd_sweep(sweep_spec, cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
