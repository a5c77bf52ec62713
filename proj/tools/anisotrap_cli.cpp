// anisotrap — batch front-end over the library: spectrum/berry tables,
// propagation diagnostics, the sign-flip experiment, and parameter sweeps.
// Exit codes: 0 ok, 2 config error, 3 physics precondition, 4 convergence.

#include <CLI11.hpp>

#include "anisotrap/berry.hpp"
#include "anisotrap/config.hpp"
#include "anisotrap/experiment.hpp"
#include "anisotrap/output.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

namespace {

using namespace anisotrap;

Table spectrum_table(const RunConfig& cfg)
{
    const FockBasis basis(cfg.n_max);
    Table t;
    t.columns = {"N", "sign", "E_analytic", "E_numeric", "residual"};
    const auto numeric = numeric_spectrum(cfg.geometry, basis, 0.0);
    for (int N : cfg.N_list) {
        for (int sign : {-1, +1}) {
            const double analytic =
                sign * cfg.geometry.lambda * std::sqrt(double(N) * (N - 1));
            double num = 0.0;
            bool found = false;
            for (const SpectrumEntry& e : numeric)
                if (e.label == LevelLabel::singlet && e.N == N && e.sign == sign) {
                    num = e.energy;
                    found = true;
                    break;
                }
            if (!found)
                throw PhysicsError("spectrum: numeric singlet (N = " +
                                   std::to_string(N) + ") not identified");
            t.rows.push_back({std::to_string(N), std::to_string(sign),
                              format_sci(analytic), format_sci(num),
                              format_sci(std::abs(num - analytic))});
        }
    }
    return t;
}

Table berry_table(const RunConfig& cfg)
{
    const FockBasis basis(cfg.n_max);
    Table t;
    t.columns = {"N",          "gamma_closed",      "gamma_connection",
                 "gamma_wilson_mod2pi", "delta_next_mod2pi"};
    for (int N : cfg.N_list) {
        const double closed =
            berry_closed_form(N, cfg.geometry.theta, PhaseFamily::singlet_N);
        // gamma = i * 2pi * <n|d/dphi n> (connection is phi-independent)
        const double conn = std::real(
            Complex(0.0, 2.0 * std::numbers::pi) *
            berry_connection(N, cfg.geometry.theta, 0.0, PhaseFamily::singlet_N));
        LoopSpec loop;
        loop.samples = cfg.samples;
        loop.selector = {LevelLabel::singlet, N, +1, 0};
        const double wilson = wilson_loop_phase(cfg.geometry, basis, loop);
        const double delta =
            phase_difference(N, cfg.geometry.theta, PhaseFamily::singlet_N);
        t.rows.push_back({std::to_string(N), format_sci(closed),
                          format_sci(conn), format_sci(wilson),
                          format_sci(delta)});
    }
    return t;
}

Table evolve_table(const RunConfig& cfg)
{
    const FockBasis basis(cfg.n_max);
    const double T = cycle_period(cfg.geometry);  // throws when isotropic
    const ComplexVector psi0 = prepare_superposition(cfg.N, cfg.geometry, basis);

    Table t;
    t.columns = {"method",     "t_final",      "fidelity_vs_closed",
                 "norm_drift", "charge_drift", "step_count"};
    const EvolutionResult closed =
        evolve_exact_closed(psi0, cfg.geometry, basis, T);
    const EvolutionResult stepped =
        cfg.steps > 0
            ? evolve_stepped(psi0, cfg.geometry, basis, T, cfg.steps)
            : evolve_stepped_converged(psi0, cfg.geometry, basis, T);
    const EvolutionResult adiab = evolve_adiabatic(psi0, cfg.geometry, basis);

    const auto row = [&](const char* name, const EvolutionResult& r) {
        const double fid = std::norm(overlap(closed.final_state, r.final_state));
        t.rows.push_back({name, format_sci(r.t_final), format_sci(fid),
                          format_sci(r.norm_drift), format_sci(r.charge_drift),
                          std::to_string(r.step_count)});
    };
    row("closed", closed);
    row("stepped", stepped);
    row("adiabatic", adiab);
    return t;
}

Table experiment_table(const RunConfig& cfg)
{
    const FockBasis basis(cfg.n_max);
    const ExperimentRecord r =
        run_cycle_experiment(cfg.N, cfg.geometry, basis, cfg.method);

    Table t;
    t.columns = {"field", "value"};
    const auto put = [&](const char* k, const std::string& v) {
        t.rows.push_back({k, v});
    };
    put("N", std::to_string(r.N));
    put("n_max", std::to_string(r.n_max));
    put("method", r.method == Method::closed    ? "closed"
                  : r.method == Method::stepped ? "stepped"
                                                : "adiabatic");
    put("theta", format_sci(r.geometry.theta));
    put("lambda", format_sci(r.geometry.lambda));
    put("dnu", format_sci(r.geometry.dnu));
    put("nu_bar", format_sci(r.geometry.nu_bar));
    put("gamma_N", format_sci(r.gamma_N));
    put("gamma_N1", format_sci(r.gamma_N1));
    put("delta_gamma_mod2pi", format_sci(r.delta_gamma_mod2pi));
    put("expval_aniso", format_sci(r.expval_aniso));
    put("expval_iso_ref", format_sci(r.expval_iso_ref));
    put("closed_form_pred", format_sci(r.closed_form_pred));
    put("closed_form_iso_pred", format_sci(r.closed_form_iso_pred));
    put("sign_flip_ratio", format_sci(r.sign_flip_ratio));
    put("final_state_overlap", format_sci(r.final_state_overlap));
    put("signal_null", r.signal_null ? "true" : "false");
    put("suggested_nu_bar", format_sci(r.suggested_nu_bar));
    put("canonical_theta", r.canonical_theta ? "true" : "false");
    put("lamb_dicke_ok", r.validity.lamb_dicke_ok ? "true" : "false");
    put("weak_drive_ok", r.validity.weak_drive_ok ? "true" : "false");
    put("small_anisotropy_ok", r.validity.small_anisotropy_ok ? "true" : "false");
    put("adiabatic_ratio", format_sci(r.validity.adiabatic_ratio));
    put("adiabatic_ok", r.validity.adiabatic_ok ? "true" : "false");
    put("dnu_max", format_sci(r.validity.dnu_max));
    put("cycle_period", format_sci(r.validity.cycle_period));
    put("coherence_time", format_sci(r.validity.coherence_time));
    put("cycle_vs_coherence", format_sci(r.validity.cycle_vs_coherence));
    put("decoherence_marginal", r.validity.decoherence_marginal ? "true" : "false");
    return t;
}

struct SweepPoint {
    double dnu_over_lambda;
    int N;
    double theta;
};

std::vector<std::string> sweep_row(const RunConfig& cfg, const SweepPoint& p)
{
    const double lambda = cfg.geometry.lambda;
    const double nu_bar = cfg.geometry.nu_bar;
    const double dnu = p.dnu_over_lambda * lambda;
    const CouplingGeometry g = effective_geometry(
        p.theta, lambda, nu_bar + dnu / 2.0, nu_bar - dnu / 2.0);
    const FockBasis basis(p.N + 1);
    const ExperimentRecord r =
        run_cycle_experiment(p.N, g, basis, Method::adiabatic);

    // deviation of the adiabatic cycle from the exact one
    const ComplexVector psi0 = prepare_superposition(p.N, g, basis);
    const double T = cycle_period(g);
    const ComplexVector exact = evolve_exact_closed(psi0, g, basis, T).final_state;
    const ComplexVector adiab = evolve_adiabatic(psi0, g, basis).final_state;
    const double adiab_err = 1.0 - std::norm(overlap(adiab, exact));

    return {format_sci(p.dnu_over_lambda),
            std::to_string(p.N),
            format_sci(p.theta),
            format_sci(r.delta_gamma_mod2pi),
            format_sci(r.expval_aniso),
            format_sci(r.expval_iso_ref),
            format_sci(r.sign_flip_ratio),
            format_sci(r.final_state_overlap),
            format_sci(adiab_err),
            r.signal_null ? "true" : "false"};
}

int thread_cap()
{
    if (const char* env = std::getenv("ANISOTRAP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Table sweep_table(const RunConfig& cfg, std::size_t skip_rows)
{
    std::vector<SweepPoint> grid;
    for (double d : cfg.sweep_dnu_over_lambda)
        for (int N : cfg.sweep_N)
            for (double theta : cfg.sweep_theta)
                grid.push_back({d, N, theta});

    Table t;
    t.columns = {"dnu_over_lambda",  "N",
                 "theta",            "delta_gamma_mod2pi",
                 "expval_aniso",     "expval_iso_ref",
                 "sign_flip_ratio",  "final_state_overlap",
                 "adiabatic_error",  "signal_null"};
    if (skip_rows >= grid.size())
        return t;

    const std::size_t todo = grid.size() - skip_rows;
    std::vector<std::vector<std::string>> rows(todo);
    std::vector<std::exception_ptr> errors(todo);
    std::atomic<std::size_t> next{0};
    const int workers =
        std::min<std::size_t>(thread_cap(), todo);

    const auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < todo;) {
            try {
                rows[i] = sweep_row(cfg, grid[skip_rows + i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();

    for (std::size_t i = 0; i < todo; ++i)
        if (errors[i])
            std::rethrow_exception(errors[i]);
    t.rows = std::move(rows);
    return t;
}

std::string render(const Table& t, const ConfigEcho& echo,
                   const std::string& format)
{
    std::ostringstream out;
    write_table(out, t, echo, format);
    return out.str();
}

// Sweep resume: if the target CSV already starts with the same echo+header,
// completed rows are kept verbatim and only the remaining grid points are
// computed; determinism makes the result byte-identical to a fresh run.
int run_sweep(const RunConfig& cfg, const std::string& out_path)
{
    std::size_t skip = 0;
    std::string prefix;
    if (!out_path.empty() && cfg.format == "csv") {
        std::ifstream in(out_path);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            const std::string existing = buf.str();
            const std::string head =
                render(sweep_table(cfg, std::size_t(-1)), cfg.resolved, "csv");
            if (existing.compare(0, head.size(), head) == 0 &&
                (existing.empty() || existing.back() == '\n')) {
                std::size_t lines = 0;
                for (std::size_t pos = head.size();
                     (pos = existing.find('\n', pos)) != std::string::npos; ++pos)
                    ++lines;
                skip = lines;
                prefix = existing;
            }
        }
    }

    const Table t = sweep_table(cfg, skip);
    std::string text;
    if (skip > 0) {
        text = prefix;
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                text += (c ? "," : "") + row[c];
            text += "\n";
        }
    } else {
        text = render(t, cfg.resolved, cfg.format);
    }

    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("cannot open output file '" + out_path + "'");
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"anisotropic-trap ion dynamics: spectra, geometric phases, "
                 "cycle evolution and the sign-flip experiment"};
    app.require_subcommand(1);

    std::string config_path, format_flag, out_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--format", format_flag, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--override", overrides, "key=value, repeatable")
        ->take_all();

    const char* names[] = {"spectrum", "berry", "evolve", "experiment", "sweep"};
    const char* descs[] = {
        "tabulate singlet energies and numeric residuals",
        "tabulate closed-form, connection and Wilson-loop phases",
        "propagate one cycle with all methods, report fidelities",
        "run the full sign-flip protocol",
        "grid over (dnu/lambda, N, theta)"};
    for (int i = 0; i < 5; ++i)
        app.add_subcommand(names[i], descs[i])->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        ConfigMap map;
        if (!config_path.empty())
            map = load_config_file(config_path);
        for (const std::string& kv : overrides)
            apply_override(map, kv);
        if (!format_flag.empty())
            map["format"] = format_flag;
        const RunConfig cfg = resolve_config(map);

        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "sweep")
            return run_sweep(cfg, out_path);

        Table t;
        if (sub == "spectrum")
            t = spectrum_table(cfg);
        else if (sub == "berry")
            t = berry_table(cfg);
        else if (sub == "evolve")
            t = evolve_table(cfg);
        else
            t = experiment_table(cfg);

        const std::string text = render(t, cfg.resolved, cfg.format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw ConfigError("cannot open output file '" + out_path + "'");
            out << text;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PhysicsError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
