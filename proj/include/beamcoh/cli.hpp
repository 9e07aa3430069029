#pragma once

#include <algorithm>
#include <exception>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "atomlaser.hpp"
#include "beamsim.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "species.hpp"
#include "version.hpp"

namespace beamcoh {

// Exit codes of the command-line frontend.
enum cli_exit : int {
    cli_ok = 0,
    cli_input_error = 2,
    cli_domain_error = 3,
    cli_internal_error = 4,
};

// Command result in both renderings. The structured form is a JSON object
// with full-precision numbers; the human form prints the same entries,
// except that keys ending in "_um" are shown with 4 decimals and entries
// marked display-only are added for scale. Insertion order is preserved,
// so identical invocations give identical bytes.
class OutputEnvelope {
public:
    explicit OutputEnvelope(std::string command) : command_(std::move(command)) {}

    void input(const std::string& key, const nlohmann::ordered_json& value) {
        inputs_[key] = value;
    }
    void result(const std::string& key, const nlohmann::ordered_json& value) {
        results_[key] = value;
    }
    // Human-mode-only line, e.g. an auto-scaled length with its unit.
    void display(const std::string& key, const std::string& text) {
        displays_.emplace_back(key, text);
    }

    void print_json(std::ostream& out) const {
        nlohmann::ordered_json doc;
        doc["command"] = command_;
        doc["inputs"] = inputs_;
        doc["results"] = results_;
        doc["artifact_version"] = version;
        out << doc.dump(2) << '\n';
    }

    void print_human(std::ostream& out) const {
        out << "command: " << command_ << '\n';
        out << "inputs:\n";
        for (const auto& [key, value] : inputs_.items())
            out << "  " << key << ": " << render(key, value) << '\n';
        out << "results:\n";
        for (const auto& [key, value] : results_.items())
            out << "  " << key << ": " << render(key, value) << '\n';
        for (const auto& [key, text] : displays_)
            out << "  " << key << ": " << text << '\n';
        out << "artifact_version: " << version << '\n';
    }

    void print(std::ostream& out, bool json_mode) const {
        if (json_mode)
            print_json(out);
        else
            print_human(out);
    }

private:
    static std::string render(const std::string& key, const nlohmann::ordered_json& value) {
        if (value.is_number_float()) {
            const double v = value.get<double>();
            if (key.size() >= 3 && key.compare(key.size() - 3, 3, "_um") == 0)
                return format_fixed(v, 4);
            return format_double(v);
        }
        if (value.is_string())
            return value.get<std::string>();
        return value.dump();
    }

    std::string command_;
    nlohmann::ordered_json inputs_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json results_ = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, std::string>> displays_;
};

namespace detail {

// Auto-scaled human-facing length: km above 1 km, um below 1 mm.
inline std::string scaled_length(double meters) {
    const double mag = std::abs(meters);
    if (mag >= 1e3)
        return format_fixed(meters / 1e3, 4) + " km";
    if (mag < 1e-3)
        return format_fixed(meters * 1e6, 4) + " um";
    return format_fixed(meters, 4) + " m";
}

struct CliContext {
    bool json = false;
    std::string registry_path;
    double g = PhysicalConstants{}.g;

    PhysicalConstants constants() const {
        PhysicalConstants pc;
        pc.g = g;
        return pc;
    }
    SpeciesRegistry registry(const PhysicalConstants& pc) const {
        if (registry_path.empty())
            return SpeciesRegistry::builtin(pc);
        return SpeciesRegistry::load_file(registry_path, pc);
    }
};

inline void run_optical(const CliContext& ctx, double bandwidth_hz, int n, std::ostream& out) {
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw input_error("--bandwidth-hz must be finite and > 0");
    if (n < 1)
        throw input_error("--n must be >= 1");
    const PhysicalConstants pc = ctx.constants();
    const double length = coherence_length_optical(bandwidth_hz, n, pc);
    OutputEnvelope env("optical");
    env.input("bandwidth_hz", bandwidth_hz);
    env.input("n", n);
    env.result("coherence_length_m", length);
    env.display("coherence_length", scaled_length(length));
    env.print(out, ctx.json);
}

inline void run_atom(const CliContext& ctx, const std::string& species_name,
                     const std::string& trap_path, std::optional<double> zr_flag, int n,
                     std::ostream& out, std::ostream& err) {
    if (n < 1)
        throw input_error("--n must be >= 1");
    if (zr_flag && (!(*zr_flag >= 0.0) || !std::isfinite(*zr_flag)))
        throw input_error("--zr must be finite and >= 0");
    const PhysicalConstants pc = ctx.constants();
    const SpeciesRegistry registry = ctx.registry(pc);

    OutputEnvelope env("atom");
    DerivedTrapQuantities dq;
    std::optional<DerivedTrapQuantities> trap_dq;
    if (!trap_path.empty()) {
        const TrapFile tf = load_trap_file_path(trap_path, registry);
        std::optional<double> override_zr = zr_flag;
        if (!override_zr)
            override_zr = tf.z_r_override;
        if (zr_flag)
            err << "warning: --zr takes precedence over the trap config's extraction point\n";
        if (override_zr) {
            // The trap-derived block is still reported when it exists, but
            // the pinned z_r wins; a trap whose own extraction point would
            // be negative is then only a warning.
            try {
                trap_dq = derive_trap_quantities(tf.config, pc);
            } catch (const negative_extraction_error& e) {
                err << "warning: " << e.what() << " (continuing with the z_r override)\n";
            }
            dq = quantities_from_extraction(tf.config.species, *override_zr, pc);
        } else {
            trap_dq = derive_trap_quantities(tf.config, pc);
            dq = *trap_dq;
        }
        if (trap_dq && !scale_separation_ok(*trap_dq))
            err << "warning: gravitational length l is not small against the condensate radii; "
                   "the asymptotic beam treatment is marginal here\n";
        env.input("trap_file", trap_path);
        env.input("species", tf.config.species.name);
    } else {
        const Species& sp = registry.lookup(species_name);
        dq = quantities_from_extraction(sp, zr_flag.value_or(0.0), pc);
        env.input("species", sp.name);
    }
    env.input("n", n);
    env.input("g_m_per_s2", pc.g);

    const CoherenceResult res = solve_coherence_length(dq.l, dq.z_r, n, dq.species_name);
    env.result("l_m", dq.l);
    env.result("l_um", dq.l * 1e6);
    env.result("z_r_m", dq.z_r);
    env.result("z_r_um", dq.z_r * 1e6);
    env.result("coherence_length_m", res.coherence_length);
    env.result("coherence_length_um", res.coherence_length * 1e6);
    env.result("residual_m32", res.residual);
    if (trap_dq) {
        env.result("mu_J", trap_dq->mu);
        env.result("eta", trap_dq->eta);
        env.result("derived_z_r_m", trap_dq->z_r);
        env.result("x0_m", trap_dq->x0);
        env.result("z0_m", trap_dq->z0);
        env.result("Omega_rf_rad_per_s", trap_dq->Omega_rf);
        env.result("delta_rf_rad_per_s", trap_dq->delta_rf);
        env.result("sigma_m", trap_dq->sigma);
        env.result("omega_bar_rad_per_s", trap_dq->omega_bar);
    }
    env.print(out, ctx.json);
}

inline void run_simulate(const CliContext& ctx, const std::string& spectrum_path, double z_min,
                         double z_max, int samples, const std::string& species_name,
                         double mass_kg, std::ostream& out) {
    if (!std::isfinite(z_min) || !std::isfinite(z_max) || !(z_min < z_max))
        throw input_error("--z-min must be < --z-max and both finite");
    if (samples < 2)
        throw input_error("--samples must be >= 2");
    const PhysicalConstants pc = ctx.constants();
    double mass = mass_kg;
    if (!species_name.empty())
        mass = ctx.registry(pc).lookup(species_name).mass;
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw input_error("--mass-kg must be finite and > 0");

    const MomentumSpectrum spec = load_spectrum_file(spectrum_path, mass);

    std::vector<double> grid(static_cast<std::size_t>(samples));
    const double step = (z_max - z_min) / (samples - 1);
    for (int i = 0; i < samples; ++i)
        grid[static_cast<std::size_t>(i)] = z_min + i * step;
    grid.back() = z_max;

    const CurrentProfile profile = current_density_spectral(spec, grid, pc);
    write_profile_csv(out, profile);

    const auto detected = locate_foci_numeric(profile);
    if (detected.empty())
        out << "# foci_detected_m: none\n";
    else {
        out << "# foci_detected_m:";
        for (double z : detected)
            out << ' ' << format_double(z);
        out << '\n';
    }
    const auto& comps = spec.components();
    if (comps.size() < 2) {
        out << "# no foci (single component)\n";
        return;
    }
    for (std::size_t a = 0; a < comps.size(); ++a)
        for (std::size_t b = a + 1; b < comps.size(); ++b) {
            out << "# pair k_rad_per_m=" << format_double(comps[a].k)
                << " k_prime_rad_per_m=" << format_double(comps[b].k)
                << " predicted_foci_m:";
            if (comps[a].k == comps[b].k) {
                out << " none (equal wavenumbers)\n";
                continue;
            }
            const double dk = std::abs(comps[b].k - comps[a].k);
            bool any = false;
            for (int order = 1;; ++order) {
                const double z = 2.0 * pi * order / dk;
                if (z > z_max)
                    break;
                if (z >= z_min) {
                    out << ' ' << format_double(z);
                    any = true;
                }
            }
            if (!any)
                out << " none in range";
            out << '\n';
        }
}

inline void run_species_list(const CliContext& ctx, std::ostream& out) {
    const PhysicalConstants pc = ctx.constants();
    const SpeciesRegistry registry = ctx.registry(pc);
    OutputEnvelope env("species list");
    if (!ctx.registry_path.empty())
        env.input("registry", ctx.registry_path);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& sp : registry.list()) {
        nlohmann::ordered_json row;
        row["name"] = sp.name;
        row["mass_kg"] = sp.mass;
        row["mass_amu"] = sp.mass / pc.amu;
        row["scattering_length_m"] = sp.scattering_length;
        row["scattering_length_nm"] = sp.scattering_length * 1e9;
        row["source"] = sp.source;
        rows.push_back(row);
    }
    if (ctx.json) {
        env.result("species", rows);
        env.print_json(out);
        return;
    }
    out << "command: species list\n";
    out << "species (" << registry.size() << "):\n";
    for (const auto& sp : registry.list()) {
        out << "  " << sp.name << ": mass_kg " << format_double(sp.mass) << " (amu "
            << format_double(sp.mass / pc.amu) << "), scattering_length_m "
            << format_double(sp.scattering_length) << " (nm "
            << format_double(sp.scattering_length * 1e9) << ")\n";
        if (!sp.source.empty())
            out << "    source: " << sp.source << '\n';
    }
    out << "artifact_version: " << version << '\n';
}

} // namespace detail

// Full frontend, callable in-process. Streams default to std::cout and
// std::cerr; tests substitute their own.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"Self-focusing positions and coherence lengths for photon and atom beams"};
    app.require_subcommand(1);

    detail::CliContext ctx;
    app.add_flag("--json", ctx.json, "Emit the machine-readable envelope");
    app.add_option("--registry", ctx.registry_path, "Species registry file replacing the built-in table");
    app.add_option("--g", ctx.g, "Gravitational acceleration, m/s^2");

    auto* optical = app.add_subcommand("optical", "Optical coherence length n c / bandwidth");
    double bandwidth_hz = 0.0;
    int optical_n = 1;
    optical->add_option("--bandwidth-hz", bandwidth_hz, "Spectral bandwidth, Hz")->required();
    optical->add_option("--n", optical_n, "Rephasing order");

    auto* atom = app.add_subcommand("atom", "Atom-laser coherence length");
    std::string atom_species;
    std::string trap_path;
    int atom_n = 1;
    double zr_value = 0.0;
    auto* species_opt = atom->add_option("--species", atom_species, "Species name from the registry");
    auto* trap_opt = atom->add_option("--trap", trap_path, "Trap config file");
    auto* zr_opt = atom->add_option("--zr", zr_value, "Extraction point z_r, m");
    atom->add_option("--n", atom_n, "Rephasing order");
    species_opt->excludes(trap_opt);

    auto* simulate = app.add_subcommand("simulate", "Current-density profile of a discrete spectrum");
    std::string spectrum_path;
    double z_min = 0.0;
    double z_max = 0.0;
    int samples = 0;
    std::string sim_species;
    double mass_kg = 1.0;
    simulate->add_option("--spectrum", spectrum_path, "Spectrum file (k_rad_per_m amplitude)")->required();
    simulate->add_option("--z-min", z_min, "Grid start, m")->required();
    simulate->add_option("--z-max", z_max, "Grid end, m")->required();
    simulate->add_option("--samples", samples, "Grid point count")->required();
    auto* sim_species_opt = simulate->add_option("--species", sim_species, "Species name fixing the particle mass");
    auto* sim_mass_opt = simulate->add_option("--mass-kg", mass_kg, "Particle mass, kg (default 1)");
    sim_species_opt->excludes(sim_mass_opt);

    auto* species = app.add_subcommand("species", "Species registry commands");
    species->require_subcommand(1);
    auto* species_list = species->add_subcommand("list", "List the active registry");

    try {
        std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reversed args
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? cli_ok : cli_input_error;
    }

    try {
        if (*optical) {
            detail::run_optical(ctx, bandwidth_hz, optical_n, out);
        } else if (*atom) {
            if (atom_species.empty() && trap_path.empty())
                throw input_error("atom: either --species or --trap is required");
            std::optional<double> zr_flag;
            if (zr_opt->count() > 0)
                zr_flag = zr_value;
            detail::run_atom(ctx, atom_species, trap_path, zr_flag, atom_n, out, err);
        } else if (*simulate) {
            detail::run_simulate(ctx, spectrum_path, z_min, z_max, samples, sim_species, mass_kg,
                                 out);
        } else if (*species_list) {
            detail::run_species_list(ctx, out);
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return cli_input_error;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return cli_domain_error;
    } catch (const solver_error& e) {
        err << "error: " << e.what() << '\n';
        return cli_internal_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return cli_internal_error;
    }
    return cli_ok;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run_cli(std::move(args), out, err);
}

} // namespace beamcoh
