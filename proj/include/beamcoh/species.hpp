#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"

namespace beamcoh {

struct Species {
    std::string name;
    double mass = 0.0;               // kg
    double scattering_length = 0.0;  // m, s-wave
    std::string source;              // free-text provenance note
};

// Ordered list of atomic species. Lookup is by exact name; order is
// insertion order (the registry file's order), which keeps every listing
// deterministic.
class SpeciesRegistry {
public:
    SpeciesRegistry() = default;

    // Compiled-in registry, kept in sync with data/species.dat by a test.
    // Masses are standard atomic weights to 5 significant figures;
    // scattering lengths are the usual cold-collision modelling values.
    // Li7's triplet scattering length is physically negative; the
    // magnitude is stored because the mean-field bookkeeping here only
    // ever uses a > 0. Values are written amu-first and nm-first with the
    // same unit conversion as load(), so the file and the table produce
    // bit-identical species.
    static SpeciesRegistry builtin(const PhysicalConstants& pc = {}) {
        SpeciesRegistry reg;
        reg.add({"Na23", 22.990 * pc.amu, 2.75 * 1e-9,
                 "mass: standard atomic weight (5 s.f.); a ~ 52 a0 cold-collision value"});
        reg.add({"Rb87", 86.909 * pc.amu, 5.00 * 1e-9,
                 "mass: standard atomic weight (5 s.f.); a = 5 nm (~94 a0) condensate modelling value"});
        reg.add({"Li7", 7.0160 * pc.amu, 1.46 * 1e-9,
                 "mass: standard atomic weight (5 s.f.); |a| of the negative triplet value (~ -27.6 a0)"});
        return reg;
    }

    // File format, one species per line:
    //   name  mass_amu  scattering_length_nm  source note (rest of line)
    // '#' starts a comment, blank lines are skipped.
    static SpeciesRegistry load(std::istream& in, const PhysicalConstants& pc = {}) {
        SpeciesRegistry reg;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream row(line);
            std::string name;
            if (!(row >> name))
                continue;
            double mass_amu = 0.0;
            double a_nm = 0.0;
            if (!(row >> mass_amu >> a_nm))
                throw parse_error("species registry line " + std::to_string(lineno) +
                                  ": expected 'name mass_amu scattering_length_nm [source]'");
            if (!(mass_amu > 0.0) || !std::isfinite(mass_amu))
                throw parse_error("species registry line " + std::to_string(lineno) +
                                  ": mass must be finite and > 0");
            if (!(a_nm > 0.0) || !std::isfinite(a_nm))
                throw parse_error("species registry line " + std::to_string(lineno) +
                                  ": scattering length must be finite and > 0");
            std::string source;
            std::getline(row, source);
            if (auto pos = source.find_first_not_of(" \t\r"); pos != std::string::npos) {
                source.erase(0, pos);
                source.erase(source.find_last_not_of(" \t\r") + 1);
            } else {
                source.clear();
            }
            if (reg.contains(name))
                throw parse_error("species registry line " + std::to_string(lineno) +
                                  ": duplicate species '" + name + "'");
            reg.add({name, mass_amu * pc.amu, a_nm * 1e-9, source});
        }
        return reg;
    }

    static SpeciesRegistry load_file(const std::string& path, const PhysicalConstants& pc = {}) {
        std::ifstream in(path);
        if (!in)
            throw input_error("cannot open species registry '" + path + "'");
        return load(in, pc);
    }

    void add(Species sp) { entries_.push_back(std::move(sp)); }

    bool contains(std::string_view name) const {
        for (const auto& sp : entries_)
            if (sp.name == name)
                return true;
        return false;
    }

    const Species& lookup(std::string_view name) const {
        for (const auto& sp : entries_)
            if (sp.name == name)
                return sp;
        std::string known;
        for (const auto& sp : entries_) {
            if (!known.empty())
                known += ", ";
            known += sp.name;
        }
        throw unknown_species_error("unknown species '" + std::string(name) +
                                    "' (known: " + known + ")");
    }

    const std::vector<Species>& list() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Species> entries_;
};

} // namespace beamcoh
