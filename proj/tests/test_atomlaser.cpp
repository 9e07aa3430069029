#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <beamcoh/atomlaser.hpp>
#include <beamcoh/species.hpp>

using namespace beamcoh;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Rb-87 condensate, isotropic 100 Hz trap, rf tuned 246 Hz short of the
// field offset so the extraction point sits slightly below the trap
// center. All derived numbers pinned from a high-precision evaluation of
// the same formulas.
TrapConfig rb87_fixture() {
    TrapConfig cfg;
    cfg.species = SpeciesRegistry::builtin().lookup("Rb87");
    cfg.atom_number = 1e5;
    cfg.omega_x = 2.0 * pi * 100.0;
    cfg.omega_perp = 2.0 * pi * 100.0;
    cfg.B_rf = 1e-7;
    cfg.B_0 = 1e-4;
    cfg.omega_rf = 2.0 * pi * 700058.0;
    return cfg;
}

// Same trap with the rf frequency solving 2 hbar delta_rf = -4 mu / 7
// exactly, minus a tiny safety margin, so eta sits just above zero.
TrapConfig rb87_zero_eta_fixture() {
    TrapConfig cfg = rb87_fixture();
    const PhysicalConstants pc;
    const double mu = chemical_potential(cfg, pc);
    cfg.omega_rf = (pc.mu_B * cfg.B_0 / 2.0 + 2.0 * mu / 7.0) / pc.hbar - 2.0 * pi * 1e-4;
    return cfg;
}

} // namespace

TEST_CASE("gravitational length per species") {
    const PhysicalConstants pc;
    const auto reg = SpeciesRegistry::builtin(pc);
    CHECK_THAT(gravitational_length(reg.lookup("Na23").mass, pc),
               WithinRel(7.30031899757948e-7, 1e-12));
    CHECK_THAT(gravitational_length(reg.lookup("Rb87").mass, pc),
               WithinRel(3.00832428722583e-7, 1e-12));
    CHECK_THAT(gravitational_length(reg.lookup("Li7").mass, pc),
               WithinRel(1.61055204981508e-6, 1e-12));

    const double l_rb = gravitational_length(reg.lookup("Rb87").mass, pc);
    CHECK(l_rb >= 0.28e-6);
    CHECK(l_rb <= 0.31e-6);

    CHECK_THROWS_AS(gravitational_length(0.0, pc), input_error);
    CHECK_THROWS_AS(gravitational_length(-1e-25, pc), input_error);

    PhysicalConstants heavy = pc;
    heavy.g = 8.0 * pc.g;
    CHECK_THAT(gravitational_length(reg.lookup("Rb87").mass, heavy),
               WithinRel(l_rb / 2.0, 1e-15));
}

TEST_CASE("trap config validation") {
    TrapConfig cfg = rb87_fixture();
    CHECK_NOTHROW(cfg.validate());
    cfg.atom_number = 0.5;
    CHECK_THROWS_AS(cfg.validate(), input_error);
    cfg = rb87_fixture();
    cfg.omega_x = 0.0;
    CHECK_THROWS_AS(cfg.validate(), input_error);
    cfg = rb87_fixture();
    cfg.omega_rf = -1.0;
    CHECK_THROWS_AS(cfg.validate(), input_error);
    cfg = rb87_fixture();
    cfg.B_rf = -1e-9;
    CHECK_THROWS_AS(cfg.validate(), input_error);
    cfg = rb87_fixture();
    cfg.coupling_factor = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(cfg.validate(), input_error);
    cfg = rb87_fixture();
    cfg.species.scattering_length = 0.0;
    CHECK_THROWS_AS(cfg.validate(), input_error);
}

TEST_CASE("chemical potential pinned regression and scalings") {
    const PhysicalConstants pc;
    TrapConfig cfg = rb87_fixture();
    const double mu = chemical_potential(cfg, pc);
    CHECK_THAT(mu, WithinRel(1.14060179425633e-30, 1e-12));

    SECTION("mu grows as N^{2/5}") {
        TrapConfig big = cfg;
        big.atom_number = cfg.atom_number * std::pow(2.0, 2.5);
        CHECK_THAT(chemical_potential(big, pc), WithinRel(2.0 * mu, 1e-12));
    }
    SECTION("mu grows as a^{2/5}") {
        TrapConfig wide = cfg;
        wide.species.scattering_length = 32.0 * cfg.species.scattering_length;
        CHECK_THAT(chemical_potential(wide, pc), WithinRel(4.0 * mu, 1e-12));
    }
    SECTION("vanishing interaction sends mu to zero") {
        TrapConfig weak = cfg;
        weak.species.scattering_length = 1e-300;
        CHECK(chemical_potential(weak, pc) < 1e-100);
    }
}

TEST_CASE("derived trap quantities match the pinned fixture") {
    const PhysicalConstants pc;
    const auto dq = derive_trap_quantities(rb87_fixture(), pc);
    CHECK(dq.species_name == "Rb87");
    CHECK_THAT(dq.mass, WithinRel(1.44315789739139e-25, 1e-12));
    CHECK_THAT(dq.omega_bar, WithinRel(628.318530717959, 1e-12));
    CHECK_THAT(dq.sigma, WithinRel(1.07842816348824e-6, 1e-12));
    CHECK_THAT(dq.mu, WithinRel(1.14060179425633e-30, 1e-12));
    CHECK_THAT(dq.l, WithinRel(3.00832428722583e-7, 1e-12));
    CHECK_THAT(dq.x0, WithinRel(6.32769051080185e-6, 1e-12));
    CHECK_THAT(dq.Omega_rf, WithinRel(3109.18389314320, 1e-12));
    CHECK_THAT(dq.delta_rf, WithinRel(-1544.11017843490, 1e-12));
    CHECK_THAT(dq.eta, WithinRel(0.0182069683151712, 1e-12));
    CHECK_THAT(dq.z_r, WithinRel(5.76040303191892e-8, 1e-12));
    CHECK_THAT(dq.U, WithinRel(4.84192813967492e-46, 1e-12));
    CHECK(dq.z_r == dq.eta * dq.z0 / 2.0);
    CHECK(dq.constants.g == pc.g);

    SECTION("isotropic trap has equal radii") {
        CHECK(dq.x0 == dq.y0);
        CHECK(dq.y0 == dq.z0);
    }
    SECTION("scale separation holds for this trap") {
        CHECK(scale_separation_ok(dq));
    }
}

TEST_CASE("rf tuned to the extraction threshold gives eta near zero") {
    const auto dq = derive_trap_quantities(rb87_zero_eta_fixture());
    CHECK_THAT(dq.eta, WithinAbs(0.0, 1e-6));
    CHECK(dq.z_r >= 0.0);
    CHECK(dq.z_r < 1e-13);
}

TEST_CASE("rf above the extraction threshold is rejected, not clamped") {
    TrapConfig cfg = rb87_fixture();
    cfg.omega_rf = 2.0 * pi * 701000.0;
    try {
        derive_trap_quantities(cfg);
        FAIL("expected a negative-extraction error");
    } catch (const negative_extraction_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("negative") != std::string::npos);
        CHECK(msg.find("eta") != std::string::npos);
    }
}

TEST_CASE("offset curvature feeds back through one fixed-point pass") {
    const PhysicalConstants pc;
    TrapConfig cfg = rb87_fixture();
    cfg.offset_curvature = 2e-18;
    const auto dq = derive_trap_quantities(cfg, pc);
    const auto flat = derive_trap_quantities(rb87_fixture(), pc);
    CHECK(dq.z_r != flat.z_r);

    // Manual two-pass evaluation mirroring the documented rule.
    const double v0 = pc.mu_B * cfg.B_0 / 2.0;
    const auto eta_of = [&](double v_off) {
        return (2.0 * (v_off - pc.hbar * cfg.omega_rf) + 4.0 * flat.mu / 7.0) /
               (2.0 * flat.mass * pc.g * flat.z0);
    };
    const double zr1 = eta_of(v0) * flat.z0 / 2.0;
    const double v1 = v0 + cfg.offset_curvature * zr1 * zr1 / 2.0;
    const double zr2 = eta_of(v1) * flat.z0 / 2.0;
    CHECK_THAT(dq.z_r, WithinRel(zr2, 1e-14));
    CHECK_THAT(dq.delta_rf, WithinRel((v1 - pc.hbar * cfg.omega_rf) / pc.hbar, 1e-14));
}

TEST_CASE("scale separation fails for a sparse condensate") {
    const PhysicalConstants pc;
    TrapConfig cfg = rb87_fixture();
    cfg.atom_number = 100.0;
    // Retune the rf to this trap's own extraction threshold; the small
    // condensate shrinks the radii toward l, which is the point.
    cfg.omega_rf =
        (pc.mu_B * cfg.B_0 / 2.0 + 2.0 * chemical_potential(cfg, pc) / 7.0) / pc.hbar -
        2.0 * pi * 1e-4;
    CHECK_FALSE(scale_separation_ok(derive_trap_quantities(cfg, pc)));
}

TEST_CASE("local wavenumber and velocity") {
    const PhysicalConstants pc;
    DerivedTrapQuantities dq;
    dq.l = 0.3008e-6;
    dq.z_r = 0.0;
    dq.mass = 1.44315789739139e-25;
    dq.constants = pc;

    SECTION("pinned direct evaluation") {
        CHECK_THAT(local_wavenumber(dq, 1e-6), WithinRel(6061543.86211330, 1e-12));
    }
    SECTION("unit scaled depth gives k = 1/l") {
        CHECK_THAT(local_wavenumber(dq, dq.l), WithinRel(1.0 / dq.l, 1e-14));
    }
    SECTION("turning point") {
        dq.z_r = 2e-7;
        CHECK(local_wavenumber(dq, -dq.z_r) == 0.0);
        CHECK(local_velocity(dq, -dq.z_r) == 0.0);
        CHECK_THROWS_AS(local_wavenumber(dq, -dq.z_r - 1e-12), beamcoh::domain_error);
        CHECK_THROWS_AS(local_velocity(dq, -dq.z_r - 1e-12), beamcoh::domain_error);
    }
    SECTION("quadrupling the depth doubles k and v") {
        const double z = 0.77e-6;
        CHECK(local_wavenumber(dq, 4.0 * z) == 2.0 * local_wavenumber(dq, z));
        CHECK(local_velocity(dq, 4.0 * z) == 2.0 * local_velocity(dq, z));
    }
    SECTION("de Broglie relation is a shared code path") {
        for (double z : {1e-8, 3.3e-7, 1e-6, 4.2e-5}) {
            const double k = local_wavenumber(dq, z);
            const double v = local_velocity(dq, z);
            CHECK_THAT(dq.mass * v, Catch::Matchers::WithinULP(pc.hbar * k, 4));
        }
    }
    SECTION("free-fall identity needs the true gravitational length") {
        dq.l = gravitational_length(dq.mass, pc);
        dq.z_r = 1.7e-7;
        for (double z : {0.0, 1e-7, 2.9e-6, 8e-5}) {
            const double v = local_velocity(dq, z);
            CHECK_THAT(v * v, WithinRel(2.0 * pc.g * (z + dq.z_r), 1e-12));
        }
    }
}

TEST_CASE("beam wavefunction at the extraction axis") {
    const PhysicalConstants pc;
    const TrapConfig cfg = rb87_fixture();
    const auto dq = derive_trap_quantities(cfg, pc);

    SECTION("pinned modulus at unit scaled depth") {
        const double z = dq.l - dq.z_r;  // zeta_r = 1
        const auto pt = evaluate_psi0(dq, cfg, 0.0, 0.0, z, 0.0);
        CHECK_THAT(pt.zeta_r, WithinRel(1.0, 1e-12));
        CHECK_THAT(std::abs(pt.psi0), WithinRel(66248826.4498176, 1e-10));
        CHECK_THAT(pt.density, WithinRel(4.38890700597806e15, 1e-10));
        CHECK(pt.psi0.real() < 0.0);  // amplitude prefactor is negative
        CHECK(pt.density == std::norm(pt.psi0));
        CHECK(pt.k == local_wavenumber(dq, z));
        CHECK(pt.v == pc.hbar * pt.k / dq.mass);
    }

    SECTION("center of a zero-extraction trap reaches sqrt(mu/U)") {
        const TrapConfig cfg0 = rb87_zero_eta_fixture();
        const auto dq0 = derive_trap_quantities(cfg0);
        const auto pt = evaluate_psi0(dq0, cfg0, 0.0, 0.0, dq0.l, 0.0);
        const double prefactor =
            std::sqrt(pi) * pc.hbar * dq0.Omega_rf / (dq0.mass * pc.g * dq0.l);
        const double phi = std::abs(pt.psi0) * std::pow(pt.zeta_r, 0.25) / prefactor;
        CHECK_THAT(phi, WithinRel(std::sqrt(dq0.mu / dq0.U), 1e-9));
    }

    SECTION("envelope law: density scales as inverse square root of depth") {
        const auto ref = evaluate_psi0(dq, cfg, 0.0, 0.0, dq.l, 0.0);
        const double invariant = ref.density * std::sqrt(ref.zeta_r);
        for (double z : {2.0 * dq.l, 5.0 * dq.l, 20.0 * dq.l}) {
            const auto pt = evaluate_psi0(dq, cfg, 0.0, 0.0, z, 0.0);
            CHECK_THAT(pt.density * std::sqrt(pt.zeta_r), WithinRel(invariant, 1e-12));
        }
    }

    SECTION("coupling factor scales the amplitude linearly") {
        TrapConfig half = cfg;
        half.coupling_factor = 0.5;
        const auto full = evaluate_psi0(dq, cfg, 0.0, 0.0, dq.l, 0.0);
        const auto damped = evaluate_psi0(dq, half, 0.0, 0.0, dq.l, 0.0);
        CHECK_THAT(std::abs(damped.psi0), WithinRel(0.5 * std::abs(full.psi0), 1e-14));
    }

    SECTION("Thomas-Fermi edge and beyond") {
        const double edge = dq.x0 * std::sqrt(1.0 - (dq.z_r / dq.z0) * (dq.z_r / dq.z0));
        const auto center = evaluate_psi0(dq, cfg, 0.0, 0.0, dq.l, 0.0);
        const auto near_edge = evaluate_psi0(dq, cfg, edge * (1.0 - 1e-13), 0.0, dq.l, 0.0);
        CHECK(std::abs(near_edge.psi0) < 1e-5 * std::abs(center.psi0));
        CHECK_THROWS_AS(evaluate_psi0(dq, cfg, edge * (1.0 + 1e-13), 0.0, dq.l, 0.0),
                        outside_condensate_error);
    }

    SECTION("turning region is rejected") {
        CHECK_THROWS_AS(evaluate_psi0(dq, cfg, 0.0, 0.0, -dq.z_r, 0.0), turning_point_error);
        CHECK_THROWS_AS(evaluate_psi0(dq, cfg, 0.0, 0.0, -dq.z_r - dq.l, 0.0),
                        turning_point_error);
    }

    SECTION("time evolution needs the trapped-state energy") {
        CHECK_THROWS_AS(evaluate_psi0(dq, cfg, 0.0, 0.0, dq.l, 1e-3), input_error);
        TrapConfig with_energy = cfg;
        with_energy.E_minus1 = 3.2e-31;
        const auto at0 = evaluate_psi0(dq, with_energy, 0.0, 0.0, dq.l, 0.0);
        const double t = 1e-3;
        const auto att = evaluate_psi0(dq, with_energy, 0.0, 0.0, dq.l, t);
        CHECK_THAT(att.density, WithinRel(at0.density, 1e-12));
        const double shift = -*with_energy.E_minus1 * t / pc.hbar;
        const std::complex<double> expected =
            at0.psi0 * std::complex<double>{std::cos(shift), std::sin(shift)};
        CHECK(std::abs(att.psi0 - expected) < 1e-9 * std::abs(at0.psi0));
    }

    SECTION("partial quantities are rejected") {
        const auto bare = quantities_from_extraction(cfg.species, 0.0, pc);
        CHECK_THROWS_AS(evaluate_psi0(bare, cfg, 0.0, 0.0, 1e-6, 0.0), input_error);
    }
}

TEST_CASE("coherence residual") {
    const PhysicalConstants pc;
    DerivedTrapQuantities dq;
    dq.l = 0.3008e-6;
    dq.z_r = 0.0;
    dq.mass = 1.44315789739139e-25;
    dq.constants = pc;

    SECTION("boundary value at z = 0") {
        CHECK_THAT(coherence_residual(dq, 0.0, 1), WithinRel(-1.03656518044052e-9, 1e-12));
        for (int n : {1, 2, 5})
            CHECK_THAT(coherence_residual(dq, 0.0, n),
                       WithinRel(-2.0 * n * pi * std::pow(dq.l, 1.5), 1e-15));
    }
    SECTION("closed-form root at zero extraction") {
        for (int n = 1; n <= 5; ++n) {
            const double z = std::pow(2.0 * n * pi, 2.0 / 3.0) * dq.l;
            const double scale = 2.0 * n * pi * std::pow(dq.l, 1.5);
            CHECK_THAT(coherence_residual(dq, z, n), WithinAbs(0.0, 1e-12 * scale));
        }
    }
    SECTION("one shallow valley, then strictly increasing") {
        // For z_r > 0 the left-hand side dips below its z = 0 value first
        // (stationary point near 0.48 z_r) and only then grows without
        // bound, so the positive root stays unique.
        for (double zr : {0.0, 0.5 * dq.l, 2.0 * dq.l}) {
            dq.z_r = zr;
            bool rising = false;
            double prev = coherence_residual(dq, 0.0, 1);
            for (int i = 1; i <= 2000; ++i) {
                const double z = i * (20.0 * dq.l / 2000.0);
                const double cur = coherence_residual(dq, z, 1);
                if (rising)
                    CHECK(cur > prev);
                else
                    rising = cur > prev;
                prev = cur;
            }
            CHECK(rising);
            CHECK(prev > 0.0);
        }
    }
    SECTION("domain checks") {
        CHECK_THROWS_AS(coherence_residual(dq, -1e-9, 1), beamcoh::domain_error);
        CHECK_THROWS_AS(coherence_residual(dq, 1e-6, 0), input_error);
        dq.z_r = -1e-9;
        CHECK_THROWS_AS(coherence_residual(dq, 1e-6, 1), beamcoh::domain_error);
    }
}

TEST_CASE("coherence length solves per species") {
    const PhysicalConstants pc;
    const auto reg = SpeciesRegistry::builtin(pc);

    SECTION("zero extraction pinned values") {
        CHECK_THAT(coherence_length(reg.lookup("Na23"), 0.0, 1, pc).coherence_length,
                   WithinRel(2.48577462205313e-6, 1e-10));
        CHECK_THAT(coherence_length(reg.lookup("Rb87"), 0.0, 1, pc).coherence_length,
                   WithinRel(1.02434101449149e-6, 1e-10));
        CHECK_THAT(coherence_length(reg.lookup("Li7"), 0.0, 1, pc).coherence_length,
                   WithinRel(5.48396503529967e-6, 1e-10));
    }

    SECTION("closed form and order law at zero extraction") {
        const double l = gravitational_length(reg.lookup("Rb87").mass, pc);
        const auto base = solve_coherence_length(l, 0.0, 1);
        for (int n = 1; n <= 5; ++n) {
            const auto res = solve_coherence_length(l, 0.0, n);
            CHECK_THAT(res.coherence_length,
                       WithinRel(std::pow(2.0 * n * pi, 2.0 / 3.0) * l, 1e-10));
            CHECK_THAT(res.coherence_length / base.coherence_length,
                       WithinRel(std::cbrt(static_cast<double>(n) * n), 1e-10));
        }
    }

    SECTION("pinned scaled roots at nonzero extraction") {
        // With l = 1 the equation reads (sqrt(z + rho) - sqrt(2 rho)) z = 2 pi.
        CHECK_THAT(solve_coherence_length(1.0, 0.0).coherence_length,
                   WithinRel(3.40502192147675, 1e-10));
        CHECK_THAT(solve_coherence_length(1.0, 1.0).coherence_length,
                   WithinRel(5.51761942367201, 1e-10));
        CHECK_THAT(solve_coherence_length(1.0, 2.0).coherence_length,
                   WithinRel(6.66203340611945, 1e-10));
        CHECK_THAT(solve_coherence_length(1.0, 3.0).coherence_length,
                   WithinRel(7.67840456507691, 1e-10));
    }

    SECTION("homogeneity under joint scaling of l and z_r") {
        const double l = 3.00832428722583e-7;
        const double zr = 0.4 * l;
        const auto base = solve_coherence_length(l, zr, 2);
        for (double lambda : {0.5, 2.0, 3.7, 1e3}) {
            const auto scaled = solve_coherence_length(lambda * l, lambda * zr, 2);
            CHECK_THAT(scaled.coherence_length,
                       WithinRel(lambda * base.coherence_length, 1e-12));
        }
    }

    SECTION("monotone growth with z_r, verified against a sign scan") {
        const double l = gravitational_length(reg.lookup("Rb87").mass, pc);
        double prev = 0.0;
        for (double rho : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            DerivedTrapQuantities dq;
            dq.l = l;
            dq.z_r = rho * l;
            dq.mass = reg.lookup("Rb87").mass;
            dq.constants = pc;
            const auto res = coherence_length(dq, 1);
            CHECK(res.coherence_length > prev);
            prev = res.coherence_length;

            // Bracket the root independently on a dense grid.
            const int steps = 20000;
            const double z_hi = 40.0 * l;
            double lo = 0.0;
            double hi = z_hi;
            for (int i = 1; i <= steps; ++i) {
                const double z = i * (z_hi / steps);
                if (coherence_residual(dq, z, 1) >= 0.0) {
                    hi = z;
                    lo = (i - 1) * (z_hi / steps);
                    break;
                }
            }
            CHECK(res.coherence_length >= lo);
            CHECK(res.coherence_length <= hi);
        }
    }

    SECTION("mass ordering of the species results") {
        const double na = coherence_length(reg.lookup("Na23"), 0.0, 1, pc).coherence_length;
        const double rb = coherence_length(reg.lookup("Rb87"), 0.0, 1, pc).coherence_length;
        const double li = coherence_length(reg.lookup("Li7"), 0.0, 1, pc).coherence_length;
        CHECK(li > na);
        CHECK(na > rb);
    }

    SECTION("result bookkeeping") {
        const auto res = coherence_length(reg.lookup("Na23"), 1e-7, 3, pc);
        CHECK(res.species == "Na23");
        CHECK(res.z_r == 1e-7);
        CHECK(res.n == 3);
        CHECK(res.l == gravitational_length(reg.lookup("Na23").mass, pc));
        const double rhs = 2.0 * res.n * pi * std::pow(res.l, 1.5);
        CHECK(std::abs(res.residual) <= 1e-9 * rhs);
    }

    SECTION("full trap fixture end to end") {
        const auto dq = derive_trap_quantities(rb87_fixture(), pc);
        CHECK_THAT(coherence_length(dq, 1).coherence_length,
                   WithinRel(1.27328543602319e-6, 1e-10));
    }

    SECTION("input validation") {
        CHECK_THROWS_AS(solve_coherence_length(0.0, 0.0), input_error);
        CHECK_THROWS_AS(solve_coherence_length(1e-7, -1e-9), input_error);
        CHECK_THROWS_AS(solve_coherence_length(1e-7, 0.0, 0), input_error);
        CHECK_THROWS_AS(quantities_from_extraction(reg.lookup("Rb87"), -1e-9, pc),
                        input_error);
    }
}
