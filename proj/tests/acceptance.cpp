// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here, next to the checks they govern.

#include <Eigen/Dense>

#include <etpa/atomic_data.hpp>
#include <etpa/biphoton.hpp>
#include <etpa/constants.hpp>
#include <etpa/errors.hpp>
#include <etpa/plasma.hpp>
#include <etpa/quantities.hpp>
#include <etpa/tpa_rates.hpp>
#include <etpa/transition_finder.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace etpa;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d: %s  %s", criterion, ok ? "PASS" : "FAIL", label.c_str());
    if (!ok && !detail.empty()) std::printf("  [%s]", detail.c_str());
    std::printf("\n");
    if (!ok) ++failures;
}

bool close(double a, double b, double rel) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= rel * scale;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

LevelRecord make_level(const std::string& id, const char* term, int twice_j, double energy_cm1) {
    LevelRecord rec;
    rec.id = id;
    rec.configuration = "cfg";
    rec.term = parse_term(term);
    rec.twice_j = twice_j;
    rec.energy = Quantity{energy_cm1, Unit::inverse_cm};
    return rec;
}

// ---- criterion 1: entangled cross-section worked example -------------------

void criterion_1() {
    const auto sigma_e = etpa_cross_section(Quantity{1.0e-48, Unit::centimetre4_second},
                                            Quantity{1.0e-6, Unit::square_centimetre},
                                            Quantity{10.0, Unit::femtosecond});
    const double value = sigma_e.in(Unit::square_centimetre_entangled);
    report(1, "sigma_e = sigma_c / (A_e tau_e) worked example, 1e-12 relative",
           close(value, 1.0e-28, 1e-12), "got " + std::to_string(value));
}

// ---- criterion 2: CW flux vs analytic oracle --------------------------------

void criterion_2() {
    LaserSource laser;
    laser.wavelength = Quantity{400.0, Unit::nanometre};
    laser.mode = CwSource{Quantity{1.0, Unit::watt}};
    BeamGeometry geom;
    geom.spot_diameter = Quantity{1.0e-5, Unit::metre};
    const double flux = photon_flux(laser, geom).average.in(Unit::per_square_metre_second);

    const double area = M_PI * 1.0e-5 * 1.0e-5 / 4.0;
    const double oracle = 1.0 * 400.0e-9 / (constants::hc * area);

    const bool in_band = flux >= 1.0e28 && flux <= 5.0e28;
    const bool matches_oracle = close(flux, oracle, 1e-12);
    const bool near_quoted = close(flux, 2.56e28, 1e-2);
    report(2, "CW 1 W / 10 um / 400 nm flux in [1e28, 5e28], 2.56e28 within 1%",
           in_band && matches_oracle && near_quoted, "got " + std::to_string(flux));
}

// ---- criterion 3: pulsed average equals CW, peak ratio 1e9 ------------------

void criterion_3() {
    BeamGeometry geom;
    geom.spot_diameter = Quantity{1.0e-5, Unit::metre};
    LaserSource cw;
    cw.wavelength = Quantity{400.0, Unit::nanometre};
    cw.mode = CwSource{Quantity{1.0, Unit::watt}};
    LaserSource pulsed;
    pulsed.wavelength = Quantity{400.0, Unit::nanometre};
    pulsed.mode = PulsedSource{Quantity{0.1, Unit::joule}, Quantity{100.0, Unit::picosecond},
                               Quantity{10.0, Unit::hertz}};

    const auto cw_flux = photon_flux(cw, geom);
    const auto pulsed_flux = photon_flux(pulsed, geom);
    const double avg_cw = cw_flux.average.in(Unit::per_square_metre_second);
    const double avg_pulsed = pulsed_flux.average.in(Unit::per_square_metre_second);
    const double ratio = pulsed_flux.peak.in(Unit::per_square_metre_second) / avg_pulsed;

    const bool same_average = close(avg_cw, avg_pulsed, 1e-12);
    // "exactly 1e9" through floating point: a few ulps of headroom
    const bool exact_ratio =
        std::abs(ratio - 1.0e9) <= 4.0 * std::numeric_limits<double>::epsilon() * 1.0e9;
    report(3, "pulsed 100 mJ / 100 ps / 10 Hz: average matches CW, peak/average = 1e9",
           same_average && exact_ratio, "ratio " + std::to_string(ratio));
}

// ---- criterion 4: linear/quadratic dominance and crossover ------------------

void criterion_4() {
    const Quantity sigma_e{1.0e-28, Unit::square_centimetre_entangled};
    const Quantity sigma_c{1.0e-48, Unit::centimetre4_second};

    const auto term_ratio = [&](double flux) {
        const double linear = 1.0e-28 * flux;
        const double quadratic = 1.0e-48 * flux * flux;
        return linear / quadratic;
    };
    const bool low_side = term_ratio(1.0e17) >= 999.0;
    const bool high_side = 1.0 / term_ratio(1.0e23) >= 999.0;

    const double crossover =
        critical_flux(sigma_e, sigma_c).in(Unit::per_square_centimetre_second);
    const bool crossover_ok = close(crossover, 1.0e20, 1e-12);

    // the rate law itself agrees with its two terms at both extremes
    const double low = etpa_rate(sigma_e, sigma_c,
                                 Quantity{1.0e17, Unit::per_square_centimetre_second})
                           .in(Unit::per_second);
    const double high = etpa_rate(sigma_e, sigma_c,
                                  Quantity{1.0e23, Unit::per_square_centimetre_second})
                            .in(Unit::per_second);
    const bool composes = close(low, 1.0e-28 * 1.0e17 + 1.0e-48 * 1.0e34, 1e-12) &&
                          close(high, 1.0e-28 * 1.0e23 + 1.0e-48 * 1.0e46, 1e-12);

    report(4, "linear term dominates 999x at phi_crit/1e3, quadratic at phi_crit*1e3",
           low_side && high_side && crossover_ok && composes);
}

// ---- criterion 5: cgs/SI agreement and the mixed-unit note ------------------

void criterion_5() {
    const double flux_si = 2.5638421077e28;  // from criterion 2 geometry
    const double flux_cgs = flux_si * 1e-4;

    const double r_cgs = classical_tpa_rate(Quantity{1.0e-48, Unit::centimetre4_second},
                                            Quantity{flux_cgs, Unit::per_square_centimetre_second})
                             .in(Unit::per_second);
    const double r_si = classical_tpa_rate(Quantity{1.0e-56, Unit::metre4_second},
                                           Quantity{flux_si, Unit::per_square_metre_second})
                            .in(Unit::per_second);
    const bool systems_agree = close(r_cgs, r_si, 1e-10);
    const bool magnitude_sane = r_cgs > 6.0 && r_cgs < 7.0;

    bool mixing_rejected = false;
    try {
        classical_tpa_rate(Quantity{1.0e-48, Unit::centimetre4_second},
                           Quantity{flux_si, Unit::per_square_metre_second});
    } catch (const UnitSystemError&) {
        mixing_rejected = true;
    }

    const auto checked = test::run_command("--config " + test::fixture_file("rates_config.json") +
                                           " rates --paper-check");
    const bool note_present =
        checked.exit_code == 0 &&
        checked.output.find("(100 cm/m)^4 = 1e8") != std::string::npos &&
        checked.output.find("6.573e+08") != std::string::npos;

    report(5, "cgs and SI rates agree to 1e-10; --paper-check documents the 1e8 mix",
           systems_agree && magnitude_sane && mixing_rejected && note_present);
}

// ---- criterion 6: ionization balance vs dense null space --------------------

// Extended precision: the bordered solve amplifies entry rounding by the
// condition number, so a double-precision oracle cannot hold 1e-10.
std::vector<double> nullspace_fractions(const RateCoefficientTable& table, double te) {
    using Scalar = long double;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const int z_top = table.max_charge();
    const int n = z_top + 1;
    Matrix m = Matrix::Zero(n, n);
    for (int z = 0; z < z_top; ++z) {
        const Scalar s = interpolate_coefficient(table, z, CoefficientKind::ionization, te);
        const Scalar a =
            interpolate_coefficient(table, z + 1, CoefficientKind::recombination, te);
        m(z, z) -= s;
        m(z + 1, z) += s;
        m(z + 1, z + 1) -= a;
        m(z, z + 1) += a;
    }
    for (int row = 1; row < n; ++row) {
        const Scalar scale = m.row(row).cwiseAbs().maxCoeff();
        if (scale > 0.0L) m.row(row) /= scale;
    }
    for (int col = 0; col < n; ++col) m(0, col) = 1.0L;
    Vector rhs = Vector::Zero(n);
    rhs(0) = 1.0L;
    const Vector f = m.fullPivLu().solve(rhs);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = static_cast<double>(f(k));
    return out;
}

void criterion_6() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> z_dist(1, 18), grid_dist(2, 6);
    std::uniform_real_distribution<double> log_coeff(-12.0, -7.0), unit(0.0, 1.0);

    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        RateCoefficientTable table;
        const int z_top = z_dist(rng);
        const int points = grid_dist(rng);
        double te = 0.5 * (1.0 + unit(rng));
        for (int k = 0; k < points; ++k) {
            table.te_grid_ev.push_back(te);
            te *= 1.2 + 2.0 * unit(rng);
        }
        auto series = [&] {
            std::vector<double> values;
            for (int k = 0; k < points; ++k) values.push_back(std::pow(10.0, log_coeff(rng)));
            return values;
        };
        for (int z = 0; z < z_top; ++z) table.ionization.push_back(series());
        for (int z = 0; z < z_top; ++z) table.recombination.push_back(series());

        const double probe =
            table.te_grid_ev.front() *
            std::pow(table.te_grid_ev.back() / table.te_grid_ev.front(), 0.05 + 0.9 * unit(rng));
        const auto chain = fractional_abundance(table, probe);
        const auto oracle = nullspace_fractions(table, probe);
        double sum = 0.0;
        for (std::size_t z = 0; z < oracle.size(); ++z) {
            if (std::abs(chain.fractions[z] - oracle[z]) > 1e-10) {
                ok = false;
                detail = "component mismatch in trial " + std::to_string(trial);
            }
            sum += chain.fractions[z];
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            ok = false;
            detail = "sum " + std::to_string(sum);
        }
    }
    const double seconds = elapsed_s(start);
    if (seconds >= 10.0) {
        ok = false;
        detail = "took " + std::to_string(seconds) + " s";
    }
    report(6, "100 random tables (Z <= 18): chain vs null space 1e-10, sums 1e-12, < 10 s", ok,
           detail);
}

// ---- criterion 7: CR solver oracles -----------------------------------------

void criterion_7() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    auto flat = [](double upsilon) {
        return CollisionStrengthTable::Series{{0.5, 20.0}, {upsilon, upsilon}};
    };

    {  // two-level closed form, 1e-10
        LevelTable levels({make_level("g", "1S", 0, 0.0), make_level("e", "1P*", 2, 80000.0)});
        LineTable lines({LineRecord{"e", "g", 5.0e7, Quantity{125.0, Unit::nanometre}, true}});
        CollisionStrengthTable collisions;
        collisions.insert(0, 1, flat(1.5));
        CRSystem sys{levels, lines, collisions, 1.0e11, 3.0, {"g"}};
        const auto result = solve_cr_populations(sys, {2.0});
        const double gap_ev = 80000.0 / constants::ev_to_inverse_cm;
        const double q_up = excitation_rate_coefficient(1.5, gap_ev, 3.0, 1.0);
        const double q_down = deexcitation_rate_coefficient(1.5, gap_ev, 3.0, 3.0);
        const double expected = 2.0 * 1.0e11 * q_up / (1.0e11 * q_down + 5.0e7);
        if (!close(result.total[0], expected, 1e-10)) {
            ok = false;
            detail = "two-level closed form";
        }
    }

    {  // Boltzmann limit with no radiation, 1e-10
        LevelTable levels({make_level("g", "2S", 1, 0.0), make_level("m", "2P*", 3, 10000.0),
                           make_level("u", "2D", 5, 22000.0)});
        CollisionStrengthTable collisions;
        collisions.insert(0, 1, flat(1.2));
        collisions.insert(1, 2, flat(0.8));
        collisions.insert(0, 2, flat(0.3));
        for (double te : {1.5, 4.0}) {
            CRSystem sys{levels, LineTable{}, collisions, 1.0e12, te, {"g"}};
            const auto result = solve_cr_populations(sys, {1.0});
            for (std::size_t k = 0; k < result.level_ids.size(); ++k) {
                const auto& level = levels.at(result.level_ids[k]);
                const double gap_ev = level.energy_cm1() / constants::ev_to_inverse_cm;
                const double expected = level.statistical_weight() / 2.0 * std::exp(-gap_ev / te);
                if (!close(result.total[k], expected, 1e-10)) {
                    ok = false;
                    detail = "Boltzmann limit";
                }
            }
        }
    }

    {  // per-driver additivity on random systems, 1e-10 against the peak level
        std::mt19937_64 rng(97);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 25 && ok; ++trial) {
            const int n = 5 + static_cast<int>(rng() % 46);
            std::vector<LevelRecord> records;
            double energy = 0.0;
            for (int k = 0; k < n; ++k) {
                const int mult = 1 + static_cast<int>(rng() % 3);
                const int l = static_cast<int>(rng() % 4);
                std::string term = std::to_string(mult) + orbital_letter(l);
                if (rng() % 2) term += '*';
                const int lo = std::abs(2 * l - (mult - 1));
                const int hi = 2 * l + (mult - 1);
                const int twice_j = lo + 2 * static_cast<int>(rng() % ((hi - lo) / 2 + 1));
                records.push_back(
                    make_level("L" + std::to_string(k), term.c_str(), twice_j, energy));
                energy += 500.0 + 7500.0 * unit(rng);
            }
            LevelTable levels(std::move(records));

            std::vector<LineRecord> lines;
            std::set<std::pair<int, int>> used;
            for (int k = 1; k < n; ++k) {
                if (unit(rng) > 0.6) continue;
                const int lower = static_cast<int>(rng() % static_cast<unsigned>(k));
                if (!used.insert({k, lower}).second) continue;
                lines.push_back(LineRecord{levels[static_cast<std::size_t>(k)].id,
                                           levels[static_cast<std::size_t>(lower)].id,
                                           std::pow(10.0, 6.0 + 2.0 * unit(rng)),
                                           Quantity{100.0, Unit::nanometre}, true});
            }

            CollisionStrengthTable collisions;
            for (int k = 1; k < n; ++k) {
                const auto lower = static_cast<std::size_t>(rng() % static_cast<unsigned>(k));
                collisions.insert(lower, static_cast<std::size_t>(k),
                                  flat(0.5 + 2.5 * unit(rng)));
            }

            CRSystem sys{levels, LineTable{std::move(lines)}, collisions, 1.0e12,
                         1.5 + 4.5 * unit(rng), {}};
            std::vector<double> pops;
            sys.drivers.push_back(sys.levels.ground().id);
            pops.push_back(1.0);
            for (std::size_t i = 1; i < sys.levels.size(); ++i) {
                if (unit(rng) < 0.15) {
                    sys.drivers.push_back(sys.levels[i].id);
                    pops.push_back(0.05 + 1.45 * unit(rng));
                }
            }
            const auto result = solve_cr_populations(sys, pops);
            double peak = 0.0;
            for (double value : result.total) peak = std::max(peak, std::abs(value));
            for (std::size_t i = 0; i < result.total.size(); ++i) {
                double sum = 0.0;
                for (const auto& contribution : result.per_driver) sum += contribution[i];
                if (std::abs(sum - result.total[i]) >
                    1e-10 * std::max(peak, std::abs(result.total[i]))) {
                    ok = false;
                    detail = "additivity, trial " + std::to_string(trial);
                }
            }
        }
    }

    const double seconds = elapsed_s(start);
    if (seconds >= 10.0) {
        ok = false;
        detail = "took " + std::to_string(seconds) + " s";
    }
    report(7, "CR solver: two-level 1e-10, Boltzmann 1e-10, additivity 1e-10, < 10 s", ok,
           detail);
}

// ---- criterion 8: finder vs brute force, window arithmetic ------------------

bool oracle_e1(const LevelRecord& x, const LevelRecord& y) {
    if (x.term.parity == y.term.parity) return false;
    if (x.term.multiplicity != y.term.multiplicity) return false;
    const int dl = std::abs(x.term.orbital_l - y.term.orbital_l);
    if (dl > 1) return false;
    if (x.term.orbital_l == 0 && y.term.orbital_l == 0) return false;
    if (std::abs(x.twice_j - y.twice_j) > 2) return false;
    if (x.twice_j == 0 && y.twice_j == 0) return false;
    return true;
}

bool oracle_two_photon(const LevelRecord& g, const LevelRecord& e, bool j_rule) {
    if (g.term.parity != e.term.parity) return false;
    if (g.term.multiplicity != e.term.multiplicity) return false;
    const int dl = std::abs(g.term.orbital_l - e.term.orbital_l);
    if (dl != 0 && dl != 2) return false;
    if (j_rule && std::abs(g.twice_j - e.twice_j) > 4) return false;
    return true;
}

void criterion_8() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    std::string detail;

    for (int trial = 0; trial < 100 && ok; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 48);
        std::vector<LevelRecord> records;
        double energy = 0.0;
        for (int k = 0; k < n; ++k) {
            const int mult = 1 + static_cast<int>(rng() % 4);
            const int l = static_cast<int>(rng() % 4);
            std::string term = std::to_string(mult) + orbital_letter(l);
            if (rng() % 2) term += '*';
            const int lo = std::abs(2 * l - (mult - 1));
            const int hi = 2 * l + (mult - 1);
            const int twice_j = lo + 2 * static_cast<int>(rng() % ((hi - lo) / 2 + 1));
            records.push_back(make_level("L" + std::to_string(k), term.c_str(), twice_j, energy));
            energy += 1.0 + 14000.0 * unit(rng);
        }
        LevelTable levels(std::move(records));

        SearchConstraints constraints;
        const double lo_nm = 200.0 + 700.0 * unit(rng);
        constraints.pump_min = Quantity{lo_nm, Unit::nanometre};
        constraints.pump_max = Quantity{lo_nm + 20.0 + 280.0 * unit(rng), Unit::nanometre};
        constraints.require_intermediate_path = unit(rng) < 0.5;
        constraints.relax_intermediate_energy = unit(rng) < 0.3;
        constraints.apply_j_rule = unit(rng) < 0.3;

        const auto found = find_candidates(levels, LineTable{}, nullptr, constraints);
        std::set<std::pair<std::string, std::string>> got;
        for (const auto& c : found) got.insert({c.lower_id, c.upper_id});

        std::set<std::pair<std::string, std::string>> expected;
        const double win_lo = constraints.pump_min.in(Unit::nanometre);
        const double win_hi = constraints.pump_max.in(Unit::nanometre);
        for (std::size_t p = 0; p < levels.size(); ++p) {
            for (std::size_t q = 0; q < levels.size(); ++q) {
                if (p == q) continue;
                const auto& g = levels[p];
                const auto& e = levels[q];
                if (e.energy_cm1() <= g.energy_cm1()) continue;
                const double gap = e.energy_cm1() - g.energy_cm1();
                const double pump = 1.0e7 / gap;
                if (pump < win_lo || pump > win_hi) continue;
                if (!oracle_two_photon(g, e, constraints.apply_j_rule)) continue;
                std::size_t mids = 0;
                for (std::size_t m = 0; m < levels.size(); ++m) {
                    if (m == p || m == q) continue;
                    const auto& mid = levels[m];
                    const bool inside = mid.energy_cm1() > g.energy_cm1() &&
                                        mid.energy_cm1() < e.energy_cm1();
                    if (!constraints.relax_intermediate_energy && !inside) continue;
                    if (oracle_e1(g, mid) && oracle_e1(mid, e)) ++mids;
                }
                if (constraints.require_intermediate_path && mids == 0) continue;
                expected.insert({g.id, e.id});
            }
        }
        if (got != expected) {
            ok = false;
            detail = "set mismatch in trial " + std::to_string(trial);
        }
    }

    const bool edge_400 = close(pump_wavelength_nm(25000.0), 400.0, 1e-12);
    const bool edge_350 = std::abs(pump_wavelength_nm(28571.4) - 350.0) <= 0.01;
    if (!edge_400 || !edge_350) {
        ok = false;
        detail = "window arithmetic";
    }
    report(8, "finder equals brute force on 100 random tables; 25000/28571.4 cm^-1 edges", ok,
           detail);
}

// ---- criterion 9: crossing volume vs Monte Carlo ----------------------------

double crossing_volume_mc(double d, double theta, std::size_t samples, std::uint64_t seed) {
    const double r = d / 2.0;
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);
    const double x_max = r * (1.0 + cos_t) / sin_t;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-x_max, x_max), uyz(-r, r);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = ux(rng);
        const double y = uyz(rng);
        const double z = uyz(rng);
        if (y * y + z * z > r * r) continue;
        const double w = x * sin_t - y * cos_t;
        if (w * w + z * z > r * r) continue;
        ++hits;
    }
    const double box = 2.0 * x_max * 2.0 * r * 2.0 * r;
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

void criterion_9() {
    bool ok = true;
    std::string detail;
    const double degrees[] = {15.0, 30.0, 45.0, 60.0, 90.0};
    for (double deg : degrees) {
        const double theta = deg * M_PI / 180.0;
        const double formula =
            crossing_volume(Quantity{1.0, Unit::metre}, theta).in(Unit::cubic_metre);
        const double mc = crossing_volume_mc(1.0, theta, 10'000'000,
                                             10'000 + static_cast<std::uint64_t>(deg));
        if (!close(formula, mc, 5e-3)) {
            ok = false;
            detail = "theta " + std::to_string(deg) + " deg";
        }
    }
    const double right_angle =
        crossing_volume(Quantity{1.0, Unit::metre}, M_PI / 2.0).in(Unit::cubic_metre);
    if (!close(right_angle, 2.0 / 3.0, 5e-3)) {
        ok = false;
        detail = "right angle";
    }
    report(9, "crossing volume vs 1e7-sample Monte Carlo at 15/30/45/60/90 deg, 0.5%", ok,
           detail);
}

// ---- criterion 10: parser round trips and clean sample load -----------------

void criterion_10() {
    bool ok = true;
    std::string detail;
    for (int mult = 1; mult <= 6 && ok; ++mult) {
        for (int l = 0; l <= 8; ++l) {
            for (int parity = 0; parity <= 1; ++parity) {
                TermSymbol term;
                term.multiplicity = mult;
                term.orbital_l = l;
                term.parity = parity ? Parity::odd : Parity::even;
                const auto back = parse_term(term.str());
                if (!(back == term)) {
                    ok = false;
                    detail = "round trip " + term.str();
                }
            }
        }
    }

    try {
        std::ifstream level_stream(test::data_file("ar_ii_levels.csv"));
        const auto levels = parse_level_table(level_stream);
        std::ifstream line_stream(test::data_file("ar_ii_lines.csv"));
        const auto parsed = parse_line_table(line_stream, levels);
        if (!parsed.warnings.empty()) {
            ok = false;
            detail = "sample produced " + std::to_string(parsed.warnings.size()) + " warning(s)";
        }
        std::ifstream collision_stream(test::data_file("ar_ii_collisions.csv"));
        CollisionStrengthTable::parse(collision_stream, levels);
        std::ifstream rate_stream(test::data_file("ar_rate_coefficients.csv"));
        parse_rate_coefficient_table(rate_stream);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(10, "term symbols round-trip exhaustively; bundled samples load warning-free", ok,
           detail);
}

// ---- criterion 11: CLI determinism ------------------------------------------

void criterion_11() {
    const std::vector<std::string> invocations = {
        "convert 1 eV cm-1",
        "--config " + test::fixture_file("rates_config.json") + " --output json source",
        "--config " + test::fixture_file("rates_config.json") +
            " --output json rates --paper-check",
        "--config " + test::fixture_file("rates_config.json") + " --output csv rates",
        "--config " + test::fixture_file("abundance_config.json") +
            " --output csv abundance --Te-range 1:4:31",
        "--config " + test::fixture_file("populations_config.json") +
            " --output csv populations",
        "--config " + test::fixture_file("ar_config.json") + " --output json populations",
        "--config " + test::fixture_file("find_config.json") + " --output csv find",
        "--config " + test::fixture_file("ar_config.json") +
            " --output json find --pump-min-nm 55 --pump-max-nm 70",
    };
    bool ok = true;
    std::string detail;
    for (const auto& args : invocations) {
        const auto first = test::run_command(args);
        const auto second = test::run_command(args);
        if (first.exit_code != 0 || second.exit_code != 0) {
            ok = false;
            detail = "exit " + std::to_string(first.exit_code) + " for: " + args;
            break;
        }
        if (first.output != second.output) {
            ok = false;
            detail = "output differs for: " + args;
            break;
        }
    }
    report(11, "every CLI command is byte-identical across reruns", ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
