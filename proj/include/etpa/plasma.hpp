#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etpa/atomic_data.hpp"

namespace etpa {

enum class CoefficientKind { ionization, recombination };

//! Effective ionization (S_z, z < Z) and recombination (alpha_z, z > 0)
//! rate coefficients on a shared Te grid, valid at the stated density.
//! Bundled sample data is illustrative, not a reference dataset.
struct RateCoefficientTable {
    std::string species;
    double n_e_cm3 = 3.0e13;
    std::vector<double> te_grid_ev;                  // strictly ascending, >= 2 points
    std::vector<std::vector<double>> ionization;     // [z][grid point], z = 0..Z-1
    std::vector<std::vector<double>> recombination;  // [z-1][grid point], z = 1..Z

    int max_charge() const { return static_cast<int>(recombination.size()); }
};

//! CSV schema: `z,kind,Te_eV,coeff_cm3s` with kind S or alpha, one row per
//! grid point; every series must cover the same Te grid.
RateCoefficientTable parse_rate_coefficient_table(std::istream& in);
void validate(const RateCoefficientTable& table);

//! Log-log linear interpolation on the table grid. No extrapolation: Te
//! outside the grid is a RangeError.
double interpolate_coefficient(const RateCoefficientTable& table, int z, CoefficientKind kind,
                               double te_ev);

struct ChargeStateDistribution {
    double te_ev = 0.0;
    std::vector<double> fractions;  // index = charge state, sums to 1
};

//! Steady-state ionization balance from the ratio chain
//! f_{z+1}/f_z = S_z(Te)/alpha_{z+1}(Te), accumulated in log space and
//! normalized. The tabulation density cancels.
ChargeStateDistribution fractional_abundance(const RateCoefficientTable& table, double te_ev);
std::vector<ChargeStateDistribution> scan_abundance(const RateCoefficientTable& table,
                                                    const std::vector<double>& te_list_ev);

//! Maxwell-averaged rate coefficients from the effective collision strength,
//! in cm^3/s with Te and the gap in eV:
//!   q_up   = 8.629e-6 / sqrt(Te) * upsilon / g_lower * exp(-dE/Te)
//!   q_down = 8.629e-6 / sqrt(Te) * upsilon / g_upper
double excitation_rate_coefficient(double upsilon, double delta_e_ev, double te_ev,
                                   double g_lower);
double deexcitation_rate_coefficient(double upsilon, double delta_e_ev, double te_ev,
                                     double g_upper);

//! Effective collision strengths per level pair on per-pair Te grids,
//! symmetric under argument order.
class CollisionStrengthTable {
public:
    struct Series {
        std::vector<double> te_ev;  // ascending
        std::vector<double> upsilon;
    };
    using PairKey = std::pair<std::size_t, std::size_t>;  // (lower, upper) level indices

    CollisionStrengthTable() = default;

    //! CSV schema: `lower_id,upper_id,Te_eV,upsilon`; each pair needs at
    //! least two grid points and the lower level must sit below the upper.
    static CollisionStrengthTable parse(std::istream& in, const LevelTable& levels);

    const std::map<PairKey, Series>& pairs() const { return pairs_; }
    bool has_pair(std::size_t a, std::size_t b) const;
    //! Log-log interpolated strength; RangeError outside the pair's grid,
    //! ValidationError for an unknown pair.
    double upsilon(std::size_t a, std::size_t b, double te_ev) const;

    void insert(std::size_t a, std::size_t b, Series series);

private:
    std::map<PairKey, Series> pairs_;
};

struct CRSystem {
    LevelTable levels;
    LineTable lines;
    CollisionStrengthTable collisions;
    double n_e_cm3 = 3.0e13;
    double te_ev = 3.0;
    std::vector<std::string> drivers;  // ground plus metastables, or a manual list
};

struct PopulationResult {
    std::vector<std::string> driver_ids;
    std::vector<double> driver_populations;
    std::vector<std::string> level_ids;  // non-driver levels, ascending energy
    std::vector<double> total;
    std::vector<std::vector<double>> per_driver;  // [driver index][level index]
    bool clamped = false;  // negatives within rounding tolerance were zeroed
};

//! Levels above ground with no electric-dipole-allowed decay channel, judged
//! by the selection rules and the line table together.
std::vector<std::string> find_metastables(const LevelTable& levels, const LineTable& lines);

//! Steady-state populations of the non-driver levels with the driver
//! populations held fixed. Rate matrix M_ij = n_e q_{j->i} + A_{j->i};
//! solves M_XX N_X = -M_XD N_D, plus one solve per driver for the
//! decomposition. Non-driver levels with no collisional or radiative path to
//! any driver make the system singular and are named in the error.
PopulationResult solve_cr_populations(const CRSystem& sys,
                                      const std::vector<double>& driver_populations);

}  // namespace etpa
