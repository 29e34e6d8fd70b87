#include "etpa/plasma.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <istream>
#include <limits>
#include <set>

#include "etpa/constants.hpp"
#include "etpa/csv.hpp"
#include "etpa/errors.hpp"

namespace etpa {
namespace {

constexpr double collision_constant = 8.629e-6;  // cm^3 K^0 s^-1 prefactor, Te in eV here

std::string format_te_range(double te, double lo, double hi) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "Te=%g eV outside table range [%g, %g] eV", te, lo, hi);
    return buf;
}

double loglog_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x < xs.front() || x > xs.back())
        throw RangeError(format_te_range(x, xs.front(), xs.back()));
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it != xs.end() && *it == x) return ys[static_cast<std::size_t>(it - xs.begin())];
    const auto hi = static_cast<std::size_t>(it - xs.begin());
    const auto lo = hi - 1;
    const double t = (std::log(x) - std::log(xs[lo])) / (std::log(xs[hi]) - std::log(xs[lo]));
    return std::exp(std::log(ys[lo]) + t * (std::log(ys[hi]) - std::log(ys[lo])));
}

}  // namespace

RateCoefficientTable parse_rate_coefficient_table(std::istream& in) {
    const auto table = csv::read(in);
    const auto z_col = table.require_column("z");
    const auto kind_col = table.require_column("kind");
    const auto te_col = table.require_column("Te_eV");
    const auto coeff_col = table.require_column("coeff_cm3s");

    // (z, kind) -> te -> coeff; map keys keep the grid sorted and unique
    std::map<std::pair<int, char>, std::map<double, double>> series;
    for (const auto& row : table.rows) {
        const double z_val = csv::parse_double(table.field(row, z_col), row.line, "charge state");
        const int z = static_cast<int>(z_val);
        if (z < 0 || z != z_val)
            throw ParseError("charge state must be a non-negative integer", row.line);
        const std::string& kind_text = table.field(row, kind_col);
        char kind;
        if (kind_text == "S") kind = 'S';
        else if (kind_text == "alpha") kind = 'a';
        else throw ParseError("kind must be S or alpha, got '" + kind_text + "'", row.line);
        const double te = csv::parse_double(table.field(row, te_col), row.line, "Te_eV");
        const double coeff =
            csv::parse_double(table.field(row, coeff_col), row.line, "coeff_cm3s");
        if (te <= 0.0) throw ValidationError("Te grid values must be positive");
        if (coeff <= 0.0)
            throw ValidationError("rate coefficients must be positive (row " +
                                  std::to_string(row.line) + ")");
        if (!series[{z, kind}].emplace(te, coeff).second)
            throw ValidationError("duplicate grid point at row " + std::to_string(row.line));
    }
    if (series.empty()) throw ValidationError("no rate coefficients in table");

    int max_alpha = 0, max_s = -1;
    for (const auto& [key, _] : series) {
        if (key.second == 'a') max_alpha = std::max(max_alpha, key.first);
        else max_s = std::max(max_s, key.first);
    }
    if (max_alpha == 0) throw ValidationError("table has no recombination coefficients");
    const int z_top = max_alpha;
    if (max_s != z_top - 1)
        throw ValidationError("ionization coefficients must cover z = 0.." +
                              std::to_string(z_top - 1) + " exactly");
    if (series.count({0, 'a'}))
        throw ValidationError("recombination into charge state 0 has no source");

    RateCoefficientTable out;
    const auto& reference = series.begin()->second;
    out.te_grid_ev.reserve(reference.size());
    for (const auto& [te, _] : reference) out.te_grid_ev.push_back(te);

    const auto extract = [&](int z, char kind) {
        const auto it = series.find({z, kind});
        if (it == series.end())
            throw ValidationError(std::string("missing ") +
                                  (kind == 'S' ? "ionization" : "recombination") +
                                  " series for z=" + std::to_string(z));
        if (it->second.size() != out.te_grid_ev.size())
            throw ValidationError("coefficient series cover different Te grids");
        std::vector<double> values;
        std::size_t k = 0;
        for (const auto& [te, coeff] : it->second) {
            if (te != out.te_grid_ev[k++])
                throw ValidationError("coefficient series cover different Te grids");
            values.push_back(coeff);
        }
        return values;
    };
    for (int z = 0; z < z_top; ++z) out.ionization.push_back(extract(z, 'S'));
    for (int z = 1; z <= z_top; ++z) out.recombination.push_back(extract(z, 'a'));
    validate(out);
    return out;
}

void validate(const RateCoefficientTable& table) {
    if (table.te_grid_ev.size() < 2)
        throw ValidationError("rate-coefficient table needs at least two Te grid points");
    for (std::size_t k = 0; k < table.te_grid_ev.size(); ++k) {
        if (table.te_grid_ev[k] <= 0.0)
            throw ValidationError("Te grid values must be positive");
        if (k > 0 && table.te_grid_ev[k] <= table.te_grid_ev[k - 1])
            throw ValidationError("Te grid must be strictly ascending");
    }
    const int z_top = table.max_charge();
    if (z_top < 1 || static_cast<int>(table.ionization.size()) != z_top)
        throw ValidationError("table must carry S_z for z = 0..Z-1 and alpha_z for z = 1..Z");
    for (const auto& group : {table.ionization, table.recombination})
        for (const auto& row : group) {
            if (row.size() != table.te_grid_ev.size())
                throw ValidationError("coefficient series cover different Te grids");
            for (double value : row)
                if (!(value > 0.0)) throw ValidationError("rate coefficients must be positive");
        }
}

double interpolate_coefficient(const RateCoefficientTable& table, int z, CoefficientKind kind,
                               double te_ev) {
    const int z_top = table.max_charge();
    if (kind == CoefficientKind::ionization) {
        if (z < 0 || z >= z_top)
            throw DomainError("ionization coefficient defined for z = 0..Z-1");
        return loglog_interp(table.te_grid_ev, table.ionization[static_cast<std::size_t>(z)],
                             te_ev);
    }
    if (z < 1 || z > z_top)
        throw DomainError("recombination coefficient defined for z = 1..Z");
    return loglog_interp(table.te_grid_ev, table.recombination[static_cast<std::size_t>(z - 1)],
                         te_ev);
}

ChargeStateDistribution fractional_abundance(const RateCoefficientTable& table, double te_ev) {
    validate(table);
    const int z_top = table.max_charge();
    // log-space ratio chain keeps 18-state dynamic ranges finite
    std::vector<double> log_rel(static_cast<std::size_t>(z_top) + 1, 0.0);
    for (int z = 0; z < z_top; ++z) {
        const double s = interpolate_coefficient(table, z, CoefficientKind::ionization, te_ev);
        const double a =
            interpolate_coefficient(table, z + 1, CoefficientKind::recombination, te_ev);
        if (!(a > 0.0)) throw SingularityError("recombination coefficient vanished");
        log_rel[static_cast<std::size_t>(z) + 1] =
            log_rel[static_cast<std::size_t>(z)] + std::log(s) - std::log(a);
    }
    const double peak = *std::max_element(log_rel.begin(), log_rel.end());
    ChargeStateDistribution dist;
    dist.te_ev = te_ev;
    dist.fractions.resize(log_rel.size());
    double sum = 0.0;
    for (std::size_t z = 0; z < log_rel.size(); ++z) {
        dist.fractions[z] = std::exp(log_rel[z] - peak);
        sum += dist.fractions[z];
    }
    for (double& f : dist.fractions) f /= sum;
    return dist;
}

std::vector<ChargeStateDistribution> scan_abundance(const RateCoefficientTable& table,
                                                    const std::vector<double>& te_list_ev) {
    std::vector<ChargeStateDistribution> out;
    out.reserve(te_list_ev.size());
    for (double te : te_list_ev) out.push_back(fractional_abundance(table, te));
    return out;
}

double excitation_rate_coefficient(double upsilon, double delta_e_ev, double te_ev,
                                   double g_lower) {
    if (!(te_ev > 0.0)) throw DomainError("Te must be positive");
    if (delta_e_ev < 0.0) throw DomainError("level separation must be non-negative");
    if (g_lower < 1.0) throw DomainError("statistical weight must be at least 1");
    if (!(upsilon > 0.0)) throw DomainError("collision strength must be positive");
    return collision_constant / std::sqrt(te_ev) * upsilon / g_lower *
           std::exp(-delta_e_ev / te_ev);
}

double deexcitation_rate_coefficient(double upsilon, double delta_e_ev, double te_ev,
                                     double g_upper) {
    if (!(te_ev > 0.0)) throw DomainError("Te must be positive");
    if (delta_e_ev < 0.0) throw DomainError("level separation must be non-negative");
    if (g_upper < 1.0) throw DomainError("statistical weight must be at least 1");
    if (!(upsilon > 0.0)) throw DomainError("collision strength must be positive");
    return collision_constant / std::sqrt(te_ev) * upsilon / g_upper;
}

CollisionStrengthTable CollisionStrengthTable::parse(std::istream& in,
                                                     const LevelTable& levels) {
    const auto table = csv::read(in);
    const auto lower_col = table.require_column("lower_id");
    const auto upper_col = table.require_column("upper_id");
    const auto te_col = table.require_column("Te_eV");
    const auto ups_col = table.require_column("upsilon");

    std::map<PairKey, std::map<double, double>> grouped;
    for (const auto& row : table.rows) {
        const std::size_t lower = levels.index_of(table.field(row, lower_col));
        const std::size_t upper = levels.index_of(table.field(row, upper_col));
        if (levels[lower].energy_cm1() >= levels[upper].energy_cm1())
            throw ValidationError("collision pair at row " + std::to_string(row.line) +
                                  " must list the lower level first");
        const double te = csv::parse_double(table.field(row, te_col), row.line, "Te_eV");
        const double ups = csv::parse_double(table.field(row, ups_col), row.line, "upsilon");
        if (te <= 0.0) throw ValidationError("Te grid values must be positive");
        if (!(ups > 0.0))
            throw ValidationError("collision strengths must be positive (row " +
                                  std::to_string(row.line) + ")");
        if (!grouped[{lower, upper}].emplace(te, ups).second)
            throw ValidationError("duplicate collision grid point at row " +
                                  std::to_string(row.line));
    }

    CollisionStrengthTable out;
    for (auto& [key, points] : grouped) {
        if (points.size() < 2)
            throw ValidationError("collision pair " + levels[key.first].id + " / " +
                                  levels[key.second].id + " needs at least two Te points");
        Series series;
        for (const auto& [te, ups] : points) {
            series.te_ev.push_back(te);
            series.upsilon.push_back(ups);
        }
        out.pairs_.emplace(key, std::move(series));
    }
    return out;
}

bool CollisionStrengthTable::has_pair(std::size_t a, std::size_t b) const {
    return pairs_.count({std::min(a, b), std::max(a, b)}) > 0;
}

double CollisionStrengthTable::upsilon(std::size_t a, std::size_t b, double te_ev) const {
    const auto it = pairs_.find({std::min(a, b), std::max(a, b)});
    if (it == pairs_.end())
        throw ValidationError("no collision data for level pair (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    return loglog_interp(it->second.te_ev, it->second.upsilon, te_ev);
}

void CollisionStrengthTable::insert(std::size_t a, std::size_t b, Series series) {
    if (a == b) throw ValidationError("collision pair needs two distinct levels");
    if (series.te_ev.size() != series.upsilon.size() || series.te_ev.size() < 2)
        throw ValidationError("collision series needs at least two Te points");
    pairs_[{std::min(a, b), std::max(a, b)}] = std::move(series);
}

std::vector<std::string> find_metastables(const LevelTable& levels, const LineTable& lines) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const auto& level = levels[i];
        bool decays = !lines.from_upper(level.id).empty();
        for (std::size_t j = 0; j < i && !decays; ++j) {
            if (levels[j].energy_cm1() < level.energy_cm1() &&
                single_photon_allowed(level, levels[j]))
                decays = true;
        }
        if (!decays) out.push_back(level.id);
    }
    return out;
}

PopulationResult solve_cr_populations(const CRSystem& sys,
                                      const std::vector<double>& driver_populations) {
    const auto n = sys.levels.size();
    if (sys.drivers.empty()) throw ValidationError("driver set must not be empty");
    if (driver_populations.size() != sys.drivers.size())
        throw ValidationError("driver populations must match the driver list");
    if (!(sys.n_e_cm3 > 0.0)) throw DomainError("electron density must be positive");
    if (!(sys.te_ev > 0.0)) throw DomainError("Te must be positive");

    std::vector<std::size_t> driver_idx;
    std::set<std::size_t> driver_set;
    for (const auto& id : sys.drivers) {
        const auto idx = sys.levels.index_of(id);
        if (!driver_set.insert(idx).second)
            throw ValidationError("duplicate driver level '" + id + "'");
        driver_idx.push_back(idx);
    }
    if (!driver_set.count(sys.levels.index_of(sys.levels.ground().id)))
        throw ValidationError("driver set must include the ground level");
    bool any_positive = false;
    for (double pop : driver_populations) {
        if (pop < 0.0) throw DomainError("driver populations must be non-negative");
        if (pop > 0.0) any_positive = true;
    }
    if (!any_positive) throw DomainError("at least one driver population must be positive");

    // full rate matrix: W(i, j) is the flow j -> i
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (const auto& [key, series] : sys.collisions.pairs()) {
        const auto [lo, up] = key;
        const double ups = loglog_interp(series.te_ev, series.upsilon, sys.te_ev);
        const double gap_ev =
            (sys.levels[up].energy_cm1() - sys.levels[lo].energy_cm1()) /
            constants::ev_to_inverse_cm;
        const double q_up = excitation_rate_coefficient(
            ups, gap_ev, sys.te_ev, sys.levels[lo].statistical_weight());
        const double q_down = deexcitation_rate_coefficient(
            ups, gap_ev, sys.te_ev, sys.levels[up].statistical_weight());
        W(static_cast<Eigen::Index>(up), static_cast<Eigen::Index>(lo)) +=
            sys.n_e_cm3 * q_up;
        W(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(up)) +=
            sys.n_e_cm3 * q_down;
    }
    for (const auto& line : sys.lines.lines()) {
        const auto up = sys.levels.index_of(line.upper_id);
        const auto lo = sys.levels.index_of(line.lower_id);
        W(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(up)) += line.einstein_a;
    }

    // every non-driver level must connect to a driver through some chain
    std::vector<char> reached(n, 0);
    std::deque<std::size_t> queue(driver_idx.begin(), driver_idx.end());
    for (auto idx : driver_idx) reached[idx] = 1;
    while (!queue.empty()) {
        const auto j = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            if (reached[i]) continue;
            if (W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0 ||
                W(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) > 0.0) {
                reached[i] = 1;
                queue.push_back(i);
            }
        }
    }
    std::string unreachable;
    for (std::size_t i = 0; i < n; ++i) {
        if (reached[i]) continue;
        if (!unreachable.empty()) unreachable += ", ";
        unreachable += sys.levels[i].id;
    }
    if (!unreachable.empty())
        throw SingularityError("unreachable level set: " + unreachable);

    std::vector<std::size_t> excited;
    for (std::size_t i = 0; i < n; ++i)
        if (!driver_set.count(i)) excited.push_back(i);

    PopulationResult result;
    result.driver_ids = sys.drivers;
    result.driver_populations = driver_populations;
    for (auto idx : excited) result.level_ids.push_back(sys.levels[idx].id);
    const auto x = static_cast<Eigen::Index>(excited.size());
    const auto d = static_cast<Eigen::Index>(driver_idx.size());
    if (excited.empty()) return result;

    Eigen::MatrixXd m_xx(x, x);
    for (Eigen::Index a = 0; a < x; ++a) {
        const auto row = static_cast<Eigen::Index>(excited[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = 0; b < x; ++b) {
            const auto col = static_cast<Eigen::Index>(excited[static_cast<std::size_t>(b)]);
            if (row == col) {
                double loss = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    if (static_cast<Eigen::Index>(i) != col)
                        loss += W(static_cast<Eigen::Index>(i), col);
                m_xx(a, b) = -loss;
            } else {
                m_xx(a, b) = W(row, col);
            }
        }
    }
    Eigen::MatrixXd m_xd(x, d);
    for (Eigen::Index a = 0; a < x; ++a)
        for (Eigen::Index k = 0; k < d; ++k)
            m_xd(a, k) = W(static_cast<Eigen::Index>(excited[static_cast<std::size_t>(a)]),
                           static_cast<Eigen::Index>(driver_idx[static_cast<std::size_t>(k)]));

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m_xx);
    const double norm = m_xx.cwiseAbs().rowwise().sum().maxCoeff();
    const double threshold = 1.0e3 * std::numeric_limits<double>::epsilon() * norm;
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <= threshold)
        throw SingularityError("rate matrix is numerically singular at the requested conditions");

    Eigen::Map<const Eigen::VectorXd> n_d(driver_populations.data(), d);
    const Eigen::VectorXd total = lu.solve(-m_xd * n_d);

    result.total.assign(total.data(), total.data() + total.size());
    result.per_driver.resize(driver_idx.size());
    for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::VectorXd contribution =
            lu.solve(-m_xd.col(k) * driver_populations[static_cast<std::size_t>(k)]);
        auto& slot = result.per_driver[static_cast<std::size_t>(k)];
        slot.assign(contribution.data(), contribution.data() + contribution.size());
    }

    double scale = 0.0;
    for (double pop : driver_populations) scale = std::max(scale, pop);
    for (double value : result.total) scale = std::max(scale, std::abs(value));
    const double tolerance = 1.0e-12 * scale;
    const auto clamp = [&](std::vector<double>& values) {
        for (double& value : values) {
            if (value < -tolerance)
                throw SingularityError("solver produced a negative population beyond tolerance");
            if (value < 0.0) {
                value = 0.0;
                result.clamped = true;
            }
        }
    };
    clamp(result.total);
    for (auto& contribution : result.per_driver) clamp(contribution);
    return result;
}

}  // namespace etpa
