#include "etpa/transition_finder.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "etpa/errors.hpp"

namespace etpa {

void validate(const SearchConstraints& constraints) {
    const double lo = constraints.pump_min.in(Unit::nanometre);
    const double hi = constraints.pump_max.in(Unit::nanometre);
    if (!(lo > 0.0) || !(hi > 0.0)) throw ValidationError("pump window bounds must be positive");
    if (!(lo < hi)) throw ValidationError("pump window must have min < max");
}

double pump_wavelength_nm(double transition_energy_cm1) {
    if (!(transition_energy_cm1 > 0.0))
        throw DomainError("transition energy must be positive");
    return 1.0e7 / transition_energy_cm1;
}

std::vector<FluorescenceBranch> fluorescence_lines(std::string_view upper_id,
                                                   const LineTable& lines) {
    std::vector<FluorescenceBranch> out;
    double total = 0.0;
    for (const auto* line : lines.from_upper(upper_id)) {
        out.push_back({*line, 0.0});
        total += line->einstein_a;
    }
    for (auto& branch : out) branch.branching = branch.line.einstein_a / total;
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.line.einstein_a > b.line.einstein_a;
    });
    return out;
}

double score_candidate(const CandidateTransition& candidate, const ScoreWeights& weights) {
    if (!(candidate.lower_population > 0.0)) return 0.0;
    const double b_max =
        candidate.fluorescence.empty() ? 0.0 : candidate.fluorescence.front().branching;
    const double ratio = candidate.upper_population / candidate.lower_population;
    return std::pow(candidate.lower_population, weights.lower_population) *
           std::pow(b_max, weights.branching) /
           (1.0 + std::pow(ratio, weights.upper_penalty));
}

std::vector<CandidateTransition> find_candidates(const LevelTable& levels, const LineTable& lines,
                                                 const PopulationResult* populations,
                                                 const SearchConstraints& constraints,
                                                 const ScoreWeights& weights) {
    if (levels.empty()) throw ValidationError("level table is empty");
    validate(constraints);

    std::unordered_map<std::string_view, double> population;
    if (populations) {
        for (std::size_t k = 0; k < populations->driver_ids.size(); ++k)
            population[populations->driver_ids[k]] = populations->driver_populations[k];
        for (std::size_t k = 0; k < populations->level_ids.size(); ++k)
            population[populations->level_ids[k]] = populations->total[k];
    }
    const auto population_of = [&](const std::string& id) {
        const auto it = population.find(id);
        return it == population.end() ? 0.0 : it->second;
    };

    const double window_lo = constraints.pump_min.in(Unit::nanometre);
    const double window_hi = constraints.pump_max.in(Unit::nanometre);
    const TwoPhotonOptions options{constraints.apply_j_rule};

    std::vector<CandidateTransition> out;
    for (std::size_t a = 0; a < levels.size(); ++a) {
        for (std::size_t b = a + 1; b < levels.size(); ++b) {
            const auto& lower = levels[a];
            const auto& upper = levels[b];
            const double energy = upper.energy_cm1() - lower.energy_cm1();
            if (!(energy > 0.0)) continue;
            const double pump = pump_wavelength_nm(energy);
            if (pump < window_lo || pump > window_hi) continue;
            if (!two_photon_allowed(lower, upper, options)) continue;

            CandidateTransition candidate;
            candidate.lower_id = lower.id;
            candidate.upper_id = upper.id;
            candidate.transition_energy_cm1 = energy;
            candidate.pump_wavelength_nm = pump;
            candidate.degenerate_photon_wavelength_nm = 2.0 * pump;

            const double midpoint = lower.energy_cm1() + 0.5 * energy;
            for (std::size_t m = 0; m < levels.size(); ++m) {
                if (m == a || m == b) continue;
                const auto& mid = levels[m];
                if (!constraints.relax_intermediate_energy &&
                    !(mid.energy_cm1() > lower.energy_cm1() &&
                      mid.energy_cm1() < upper.energy_cm1()))
                    continue;
                if (!single_photon_allowed(lower, mid)) continue;
                if (!single_photon_allowed(mid, upper)) continue;
                candidate.intermediates.push_back({mid.id, mid.energy_cm1() - midpoint});
            }
            if (constraints.require_intermediate_path && candidate.intermediates.empty())
                continue;
            std::stable_sort(candidate.intermediates.begin(), candidate.intermediates.end(),
                             [](const auto& lhs, const auto& rhs) {
                                 const double da = std::abs(lhs.detuning_cm1);
                                 const double db = std::abs(rhs.detuning_cm1);
                                 if (da != db) return da < db;
                                 return lhs.id < rhs.id;
                             });

            candidate.fluorescence = fluorescence_lines(upper.id, lines);
            if (populations) {
                candidate.lower_population = population_of(lower.id);
                candidate.upper_population = population_of(upper.id);
                candidate.ranked = true;
                candidate.score = score_candidate(candidate, weights);
            }
            out.push_back(std::move(candidate));
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const auto& lhs, const auto& rhs) {
        if (lhs.score != rhs.score) return lhs.score > rhs.score;
        if (lhs.lower_population != rhs.lower_population)
            return lhs.lower_population > rhs.lower_population;
        if (lhs.transition_energy_cm1 != rhs.transition_energy_cm1)
            return lhs.transition_energy_cm1 < rhs.transition_energy_cm1;
        if (lhs.lower_id != rhs.lower_id) return lhs.lower_id < rhs.lower_id;
        return lhs.upper_id < rhs.upper_id;
    });
    return out;
}

}  // namespace etpa
