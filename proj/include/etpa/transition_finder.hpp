#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "etpa/atomic_data.hpp"
#include "etpa/plasma.hpp"
#include "etpa/quantities.hpp"

namespace etpa {

//! Filters for the two-photon candidate search. The pump window applies to
//! the SPDC pump photon, which carries the full transition energy; degenerate
//! signal/idler photons come out at twice the pump wavelength.
struct SearchConstraints {
    Quantity pump_min{350.0, Unit::nanometre};
    Quantity pump_max{400.0, Unit::nanometre};
    bool require_intermediate_path = true;
    //! When false, intermediates must sit strictly between the pair in
    //! energy; when true, higher-lying intermediates count as well.
    bool relax_intermediate_energy = false;
    bool apply_j_rule = false;
};

void validate(const SearchConstraints& constraints);

//! Real level near the two-photon virtual state. Detuning is measured from
//! the midpoint energy E_lower + E/2, where the virtual state sits for a
//! degenerate pair.
struct IntermediateState {
    std::string id;
    double detuning_cm1 = 0.0;
};

struct FluorescenceBranch {
    LineRecord line;
    double branching = 0.0;
};

struct CandidateTransition {
    std::string lower_id;
    std::string upper_id;
    double transition_energy_cm1 = 0.0;
    double pump_wavelength_nm = 0.0;
    double degenerate_photon_wavelength_nm = 0.0;  // 2x pump
    std::vector<IntermediateState> intermediates;  // |detuning| ascending
    double lower_population = 0.0;
    double upper_population = 0.0;
    std::vector<FluorescenceBranch> fluorescence;  // branching descending
    bool ranked = false;  // populations were available when scoring
    double score = 0.0;
};

//! Exponents for the ranking metric
//!   score = N_lower^a * b_max^b / (1 + (N_upper/N_lower)^c)
//! with b_max the largest branching fraction of the upper level (0 when the
//! upper level has no tabulated decay). Defaults give
//! N_lower * b_max / (1 + N_upper/N_lower).
struct ScoreWeights {
    double lower_population = 1.0;  // a
    double branching = 1.0;         // b
    double upper_penalty = 1.0;     // c
};

//! Photon wavelength in nm carrying the full transition energy: 1e7 / E.
double pump_wavelength_nm(double transition_energy_cm1);

//! Radiative decays out of `upper_id` with branching fractions A_k / sum A,
//! sorted by A descending (table order on ties). Empty when nothing decays.
std::vector<FluorescenceBranch> fluorescence_lines(std::string_view upper_id,
                                                   const LineTable& lines);

double score_candidate(const CandidateTransition& candidate, const ScoreWeights& weights = {});

//! Enumerate level pairs passing the two-photon rule with the pump inside
//! the window, attach intermediates, populations, and fluorescence, and rank.
//! `populations` may be null; scores are then 0 and candidates unranked.
//! Order: score descending, then lower population descending, then
//! transition energy ascending, then (lower_id, upper_id) lexically.
std::vector<CandidateTransition> find_candidates(const LevelTable& levels, const LineTable& lines,
                                                 const PopulationResult* populations,
                                                 const SearchConstraints& constraints = {},
                                                 const ScoreWeights& weights = {});

}  // namespace etpa
