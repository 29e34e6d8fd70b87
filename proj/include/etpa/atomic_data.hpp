#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "etpa/errors.hpp"
#include "etpa/quantities.hpp"

namespace etpa {

enum class Parity { even, odd };

//! An LS-coupling term symbol: multiplicity 2S+1, orbital letter, parity.
//! Parity comes from the trailing '*' in spectroscopic notation and is never
//! inferred from the configuration string.
struct TermSymbol {
    int multiplicity = 1;  // 2S+1
    int orbital_l = 0;     // S,P,D,F,... = 0,1,2,3,...
    Parity parity = Parity::even;

    int twice_spin() const { return multiplicity - 1; }  // 2S
    std::string str() const;

    bool operator==(const TermSymbol&) const = default;
};

//! Letter for L (S,P,D,F,G,H,I,K,L,M,N,O,Q; J is skipped per convention).
char orbital_letter(int l);

//! Parse "<digits><letter>[*]", e.g. "2P*" or "4D". ParseError carries the
//! 1-based byte offset of the offending character in `column`.
TermSymbol parse_term(std::string_view text);

struct LevelRecord {
    std::string id;
    std::string configuration;  // valence relative to a stated core
    TermSymbol term;
    int twice_j = 0;  // 2J, kept integral to avoid half-integer float compares
    Quantity energy{0.0, Unit::inverse_cm};

    double j() const { return 0.5 * twice_j; }
    double energy_cm1() const { return energy.in(Unit::inverse_cm); }
    int statistical_weight() const { return twice_j + 1; }  // 2J+1
    Parity parity() const { return term.parity; }
};

struct LineRecord {
    std::string upper_id;
    std::string lower_id;
    double einstein_a = 0.0;  // s^-1
    Quantity wavelength{0.0, Unit::nanometre};
    bool wavelength_from_energies = false;
};

class LevelTable {
public:
    explicit LevelTable(std::vector<LevelRecord> levels = {});

    const std::vector<LevelRecord>& levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    bool empty() const { return levels_.empty(); }
    const LevelRecord& operator[](std::size_t i) const { return levels_[i]; }

    const LevelRecord* find(std::string_view id) const;
    const LevelRecord& at(std::string_view id) const;  // ValidationError if absent
    std::size_t index_of(std::string_view id) const;
    const LevelRecord& ground() const { return levels_.front(); }

private:
    std::vector<LevelRecord> levels_;  // sorted by energy, ground first
    std::unordered_map<std::string, std::size_t> index_;
};

class LineTable {
public:
    explicit LineTable(std::vector<LineRecord> lines = {}) : lines_(std::move(lines)) {}

    const std::vector<LineRecord>& lines() const { return lines_; }
    std::size_t size() const { return lines_.size(); }

    //! All radiative decays out of the given upper level, table order.
    std::vector<const LineRecord*> from_upper(std::string_view upper_id) const;

private:
    std::vector<LineRecord> lines_;
};

// CSV schema: header `id,configuration,term,J,energy_cm1`; J accepts decimals
// ("1.5") or fractions ("3/2"); '#' comments ignored; unknown extra columns
// ignored. Validates unique ids, J against |L-S|..L+S, and exactly one
// zero-energy ground level. Result is sorted by energy.
LevelTable parse_level_table(std::istream& in);

struct LineParseResult {
    LineTable table;
    std::vector<std::string> warnings;  // non-fatal, e.g. wavelength drift > 0.5%
};

// CSV schema: header `upper_id,lower_id,A_s1,wavelength_nm`; blank wavelength
// is computed from the level energy difference (vacuum). Duplicate lines for
// the same level pair are rejected rather than summed.
LineParseResult parse_line_table(std::istream& in, const LevelTable& levels);

//! E1 single-photon rule: opposite parity, dS=0, dL=0,+-1 (not 0-0),
//! dJ=0,+-1 (not 0-0). Symmetric in its arguments.
bool single_photon_allowed(const LevelRecord& a, const LevelRecord& b);

struct TwoPhotonOptions {
    bool require_j_rule = false;  // dJ=0,+-1,+-2 when set
};

//! Two-photon rule: dS=0, dL=0,+-2, equal parity (two E1 steps).
bool two_photon_allowed(const LevelRecord& g, const LevelRecord& e,
                        const TwoPhotonOptions& options = {});

}  // namespace etpa
