#include "etpa/atomic_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>

#include "etpa/csv.hpp"

namespace etpa {

namespace {

// L = 0..12; J is skipped after I per spectroscopic convention.
constexpr std::string_view l_letters = "SPDFGHIKLMNOQ";

int letter_to_l(char c) {
    const auto pos = l_letters.find(c);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

}  // namespace

char orbital_letter(int l) {
    if (l < 0 || l >= static_cast<int>(l_letters.size()))
        throw DomainError("no spectroscopic letter for L=" + std::to_string(l));
    return l_letters[static_cast<std::size_t>(l)];
}

std::string TermSymbol::str() const {
    std::string out = std::to_string(multiplicity);
    out += orbital_letter(orbital_l);
    if (parity == Parity::odd) out += '*';
    return out;
}

TermSymbol parse_term(std::string_view text) {
    if (text.empty()) throw ParseError("empty term symbol", 0, 1);
    std::size_t pos = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == 0)
        throw ParseError("term symbol must start with the multiplicity 2S+1", 0, 1);
    int multiplicity = 0;
    for (std::size_t i = 0; i < pos; ++i) multiplicity = multiplicity * 10 + (text[i] - '0');
    if (multiplicity < 1)
        throw ParseError("multiplicity must be >= 1 in term '" + std::string(text) + "'", 0, 1);
    if (pos >= text.size())
        throw ParseError("term '" + std::string(text) + "' is missing the L letter", 0,
                         pos + 1);
    const int l = letter_to_l(text[pos]);
    if (l < 0)
        throw ParseError("unknown L letter '" + std::string(1, text[pos]) + "' in term '" +
                             std::string(text) + "' (byte offset " + std::to_string(pos + 1) +
                             ")",
                         0, pos + 1);
    ++pos;
    Parity parity = Parity::even;
    if (pos < text.size() && text[pos] == '*') {
        parity = Parity::odd;
        ++pos;
    }
    if (pos != text.size())
        throw ParseError("trailing characters after term '" + std::string(text) +
                             "' (byte offset " + std::to_string(pos + 1) + ")",
                         0, pos + 1);
    return TermSymbol{multiplicity, l, parity};
}

LevelTable::LevelTable(std::vector<LevelRecord> levels) : levels_(std::move(levels)) {
    std::stable_sort(levels_.begin(), levels_.end(), [](const auto& a, const auto& b) {
        const double ea = a.energy.magnitude(), eb = b.energy.magnitude();
        return ea != eb ? ea < eb : a.id < b.id;
    });
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!index_.emplace(levels_[i].id, i).second)
            throw ValidationError("duplicate level id '" + levels_[i].id + "'");
    }
}

const LevelRecord* LevelTable::find(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &levels_[it->second];
}

const LevelRecord& LevelTable::at(std::string_view id) const {
    if (const LevelRecord* rec = find(id)) return *rec;
    throw ValidationError("unknown level id '" + std::string(id) + "'");
}

std::size_t LevelTable::index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) throw ValidationError("unknown level id '" + std::string(id) + "'");
    return it->second;
}

std::vector<const LineRecord*> LineTable::from_upper(std::string_view upper_id) const {
    std::vector<const LineRecord*> out;
    for (const auto& line : lines_)
        if (line.upper_id == upper_id) out.push_back(&line);
    return out;
}

namespace {

// "1.5" or "3/2" -> 2J
int parse_twice_j(const std::string& text, std::size_t line) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = csv::parse_double(text.substr(0, slash), line, "J numerator");
        const double den = csv::parse_double(text.substr(slash + 1), line, "J denominator");
        if (den != 1.0 && den != 2.0)
            throw ParseError("J fraction '" + text + "' must have denominator 1 or 2", line);
        return static_cast<int>(std::lround(num * 2.0 / den));
    }
    const double j = csv::parse_double(text, line, "J");
    const double twice = 2.0 * j;
    const long rounded = std::lround(twice);
    if (std::abs(twice - static_cast<double>(rounded)) > 1e-9)
        throw ParseError("J='" + text + "' is neither integer nor half-integer", line);
    return static_cast<int>(rounded);
}

void validate_level(const LevelRecord& rec) {
    if (rec.twice_j < 0)
        throw ValidationError("level '" + rec.id + "' has negative J");
    const int twice_s = rec.term.twice_spin();
    const int twice_l = 2 * rec.term.orbital_l;
    if (rec.twice_j < std::abs(twice_l - twice_s) || rec.twice_j > twice_l + twice_s)
        throw ValidationError("level '" + rec.id + "': J=" + std::to_string(rec.j()) +
                              " outside |L-S|..L+S for term " + rec.term.str());
    if ((rec.twice_j - twice_s) % 2 != 0)
        throw ValidationError("level '" + rec.id + "': J=" + std::to_string(rec.j()) +
                              " has the wrong half-integer character for term " +
                              rec.term.str());
    if (rec.energy.magnitude() < 0.0)
        throw ValidationError("level '" + rec.id + "' has negative energy");
}

}  // namespace

LevelTable parse_level_table(std::istream& in) {
    const csv::Table table = csv::read(in);
    const std::size_t col_id = table.require_column("id");
    const std::size_t col_config = table.require_column("configuration");
    const std::size_t col_term = table.require_column("term");
    const std::size_t col_j = table.require_column("J");
    const std::size_t col_energy = table.require_column("energy_cm1");

    if (table.rows.empty()) throw ValidationError("no levels");

    std::vector<LevelRecord> levels;
    levels.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        LevelRecord rec;
        rec.id = table.field(row, col_id);
        if (rec.id.empty()) throw ParseError("empty level id", row.line);
        rec.configuration = table.field(row, col_config);
        try {
            rec.term = parse_term(table.field(row, col_term));
        } catch (const ParseError& e) {
            throw ParseError("level '" + rec.id + "': " + e.what(), row.line, e.column);
        }
        rec.twice_j = parse_twice_j(table.field(row, col_j), row.line);
        rec.energy = Quantity(
            csv::parse_double(table.field(row, col_energy), row.line, "energy_cm1"),
            Unit::inverse_cm);
        validate_level(rec);
        levels.push_back(std::move(rec));
    }

    LevelTable result(std::move(levels));  // sorts, checks id uniqueness

    std::size_t grounds = 0;
    for (const auto& lvl : result.levels())
        if (lvl.energy.magnitude() == 0.0) ++grounds;
    if (grounds == 0) throw ValidationError("no ground level (energy 0)");
    if (grounds > 1) throw ValidationError("multiple ground levels");
    return result;
}

LineParseResult parse_line_table(std::istream& in, const LevelTable& levels) {
    const csv::Table table = csv::read(in);
    const std::size_t col_upper = table.require_column("upper_id");
    const std::size_t col_lower = table.require_column("lower_id");
    const std::size_t col_a = table.require_column("A_s1");
    const std::size_t col_wl = table.require_column("wavelength_nm");

    LineParseResult result;
    std::vector<LineRecord> lines;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& row : table.rows) {
        LineRecord rec;
        rec.upper_id = table.field(row, col_upper);
        rec.lower_id = table.field(row, col_lower);
        const LevelRecord* upper = levels.find(rec.upper_id);
        const LevelRecord* lower = levels.find(rec.lower_id);
        if (!upper)
            throw ValidationError("line at row " + std::to_string(row.line) +
                                  " references unknown upper level '" + rec.upper_id + "'");
        if (!lower)
            throw ValidationError("line at row " + std::to_string(row.line) +
                                  " references unknown lower level '" + rec.lower_id + "'");
        if (!seen.insert({rec.upper_id, rec.lower_id}).second)
            throw ValidationError("duplicate line " + rec.upper_id + " -> " + rec.lower_id);

        rec.einstein_a = csv::parse_double(table.field(row, col_a), row.line, "A_s1");
        if (rec.einstein_a <= 0.0)
            throw ValidationError("line " + rec.upper_id + " -> " + rec.lower_id +
                                  " has non-positive A");
        const double delta_e = upper->energy_cm1() - lower->energy_cm1();
        if (delta_e <= 0.0)
            throw ValidationError("line " + rec.upper_id + " -> " + rec.lower_id +
                                  ": upper level is not above lower level");
        const double lambda_calc_nm = 1e7 / delta_e;  // vacuum

        const std::string wl_text = table.field(row, col_wl);
        if (wl_text.empty()) {
            rec.wavelength = Quantity(lambda_calc_nm, Unit::nanometre);
            rec.wavelength_from_energies = true;
        } else {
            const double wl = csv::parse_double(wl_text, row.line, "wavelength_nm");
            if (wl <= 0.0)
                throw ValidationError("line " + rec.upper_id + " -> " + rec.lower_id +
                                      " has non-positive wavelength");
            rec.wavelength = Quantity(wl, Unit::nanometre);
            if (std::abs(wl - lambda_calc_nm) / lambda_calc_nm > 0.005) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "line %s -> %s: wavelength %.4g nm differs from level energies "
                              "(%.4g nm) by more than 0.5%%",
                              rec.upper_id.c_str(), rec.lower_id.c_str(), wl, lambda_calc_nm);
                result.warnings.emplace_back(buf);
            }
        }
        lines.push_back(std::move(rec));
    }
    result.table = LineTable(std::move(lines));
    return result;
}

bool single_photon_allowed(const LevelRecord& a, const LevelRecord& b) {
    if (a.parity() == b.parity()) return false;
    if (a.term.multiplicity != b.term.multiplicity) return false;  // dS = 0
    const int la = a.term.orbital_l, lb = b.term.orbital_l;
    if (std::abs(la - lb) > 1) return false;
    if (la == 0 && lb == 0) return false;
    if (std::abs(a.twice_j - b.twice_j) > 2) return false;  // dJ = 0, +-1
    if (a.twice_j == 0 && b.twice_j == 0) return false;
    return true;
}

bool two_photon_allowed(const LevelRecord& g, const LevelRecord& e,
                        const TwoPhotonOptions& options) {
    if (g.parity() != e.parity()) return false;
    if (g.term.multiplicity != e.term.multiplicity) return false;  // dS = 0
    const int dl = std::abs(g.term.orbital_l - e.term.orbital_l);
    if (dl != 0 && dl != 2) return false;
    if (options.require_j_rule && std::abs(g.twice_j - e.twice_j) > 4) return false;
    return true;
}

}  // namespace etpa
