#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <etpa/atomic_data.hpp>
#include <etpa/biphoton.hpp>
#include <etpa/constants.hpp>
#include <etpa/errors.hpp>
#include <etpa/plasma.hpp>
#include <etpa/quantities.hpp>
#include <etpa/tpa_rates.hpp>
#include <etpa/transition_finder.hpp>

namespace fs = std::filesystem;
using njson = nlohmann::json;
using namespace etpa;

namespace {

constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { table, csv, json };

struct Options {
    std::string config_path;
    OutputFormat format = OutputFormat::table;
    bool meta = false;
    std::string command;
};

std::string g10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string e10(double v) {
    if (v == 0.0) v = 0.0;  // canonical zero, no "-0" cells
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

std::string csv_quote(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void print_meta(const Options& opt, std::ostream& out, const char* prefix) {
    if (!opt.meta) return;
    out << prefix << " command=" << opt.command << " version=" << kVersion;
    if (!opt.config_path.empty()) out << " config=" << opt.config_path;
    out << "\n";
}

njson meta_block(const Options& opt) {
    njson meta;
    meta["command"] = opt.command;
    meta["version"] = kVersion;
    if (!opt.config_path.empty()) meta["config"] = opt.config_path;
    return meta;
}

//! Loaded run configuration. Accessors throw ValidationError carrying the
//! dotted field path so the CLI can exit 2 with a precise location.
class Config {
public:
    Config() : data_(njson::object()) {}

    static Config load(const std::string& path) {
        Config cfg;
        if (path.empty()) return cfg;
        std::ifstream in(path);
        if (!in.good()) throw ValidationError("config file '" + path + "' not readable");
        try {
            in >> cfg.data_;
        } catch (const njson::exception& e) {
            throw ParseError("config file '" + path + "': " + e.what());
        }
        if (!cfg.data_.is_object())
            throw ValidationError("config file '" + path + "' must hold a JSON object");
        cfg.dir_ = fs::path(path).parent_path();
        return cfg;
    }

    bool has_section(const std::string& name) const { return data_.contains(name); }

    const njson* find(const std::string& section, const std::string& key) const {
        if (!data_.contains(section)) return nullptr;
        const auto& sec = data_.at(section);
        if (!sec.is_object())
            throw ValidationError("config section '" + section + "' must be an object");
        if (!sec.contains(key)) return nullptr;
        return &sec.at(key);
    }

    std::optional<double> maybe_number(const std::string& section, const std::string& key) const {
        const auto* node = find(section, key);
        if (!node) return std::nullopt;
        if (!node->is_number())
            throw ValidationError("config field " + section + "." + key + " must be a number");
        return node->get<double>();
    }

    double number(const std::string& section, const std::string& key, double fallback) const {
        return maybe_number(section, key).value_or(fallback);
    }

    double required_number(const std::string& section, const std::string& key) const {
        const auto value = maybe_number(section, key);
        if (!value)
            throw ValidationError("config field " + section + "." + key + " is required");
        return *value;
    }

    std::optional<std::string> maybe_text(const std::string& section,
                                          const std::string& key) const {
        const auto* node = find(section, key);
        if (!node) return std::nullopt;
        if (!node->is_string())
            throw ValidationError("config field " + section + "." + key + " must be a string");
        return node->get<std::string>();
    }

    bool flag(const std::string& section, const std::string& key, bool fallback) const {
        const auto* node = find(section, key);
        if (!node) return fallback;
        if (!node->is_boolean())
            throw ValidationError("config field " + section + "." + key + " must be a boolean");
        return node->get<bool>();
    }

    std::optional<std::vector<std::string>> maybe_list(const std::string& section,
                                                       const std::string& key) const {
        const auto* node = find(section, key);
        if (!node) return std::nullopt;
        if (!node->is_array())
            throw ValidationError("config field " + section + "." + key + " must be a list");
        std::vector<std::string> out;
        for (const auto& item : *node) {
            if (!item.is_string())
                throw ValidationError("config field " + section + "." + key +
                                      " must hold strings");
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    std::optional<std::vector<double>> maybe_numbers(const std::string& section,
                                                     const std::string& key) const {
        const auto* node = find(section, key);
        if (!node) return std::nullopt;
        if (!node->is_array())
            throw ValidationError("config field " + section + "." + key + " must be a list");
        std::vector<double> out;
        for (const auto& item : *node) {
            if (!item.is_number())
                throw ValidationError("config field " + section + "." + key +
                                      " must hold numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    //! files.<key>, resolved relative to the config file's directory.
    fs::path file(const std::string& key) const {
        const auto text = maybe_text("files", key);
        if (!text) throw ValidationError("config field files." + key + " is required");
        fs::path path(*text);
        if (path.is_relative()) path = dir_ / path;
        if (!fs::exists(path))
            throw ValidationError("config field files." + key + ": file '" + path.string() +
                                  "' does not exist");
        return path;
    }

    bool has_file(const std::string& key) const {
        return find("files", key) != nullptr;
    }

private:
    njson data_;
    fs::path dir_;
};

std::ifstream open_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in.good()) throw ValidationError("cannot open '" + path.string() + "'");
    return in;
}

LaserSource laser_from(const Config& cfg) {
    if (!cfg.has_section("laser"))
        throw ValidationError("config section 'laser' is required for this command");
    LaserSource src;
    src.wavelength = Quantity{cfg.number("laser", "wavelength_nm", 400.0), Unit::nanometre};
    const auto mode = cfg.maybe_text("laser", "mode").value_or("cw");
    if (mode == "cw") {
        src.mode = CwSource{Quantity{cfg.number("laser", "average_power_W", 1.0), Unit::watt}};
    } else if (mode == "pulsed") {
        PulsedSource pulsed;
        pulsed.pulse_energy =
            Quantity{cfg.required_number("laser", "pulse_energy_J"), Unit::joule};
        pulsed.pulse_width =
            Quantity{cfg.required_number("laser", "pulse_width_ps"), Unit::picosecond};
        pulsed.rep_rate = Quantity{cfg.required_number("laser", "rep_rate_Hz"), Unit::hertz};
        src.mode = pulsed;
    } else {
        throw ValidationError("config field laser.mode must be 'cw' or 'pulsed'");
    }
    validate(src);
    return src;
}

BeamGeometry geometry_from(const Config& cfg) {
    BeamGeometry geom;
    geom.spot_diameter =
        Quantity{cfg.number("laser", "spot_diameter_um", 10.0), Unit::micrometre};
    validate(geom);
    return geom;
}

TargetSpecies species_from(const Config& cfg) {
    TargetSpecies species;
    species.name = cfg.maybe_text("species", "name").value_or("target");
    species.sigma_c =
        Quantity{cfg.number("species", "sigma_c_cm4s", 1.0e-48), Unit::centimetre4_second};
    validate(species);
    return species;
}

PumpLaser pump_from(const Config& cfg) {
    PumpLaser pump;
    pump.wavelength =
        Quantity{cfg.number("spdc", "pump_wavelength_nm", 405.0), Unit::nanometre};
    pump.linewidth = Quantity{cfg.number("spdc", "pump_linewidth_Hz", 0.0), Unit::hertz};
    pump.power = Quantity{cfg.number("spdc", "pump_power_W", 0.0), Unit::watt};
    validate(pump);
    return pump;
}

SpdcConfig spdc_from(const Config& cfg) {
    SpdcConfig spdc;
    const auto type = cfg.maybe_text("spdc", "type").value_or("I");
    if (type == "I")
        spdc.type = SpdcType::type_i;
    else if (type == "II")
        spdc.type = SpdcType::type_ii;
    else
        throw ValidationError("config field spdc.type must be 'I' or 'II'");
    if (const auto angle = cfg.maybe_number("spdc", "crossing_angle_deg"))
        spdc.crossing_angle = *angle * M_PI / 180.0;
    spdc.biphoton_bandwidth =
        Quantity{cfg.number("spdc", "biphoton_bandwidth_Hz", 1.0e14), Unit::hertz};
    spdc.beam_diameter =
        Quantity{cfg.number("spdc", "beam_diameter_um", 10.0), Unit::micrometre};
    spdc.conversion_efficiency = cfg.number("spdc", "conversion_efficiency", 0.0);
    spdc.time_bandwidth_factor = cfg.number("spdc", "time_bandwidth_factor", 1.0);
    if (const auto area = cfg.maybe_number("spdc", "entangled_area_cm2"))
        spdc.entangled_area_override = Quantity{*area, Unit::square_centimetre};
    validate(spdc);
    return spdc;
}

// ---- report emission -------------------------------------------------------

struct ReportRow {
    std::string key;
    double value = 0.0;
    std::string unit;  // empty for dimensionless
};

struct Report {
    std::vector<ReportRow> rows;
    std::vector<std::pair<std::string, std::string>> notes;

    void add(const std::string& key, const Quantity& q) {
        rows.push_back({key, q.magnitude(), std::string(unit_symbol(q.unit()))});
    }
    void add(const std::string& key, double value, const std::string& unit = "") {
        rows.push_back({key, value, unit});
    }
};

void emit_report(const Report& report, const Options& opt, std::ostream& out) {
    switch (opt.format) {
        case OutputFormat::table: {
            print_meta(opt, out, "#");
            std::size_t width = 0;
            for (const auto& row : report.rows) width = std::max(width, row.key.size());
            for (const auto& row : report.rows) {
                out << row.key << std::string(width - row.key.size(), ' ') << " = "
                    << g10(row.value);
                if (!row.unit.empty()) out << " " << row.unit;
                out << "\n";
            }
            for (const auto& [key, text] : report.notes)
                out << "note (" << key << "): " << text << "\n";
            break;
        }
        case OutputFormat::csv: {
            print_meta(opt, out, "#");
            out << "key,value,unit\n";
            for (const auto& row : report.rows)
                out << row.key << "," << e10(row.value) << "," << csv_quote(row.unit) << "\n";
            for (const auto& [key, text] : report.notes)
                out << key << "," << csv_quote(text) << ",\n";
            break;
        }
        case OutputFormat::json: {
            njson doc;
            for (const auto& row : report.rows)
                doc[row.key] = {{"value", row.value}, {"unit", row.unit}};
            for (const auto& [key, text] : report.notes) doc["notes"][key] = text;
            if (opt.meta) doc["meta"] = meta_block(opt);
            out << doc.dump(2) << "\n";
            break;
        }
    }
}

struct DataTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // preformatted cells
    njson json_rows = njson::array();
};

void emit_table(const DataTable& table, const Options& opt, std::ostream& out) {
    switch (opt.format) {
        case OutputFormat::table: {
            print_meta(opt, out, "#");
            std::vector<std::size_t> width(table.header.size());
            for (std::size_t c = 0; c < table.header.size(); ++c)
                width[c] = table.header[c].size();
            for (const auto& row : table.rows)
                for (std::size_t c = 0; c < row.size(); ++c)
                    width[c] = std::max(width[c], row[c].size());
            const auto line = [&](const std::vector<std::string>& cells) {
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (c) out << "  ";
                    out << cells[c] << std::string(width[c] - cells[c].size(), ' ');
                }
                out << "\n";
            };
            line(table.header);
            for (const auto& row : table.rows) line(row);
            break;
        }
        case OutputFormat::csv: {
            print_meta(opt, out, "#");
            for (std::size_t c = 0; c < table.header.size(); ++c)
                out << (c ? "," : "") << csv_quote(table.header[c]);
            out << "\n";
            for (const auto& row : table.rows) {
                for (std::size_t c = 0; c < row.size(); ++c)
                    out << (c ? "," : "") << csv_quote(row[c]);
                out << "\n";
            }
            break;
        }
        case OutputFormat::json: {
            njson doc;
            doc["rows"] = table.json_rows;
            if (opt.meta) doc["meta"] = meta_block(opt);
            out << doc.dump(2) << "\n";
            break;
        }
    }
}

// ---- commands --------------------------------------------------------------

int cmd_convert(double value, const std::string& from, const std::string& to,
                const Options& opt) {
    const auto from_unit = parse_unit(from);
    if (!from_unit) throw ValidationError("unknown unit '" + from + "'");
    const auto to_unit = parse_unit(to);
    if (!to_unit) throw ValidationError("unknown unit '" + to + "'");
    const auto converted = convert(Quantity{value, *from_unit}, *to_unit);

    Report report;
    report.add("value", converted);
    emit_report(report, opt, std::cout);
    return 0;
}

int cmd_source(const Config& cfg, const Options& opt) {
    const auto pump = pump_from(cfg);
    const auto spdc = spdc_from(cfg);
    const auto field = make_biphoton_field(pump, spdc);

    Report report;
    report.add("degenerate_wavelength", convert(field.degenerate_wavelength, Unit::nanometre));
    report.add("correlation_time", field.correlation_time);
    report.add("entangled_area", field.entangled_area);
    report.add("pair_rate", field.pair_rate);
    report.add("pair_flux", field.pair_flux);
    report.add("sum_frequency_linewidth", field.sum_frequency_linewidth);
    if (spdc.crossing_angle)
        report.add("crossing_volume", crossing_volume(spdc.beam_diameter, *spdc.crossing_angle));
    emit_report(report, opt, std::cout);
    return 0;
}

int cmd_rates(const Config& cfg, bool paper_check, const Options& opt) {
    const auto laser = laser_from(cfg);
    const auto geom = geometry_from(cfg);
    const auto species = species_from(cfg);
    const auto field = make_biphoton_field(pump_from(cfg), spdc_from(cfg));
    const auto report = build_rate_report(laser, geom, species, field);

    Report out;
    out.add("wavelength", report.wavelength);
    out.add("average_flux", report.average_flux);
    out.add("peak_flux", report.peak_flux);
    out.add("peak_to_average_flux_ratio",
            report.peak_flux.magnitude() / report.average_flux.magnitude());
    out.add("classical_rate_average", report.classical_rate_average);
    out.add("classical_rate_peak", report.classical_rate_peak);
    out.add("entangled_cross_section", report.entangled_cross_section);
    out.add("pair_flux", report.pair_flux);
    out.add("entangled_rate", report.entangled_rate);
    out.add("critical_flux", report.critical_flux_value);
    if (paper_check) out.notes.push_back({"unit_mixing", report.mixed_unit_note});
    emit_report(out, opt, std::cout);
    return 0;
}

std::vector<double> parse_te_range(const std::string& range_arg) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char trailing = 0;
    if (std::sscanf(range_arg.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &trailing) != 3)
        throw ValidationError("--Te-range expects 'start:stop:count', got '" + range_arg + "'");
    if (count < 1) throw ValidationError("--Te-range count must be at least 1");
    if (!(lo <= hi)) throw ValidationError("--Te-range start must not exceed stop");
    std::vector<double> out;
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    for (int k = 0; k < count; ++k)
        out.push_back(lo + (hi - lo) * static_cast<double>(k) / (count - 1));
    return out;
}

int cmd_abundance(const Config& cfg, const std::optional<double>& te_single,
                  const std::string& te_range, const Options& opt) {
    auto in = open_file(cfg.file("rate_coefficients"));
    const auto table = parse_rate_coefficient_table(in);

    std::vector<double> te_list;
    if (!te_range.empty() && te_single)
        throw ValidationError("--Te and --Te-range are mutually exclusive");
    if (!te_range.empty())
        te_list = parse_te_range(te_range);
    else if (te_single)
        te_list = {*te_single};
    else
        te_list = {cfg.number("plasma", "Te_eV", 3.0)};

    const auto scan = scan_abundance(table, te_list);

    DataTable out;
    out.header.push_back("Te_eV");
    for (int z = 0; z <= table.max_charge(); ++z)
        out.header.push_back("f" + std::to_string(z));
    for (const auto& dist : scan) {
        std::vector<std::string> row{g10(dist.te_ev)};
        njson jrow;
        jrow["Te_eV"] = dist.te_ev;
        jrow["fractions"] = dist.fractions;
        for (double f : dist.fractions) row.push_back(e10(f));
        out.rows.push_back(std::move(row));
        out.json_rows.push_back(std::move(jrow));
    }
    emit_table(out, opt, std::cout);
    return 0;
}

struct PlasmaInputs {
    LevelTable levels;
    LineTable lines;
    CollisionStrengthTable collisions;
    std::vector<std::string> metastables;
    CRSystem sys;
    std::vector<double> driver_populations;
};

PlasmaInputs plasma_inputs_from(const Config& cfg) {
    auto level_stream = open_file(cfg.file("levels"));
    auto levels = parse_level_table(level_stream);
    auto line_stream = open_file(cfg.file("lines"));
    auto lines = parse_line_table(line_stream, levels).table;
    auto collision_stream = open_file(cfg.file("collisions"));
    auto collisions = CollisionStrengthTable::parse(collision_stream, levels);

    auto metastables = find_metastables(levels, lines);

    std::vector<std::string> drivers;
    const auto configured = cfg.maybe_list("plasma", "drivers");
    if (!configured || (configured->size() == 1 && configured->front() == "auto")) {
        drivers.push_back(levels.ground().id);
        drivers.insert(drivers.end(), metastables.begin(), metastables.end());
    } else {
        drivers = *configured;
    }

    std::vector<double> populations;
    if (const auto given = cfg.maybe_numbers("plasma", "driver_populations")) {
        if (given->size() != drivers.size())
            throw ValidationError("config field plasma.driver_populations must list one value "
                                  "per driver (" +
                                  std::to_string(drivers.size()) + " drivers)");
        populations = *given;
    } else {
        populations.assign(drivers.size(), 0.1);
        if (!populations.empty()) populations.front() = 1.0;
    }

    PlasmaInputs inputs;
    inputs.levels = std::move(levels);
    inputs.lines = std::move(lines);
    inputs.collisions = std::move(collisions);
    inputs.metastables = std::move(metastables);
    inputs.driver_populations = std::move(populations);
    inputs.sys.levels = inputs.levels;
    inputs.sys.lines = inputs.lines;
    inputs.sys.collisions = inputs.collisions;
    inputs.sys.n_e_cm3 = cfg.number("plasma", "n_e_cm3", 3.0e13);
    inputs.sys.te_ev = cfg.number("plasma", "Te_eV", 3.0);
    inputs.sys.drivers = drivers;
    return inputs;
}

int cmd_populations(const Config& cfg, const Options& opt) {
    auto inputs = plasma_inputs_from(cfg);
    const auto result = solve_cr_populations(inputs.sys, inputs.driver_populations);

    const std::set<std::string> metastable_set(inputs.metastables.begin(),
                                               inputs.metastables.end());
    std::map<std::string, std::size_t> driver_slot;
    for (std::size_t k = 0; k < result.driver_ids.size(); ++k)
        driver_slot[result.driver_ids[k]] = k;
    std::map<std::string, std::size_t> level_slot;
    for (std::size_t k = 0; k < result.level_ids.size(); ++k)
        level_slot[result.level_ids[k]] = k;

    DataTable out;
    out.header = {"level_id", "energy_cm1", "metastable", "population"};
    for (const auto& id : result.driver_ids) out.header.push_back("from_" + id);

    for (const auto& level : inputs.levels.levels()) {
        const bool meta = metastable_set.count(level.id) > 0;
        std::vector<std::string> row{level.id, g10(level.energy_cm1()), meta ? "*" : ""};
        njson jrow;
        jrow["level_id"] = level.id;
        jrow["energy_cm1"] = level.energy_cm1();
        jrow["metastable"] = meta;
        njson contributions = njson::object();
        if (const auto it = driver_slot.find(level.id); it != driver_slot.end()) {
            const double pop = result.driver_populations[it->second];
            jrow["driver"] = true;
            jrow["population"] = pop;
            row.push_back(e10(pop));
            for (const auto& id : result.driver_ids) {
                const double share = id == level.id ? pop : 0.0;
                row.push_back(e10(share));
                contributions[id] = share;
            }
        } else {
            const auto slot = level_slot.at(level.id);
            jrow["driver"] = false;
            jrow["population"] = result.total[slot];
            row.push_back(e10(result.total[slot]));
            for (std::size_t k = 0; k < result.driver_ids.size(); ++k) {
                double share = result.per_driver[k][slot];
                if (share == 0.0) share = 0.0;  // scrub -0
                row.push_back(e10(share));
                contributions[result.driver_ids[k]] = share;
            }
        }
        jrow["contributions"] = contributions;
        out.rows.push_back(std::move(row));
        out.json_rows.push_back(std::move(jrow));
    }
    emit_table(out, opt, std::cout);
    if (result.clamped && opt.format != OutputFormat::json)
        std::cout << "# note: negative rounding residuals clamped to zero\n";
    return 0;
}

SearchConstraints search_from(const Config& cfg, const std::optional<double>& min_nm,
                              const std::optional<double>& max_nm) {
    SearchConstraints constraints;
    constraints.pump_min =
        Quantity{min_nm.value_or(cfg.number("search", "pump_min_nm", 350.0)), Unit::nanometre};
    constraints.pump_max =
        Quantity{max_nm.value_or(cfg.number("search", "pump_max_nm", 400.0)), Unit::nanometre};
    constraints.require_intermediate_path =
        cfg.flag("search", "require_intermediate_path", true);
    constraints.relax_intermediate_energy =
        cfg.flag("search", "relax_intermediate_energy", false);
    constraints.apply_j_rule = cfg.flag("search", "apply_J_rule", false);
    return constraints;
}

//! Predicate audit for one pair, mirroring the search filters.
int cmd_explain(const LevelTable& levels, const LineTable& lines,
                const SearchConstraints& constraints, const std::string& pair_arg,
                const Options& opt) {
    const auto colon = pair_arg.find(':');
    if (colon == std::string::npos)
        throw ValidationError("--explain expects 'lower_id:upper_id', got '" + pair_arg + "'");
    const auto& first = levels.at(pair_arg.substr(0, colon));
    const auto& second = levels.at(pair_arg.substr(colon + 1));
    const auto& lower = first.energy_cm1() <= second.energy_cm1() ? first : second;
    const auto& upper = first.energy_cm1() <= second.energy_cm1() ? second : first;

    struct Check {
        std::string name;
        bool passed;
        std::string detail;
    };
    std::vector<Check> checks;

    const double energy = upper.energy_cm1() - lower.energy_cm1();
    checks.push_back({"transition energy", energy > 0.0,
                      energy > 0.0 ? g10(energy) + " cm^-1"
                                   : "levels are degenerate; no two-photon gap"});

    checks.push_back({"parity rule", lower.parity() == upper.parity(),
                      lower.parity() == upper.parity()
                          ? "both " + std::string(lower.parity() == Parity::even ? "even" : "odd")
                          : "two-photon pairs must share parity"});
    const bool spin_ok = lower.term.multiplicity == upper.term.multiplicity;
    checks.push_back({"spin rule", spin_ok,
                      spin_ok ? "multiplicity " + std::to_string(lower.term.multiplicity)
                              : "multiplicity changes " +
                                    std::to_string(lower.term.multiplicity) + " -> " +
                                    std::to_string(upper.term.multiplicity)});
    const int dl = std::abs(lower.term.orbital_l - upper.term.orbital_l);
    checks.push_back({"orbital rule", dl == 0 || dl == 2,
                      "|dL| = " + std::to_string(dl) + (dl == 0 || dl == 2 ? "" : ", need 0 or 2")});
    if (constraints.apply_j_rule) {
        const int dj2 = std::abs(lower.twice_j - upper.twice_j);
        checks.push_back({"J rule", dj2 <= 4, "|dJ| = " + g10(dj2 / 2.0)});
    }

    if (energy > 0.0) {
        const double pump = pump_wavelength_nm(energy);
        const double lo = constraints.pump_min.in(Unit::nanometre);
        const double hi = constraints.pump_max.in(Unit::nanometre);
        const bool inside = pump >= lo && pump <= hi;
        checks.push_back({"pump window", inside,
                          "pump " + g10(pump) + " nm vs [" + g10(lo) + ", " + g10(hi) + "] nm"});
    }

    std::size_t intermediates = 0;
    for (const auto& mid : levels.levels()) {
        if (mid.id == lower.id || mid.id == upper.id) continue;
        if (!constraints.relax_intermediate_energy &&
            !(mid.energy_cm1() > lower.energy_cm1() && mid.energy_cm1() < upper.energy_cm1()))
            continue;
        if (single_photon_allowed(lower, mid) && single_photon_allowed(mid, upper))
            ++intermediates;
    }
    if (constraints.require_intermediate_path)
        checks.push_back({"intermediate path", intermediates > 0,
                          std::to_string(intermediates) + " linking level(s)"});

    bool candidate = true;
    for (const auto& check : checks) candidate = candidate && check.passed;
    (void)lines;

    switch (opt.format) {
        case OutputFormat::table: {
            print_meta(opt, std::cout, "#");
            std::cout << "pair " << lower.id << " -> " << upper.id << "\n";
            for (const auto& check : checks)
                std::cout << "  " << check.name << ": " << (check.passed ? "pass" : "FAIL")
                          << " (" << check.detail << ")\n";
            std::cout << (candidate ? "pair is an allowed candidate"
                                    : "pair is excluded")
                      << "\n";
            break;
        }
        case OutputFormat::csv: {
            print_meta(opt, std::cout, "#");
            std::cout << "check,passed,detail\n";
            for (const auto& check : checks)
                std::cout << csv_quote(check.name) << "," << (check.passed ? "true" : "false")
                          << "," << csv_quote(check.detail) << "\n";
            break;
        }
        case OutputFormat::json: {
            njson doc;
            doc["lower_id"] = lower.id;
            doc["upper_id"] = upper.id;
            doc["candidate"] = candidate;
            doc["checks"] = njson::array();
            for (const auto& check : checks)
                doc["checks"].push_back(
                    {{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
            if (opt.meta) doc["meta"] = meta_block(opt);
            std::cout << doc.dump(2) << "\n";
            break;
        }
    }
    return 0;
}

int cmd_find(const Config& cfg, const std::string& explain_pair,
             const std::optional<double>& pump_min_nm, const std::optional<double>& pump_max_nm,
             const Options& opt) {
    auto level_stream = open_file(cfg.file("levels"));
    const auto levels = parse_level_table(level_stream);
    auto line_stream = open_file(cfg.file("lines"));
    const auto lines = parse_line_table(line_stream, levels).table;
    const auto constraints = search_from(cfg, pump_min_nm, pump_max_nm);

    if (!explain_pair.empty())
        return cmd_explain(levels, lines, constraints, explain_pair, opt);

    // rank with CR populations when the config provides the plasma inputs
    std::optional<PopulationResult> populations;
    if (cfg.has_file("collisions") && cfg.has_section("plasma")) {
        auto inputs = plasma_inputs_from(cfg);
        populations = solve_cr_populations(inputs.sys, inputs.driver_populations);
    }

    const auto candidates =
        find_candidates(levels, lines, populations ? &*populations : nullptr, constraints);

    DataTable out;
    out.header = {"lower_id", "upper_id",        "E_cm1",      "pump_nm",     "biphoton_nm",
                  "n_intermediates", "best_fluor_nm", "best_branch", "score"};
    for (const auto& c : candidates) {
        std::vector<std::string> row{c.lower_id,
                                     c.upper_id,
                                     g10(c.transition_energy_cm1),
                                     g10(c.pump_wavelength_nm),
                                     g10(c.degenerate_photon_wavelength_nm),
                                     std::to_string(c.intermediates.size())};
        njson jrow;
        jrow["lower_id"] = c.lower_id;
        jrow["upper_id"] = c.upper_id;
        jrow["E_cm1"] = c.transition_energy_cm1;
        jrow["pump_nm"] = c.pump_wavelength_nm;
        jrow["biphoton_nm"] = c.degenerate_photon_wavelength_nm;
        jrow["intermediates"] = njson::array();
        for (const auto& mid : c.intermediates)
            jrow["intermediates"].push_back({{"id", mid.id}, {"detuning_cm1", mid.detuning_cm1}});
        jrow["fluorescence"] = njson::array();
        for (const auto& branch : c.fluorescence)
            jrow["fluorescence"].push_back(
                {{"upper_id", branch.line.upper_id},
                 {"lower_id", branch.line.lower_id},
                 {"wavelength_nm", branch.line.wavelength.in(Unit::nanometre)},
                 {"branching", branch.branching}});
        if (c.fluorescence.empty()) {
            row.push_back("");
            row.push_back("");
        } else {
            row.push_back(g10(c.fluorescence.front().line.wavelength.in(Unit::nanometre)));
            row.push_back(g10(c.fluorescence.front().branching));
        }
        row.push_back(e10(c.score));
        jrow["ranked"] = c.ranked;
        jrow["score"] = c.score;
        jrow["lower_population"] = c.lower_population;
        jrow["upper_population"] = c.upper_population;
        out.rows.push_back(std::move(row));
        out.json_rows.push_back(std::move(jrow));
    }
    emit_table(out, opt, std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entangled two-photon absorption experiment design toolkit"};
    app.fallthrough();
    app.require_subcommand(1);

    Options opt;
    std::string format = "table";
    app.add_option("--config", opt.config_path, "JSON run configuration");
    app.add_option("--output", format, "Output format: table, csv, or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_flag("--meta", opt.meta, "Prepend run metadata to the output");

    auto* convert_cmd =
        app.add_subcommand("convert", "Convert a value between units (photon-equivalent "
                                      "across energy, wavelength, and frequency)");
    double convert_value = 0.0;
    std::string convert_from, convert_to;
    convert_cmd->add_option("value", convert_value, "Magnitude to convert")->required();
    convert_cmd->add_option("from", convert_from, "Source unit, e.g. eV, nm, cm-1")->required();
    convert_cmd->add_option("to", convert_to, "Target unit")->required();

    auto* source_cmd =
        app.add_subcommand("source", "Summarize the down-conversion source (config: spdc)");

    auto* rates_cmd = app.add_subcommand(
        "rates", "Photon fluxes, TPA and ETPA rates (config: laser, species, spdc)");
    bool paper_check = false;
    rates_cmd->add_flag("--paper-check", paper_check,
                        "Also print the mixed-unit reading behind commonly quoted rate figures");

    auto* abundance_cmd = app.add_subcommand(
        "abundance", "Charge-state fractions vs Te (config: files.rate_coefficients)");
    double te_value = 0.0;
    std::string te_range;
    auto* te_opt = abundance_cmd->add_option("--Te", te_value, "Single electron temperature, eV");
    abundance_cmd->add_option("--Te-range", te_range, "Scan 'start:stop:count' in eV");

    auto* populations_cmd = app.add_subcommand(
        "populations", "Steady-state level populations (config: files.*, plasma)");

    auto* find_cmd = app.add_subcommand(
        "find", "Two-photon transition candidates (config: files.levels, files.lines, search)");
    std::string explain_pair;
    std::optional<double> pump_min_nm, pump_max_nm;
    find_cmd->add_option("--explain", explain_pair,
                         "Audit one pair 'lower_id:upper_id' against every filter");
    find_cmd->add_option("--pump-min-nm", pump_min_nm, "Override the window lower edge");
    find_cmd->add_option("--pump-max-nm", pump_max_nm, "Override the window upper edge");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (format == "csv") opt.format = OutputFormat::csv;
    if (format == "json") opt.format = OutputFormat::json;

    try {
        const auto cfg = Config::load(opt.config_path);
        if (convert_cmd->parsed()) {
            opt.command = "convert";
            return cmd_convert(convert_value, convert_from, convert_to, opt);
        }
        if (source_cmd->parsed()) {
            opt.command = "source";
            return cmd_source(cfg, opt);
        }
        if (rates_cmd->parsed()) {
            opt.command = "rates";
            return cmd_rates(cfg, paper_check, opt);
        }
        if (abundance_cmd->parsed()) {
            opt.command = "abundance";
            std::optional<double> te_single;
            if (te_opt->count() > 0) te_single = te_value;
            return cmd_abundance(cfg, te_single, te_range, opt);
        }
        if (populations_cmd->parsed()) {
            opt.command = "populations";
            return cmd_populations(cfg, opt);
        }
        if (find_cmd->parsed()) {
            opt.command = "find";
            return cmd_find(cfg, explain_pair, pump_min_nm, pump_max_nm, opt);
        }
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
