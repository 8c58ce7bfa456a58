#include "sdmax/config.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sdmax/io.hpp"

namespace sdmax {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    const std::string t = trim(v);
    char* end = nullptr;
    const double d = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') fail(line, "not a number: '" + v + "'");
    return d;
}

long long parse_int(const std::string& v, int line) {
    const std::string t = trim(v);
    long long out = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || p != t.data() + t.size()) fail(line, "not an integer: '" + v + "'");
    return out;
}

}  // namespace

void RunConfig::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
    if (format != "csv" && format != "json") bad("format must be csv or json");
    if (!(tolerance_scale >= 0.0)) bad("tolerance_scale must be >= 0");
    if (!(alpha > 0.0)) bad("alpha must be > 0");
    if (grid_points < 4 || (grid_points & (grid_points - 1)) != 0)
        bad("grid points must be a power of two >= 4");
    if (!(box_length_cutoffs > 0.0)) bad("box length must be > 0");
    if (!(band_cutoffs > 1.0)) bad("mode band must exceed the cutoff (band_cutoffs > 1)");
    if (!(packet_width_cutoffs > 0.0)) bad("packet width must be > 0");
    if (!(packet_position_fraction >= 0.0) || packet_position_fraction >= 1.0)
        bad("packet position fraction must lie in [0, 1)");
    if (evolution_model != "corrected" && evolution_model != "maxwell")
        bad("evolution model must be corrected or maxwell");
    if (snapshots < 5) bad("need at least 5 snapshots for a slope");
    if (!(duration_cutoffs > 0.0)) bad("duration must be > 0");
    if (fock_dimension < 2) bad("fock dimension must be >= 2");
    if (!(squeeze_r >= 0.0)) bad("squeeze r must be >= 0");
    if (output_dir.empty()) bad("output_dir must not be empty");
}

PhysicalParams RunConfig::make_params() const {
    return units == UnitSystem::Natural ? PhysicalParams::natural(alpha)
                                        : PhysicalParams::si(alpha);
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    std::set<std::string> seen;

    const std::set<std::string> known_sections = {"run", "grid", "modes", "packet", "fock"};

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_sections.count(section)) fail(line_no, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (section.empty()) fail(line_no, "key outside any [section]");
        const std::string qualified = section + "." + key;
        if (!seen.insert(qualified).second) fail(line_no, "duplicate key " + qualified);

        if (qualified == "run.units") {
            try {
                cfg.units = unit_system_from_string(value);
            } catch (const std::invalid_argument& e) {
                fail(line_no, e.what());
            }
        } else if (qualified == "run.alpha") {
            cfg.alpha = parse_double(value, line_no);
        } else if (qualified == "run.seed") {
            const long long s = parse_int(value, line_no);
            if (s < 0) fail(line_no, "seed must be >= 0");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (qualified == "run.output_dir") {
            cfg.output_dir = value;
        } else if (qualified == "run.format") {
            cfg.format = value;
        } else if (qualified == "run.tolerance_scale") {
            cfg.tolerance_scale = parse_double(value, line_no);
        } else if (qualified == "grid.points") {
            cfg.grid_points = static_cast<int>(parse_int(value, line_no));
        } else if (qualified == "grid.box_length_cutoffs") {
            cfg.box_length_cutoffs = parse_double(value, line_no);
        } else if (qualified == "modes.band_cutoffs") {
            cfg.band_cutoffs = parse_double(value, line_no);
        } else if (qualified == "packet.center_cutoffs") {
            cfg.packet_center_cutoffs = parse_double(value, line_no);
        } else if (qualified == "packet.width_cutoffs") {
            cfg.packet_width_cutoffs = parse_double(value, line_no);
        } else if (qualified == "packet.position_fraction") {
            cfg.packet_position_fraction = parse_double(value, line_no);
        } else if (qualified == "packet.amplitude") {
            cfg.packet_amplitude = parse_double(value, line_no);
        } else if (qualified == "packet.model") {
            cfg.evolution_model = value;
        } else if (qualified == "packet.snapshots") {
            cfg.snapshots = static_cast<int>(parse_int(value, line_no));
        } else if (qualified == "packet.duration_cutoffs") {
            cfg.duration_cutoffs = parse_double(value, line_no);
        } else if (qualified == "fock.dimension") {
            cfg.fock_dimension = static_cast<int>(parse_int(value, line_no));
        } else if (qualified == "fock.coherent_re") {
            cfg.coherent_re = parse_double(value, line_no);
        } else if (qualified == "fock.coherent_im") {
            cfg.coherent_im = parse_double(value, line_no);
        } else if (qualified == "fock.squeeze_r") {
            cfg.squeeze_r = parse_double(value, line_no);
        } else if (qualified == "fock.squeeze_phi") {
            cfg.squeeze_phi = parse_double(value, line_no);
        } else {
            fail(line_no, "unknown key " + qualified);
        }
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(e.what());  // missing config is a config error
    }
    return parse_config(text);
}

std::string to_text(const RunConfig& config) {
    std::ostringstream out;
    out << "[run]\n";
    out << "units = " << to_string(config.units) << "\n";
    out << "alpha = " << format_g17(config.alpha) << "\n";
    out << "seed = " << config.seed << "\n";
    out << "output_dir = " << config.output_dir << "\n";
    out << "format = " << config.format << "\n";
    out << "tolerance_scale = " << format_g17(config.tolerance_scale) << "\n";
    out << "\n[grid]\n";
    out << "points = " << config.grid_points << "\n";
    out << "box_length_cutoffs = " << format_g17(config.box_length_cutoffs) << "\n";
    out << "\n[modes]\n";
    out << "band_cutoffs = " << format_g17(config.band_cutoffs) << "\n";
    out << "\n[packet]\n";
    out << "center_cutoffs = " << format_g17(config.packet_center_cutoffs) << "\n";
    out << "width_cutoffs = " << format_g17(config.packet_width_cutoffs) << "\n";
    out << "position_fraction = " << format_g17(config.packet_position_fraction) << "\n";
    out << "amplitude = " << format_g17(config.packet_amplitude) << "\n";
    out << "model = " << config.evolution_model << "\n";
    out << "snapshots = " << config.snapshots << "\n";
    out << "duration_cutoffs = " << format_g17(config.duration_cutoffs) << "\n";
    out << "\n[fock]\n";
    out << "dimension = " << config.fock_dimension << "\n";
    out << "coherent_re = " << format_g17(config.coherent_re) << "\n";
    out << "coherent_im = " << format_g17(config.coherent_im) << "\n";
    out << "squeeze_r = " << format_g17(config.squeeze_r) << "\n";
    out << "squeeze_phi = " << format_g17(config.squeeze_phi) << "\n";
    return out.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.units == b.units && a.alpha == b.alpha && a.seed == b.seed &&
           a.output_dir == b.output_dir && a.format == b.format &&
           a.tolerance_scale == b.tolerance_scale && a.grid_points == b.grid_points &&
           a.box_length_cutoffs == b.box_length_cutoffs && a.band_cutoffs == b.band_cutoffs &&
           a.packet_center_cutoffs == b.packet_center_cutoffs &&
           a.packet_width_cutoffs == b.packet_width_cutoffs &&
           a.packet_position_fraction == b.packet_position_fraction &&
           a.packet_amplitude == b.packet_amplitude &&
           a.evolution_model == b.evolution_model && a.snapshots == b.snapshots &&
           a.duration_cutoffs == b.duration_cutoffs && a.fock_dimension == b.fock_dimension &&
           a.coherent_re == b.coherent_re && a.coherent_im == b.coherent_im &&
           a.squeeze_r == b.squeeze_r && a.squeeze_phi == b.squeeze_phi;
}

}  // namespace sdmax
