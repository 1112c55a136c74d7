#include "chiralnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chiralnet {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str(), path.string());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text,
                                           const std::string& origin) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected 'key = value', got '" + line +
                                     "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": empty key");
        cfg.entries_[key] = value;
    }
    return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
    return entries_.count(key) > 0;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::size_t pos = 0;
    double value;
    try {
        value = std::stod(it->second, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': '" + it->second +
                                 "' is not a number");
    }
    if (pos != it->second.size())
        throw std::runtime_error("config key '" + key + "': '" + it->second +
                                 "' is not a number");
    return value;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::runtime_error("config key '" + key + "': expected an integer");
    return i;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key +
                                 "': expected an unsigned integer");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw std::runtime_error("config key '" + key + "': expected true or false");
}

const std::vector<ConfigKeyInfo>& config_key_registry() {
    static const std::vector<ConfigKeyInfo> keys = {
        {"variant", "with_cavity", "-", "with_cavity or no_cavity"},
        {"omega_c1", "0", "gamma_ref", "cavity frequency, node 1"},
        {"omega_c2", "0", "gamma_ref", "cavity frequency, node 2"},
        {"omega_a1", "0", "gamma_ref", "atomic frequency, node 1"},
        {"omega_a2", "0", "gamma_ref", "atomic frequency, node 2"},
        {"g1", "0", "gamma_ref", "cavity-atom coupling, node 1"},
        {"g2", "0", "gamma_ref", "cavity-atom coupling, node 2"},
        {"alpha", "0", "rad", "relative phase of the node-2 coupling"},
        {"gamma_R1", "1", "gamma_ref", "rightward cavity decay, node 1"},
        {"gamma_R2", "1", "gamma_ref", "rightward cavity decay, node 2"},
        {"gamma_L1", "0", "gamma_ref", "leftward cavity decay, node 1"},
        {"gamma_L2", "0", "gamma_ref", "leftward cavity decay, node 2"},
        {"Gamma1", "0", "gamma_ref", "atomic decay into non-guided modes, node 1"},
        {"Gamma2", "0", "gamma_ref", "atomic decay into non-guided modes, node 2"},
        {"kD", "0", "rad", "propagation phase k*D, reduced mod 2pi"},
        {"normalize", "false", "-", "rescale rates so gamma_R1 = 1 on load"},
        {"t_max", "40", "1/gamma_ref", "time horizon for trajectories and peak searches"},
        {"grid_points", "1000", "-", "dense time-grid resolution"},
        {"solver", "schrodinger", "-", "simulate backend: schrodinger or master"},
        {"seed", "12345", "-", "Monte-Carlo RNG seed"},
        {"samples", "200", "-", "Monte-Carlo samples per sweep point"},
        {"workers", "0", "-", "worker threads (0 = all hardware threads)"},
        {"observable", "concurrence", "-", "peak objective: concurrence, F1, F2 or F3"},
        {"free", "g1,g2", "-", "optimizer free parameters (of g1, g2, gamma_R2)"},
        {"g1_min", "0", "gamma_ref", "optimizer lower bound for g1"},
        {"g1_max", "1", "gamma_ref", "optimizer upper bound for g1"},
        {"g2_min", "0", "gamma_ref", "optimizer lower bound for g2"},
        {"g2_max", "1", "gamma_ref", "optimizer upper bound for g2"},
        {"gamma_R2_min", "1", "gamma_ref", "optimizer lower bound for gamma_R2"},
        {"gamma_R2_max", "8", "gamma_ref", "optimizer upper bound for gamma_R2"},
        {"coarse_points", "21", "-", "grid points per free axis before refinement"},
        {"multistarts", "3", "-", "Nelder-Mead starts from the best grid cells"},
        {"max_evaluations", "2000", "-", "evaluation budget per Nelder-Mead start"},
        {"simplex_tolerance", "1e-4", "-", "Nelder-Mead diameter stop, scaled units"},
        {"d_min", "0", "lambda", "distance sweep start"},
        {"d_max", "2", "lambda", "distance sweep end"},
        {"d_points", "21", "-", "distance sweep points"},
        {"chi_min", "0", "-", "chirality sweep start"},
        {"chi_max", "1", "-", "chirality sweep end"},
        {"chi_points", "11", "-", "chirality sweep points"},
        {"chirality_mode", "fix_gamma_R", "-",
         "hold gamma_R (fix_gamma_R) or gamma_R + gamma_L (fix_total)"},
        {"delta_min", "0", "gamma_ref", "detuning sweep start"},
        {"delta_max", "1", "gamma_ref", "detuning sweep end"},
        {"delta_points", "11", "-", "detuning sweep points"},
        {"detuning_target", "omega_a1", "-",
         "omega_a1, omega_a2, omega_c1 or omega_c2"},
        {"Gamma_min", "0", "gamma_ref", "atomic-decay sweep start"},
        {"Gamma_max", "0.5", "gamma_ref", "atomic-decay sweep end"},
        {"Gamma_points", "11", "-", "atomic-decay sweep points"},
        {"reoptimize", "both", "-",
         "decay sweep couplings: true, false, or both curves"},
        {"bell_n", "1", "-", "half-wavelength multiple for the Bell-phase check"},
        {"tag", "", "-", "output filename tag (default: timestamp)"},
    };
    return keys;
}

std::string config_keys_help() {
    std::ostringstream out;
    out << "Configuration keys (flat `key = value` file, overridable with "
           "--set key=value):\n";
    for (const ConfigKeyInfo& k : config_key_registry()) {
        out << "  " << k.name;
        for (std::size_t i = k.name.size(); i < 20; ++i) out << ' ';
        out << "default: " << (k.fallback.empty() ? "<timestamp>" : k.fallback);
        for (std::size_t i = k.fallback.size(); i < 14; ++i) out << ' ';
        out << "[" << k.unit << "] " << k.description << "\n";
    }
    return out.str();
}

void require_known_keys(const KeyValueConfig& cfg) {
    for (const auto& [key, value] : cfg.entries()) {
        bool known = false;
        for (const ConfigKeyInfo& k : config_key_registry()) {
            if (k.name == key) {
                known = true;
                break;
            }
        }
        if (!known)
            throw std::runtime_error("unknown config key '" + key +
                                     "' (run with --help for the key list)");
    }
}

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

double round_sig(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    return std::atof(format_sig(value, digits).c_str());
}

std::string csv_to_string(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::logic_error("csv_to_string: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_sig(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

} // namespace chiralnet
