#include "sgf/config.hpp"

#include <fstream>
#include <sstream>

namespace sgf {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not a number: '" + v + "'");
    }
}

long parse_int(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not an integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                      "' is not a boolean: '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty entry in list '" + key +
                              "'");
        out.push_back(parse_double(item, line, key));
    }
    if (out.empty())
        throw ConfigError("line " + std::to_string(line) + ": empty list for '" + key + "'");
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    make_grid(n, box_length);  // throws on a bad grid
    params.validate();
    parse_init_kind(init_kind);
    if (amplitude < 0.0) throw ConfigError("init amplitude must be nonnegative");
    if (mode != "verify" && mode != "evolve" && mode != "fit" && mode != "compare-alpha")
        throw ConfigError("unknown run mode '" + mode +
                          "' (expected verify, evolve, fit or compare-alpha)");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (!(envelope_cap > 0.0)) throw ConfigError("envelope_cap must be positive");
    if (alphas.empty()) throw ConfigError("alpha sweep list must not be empty");
    for (double a : alphas)
        if (a < 0.0) throw ConfigError("alpha sweep entries must be nonnegative");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::size_t cpos = raw.find_first_of("#;");
        std::string s = trim(cpos == std::string::npos ? raw : raw.substr(0, cpos));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("line " + std::to_string(line) + ": unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "grid" && section != "params" && section != "time" &&
                section != "init" && section != "run" && section != "sweep")
                throw ConfigError("line " + std::to_string(line) + ": unknown section '[" +
                                  section + "]'");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");

        auto unknown = [&]() -> ConfigError {
            return ConfigError("line " + std::to_string(line) + ": unknown key '" + key +
                               "' in section '[" + section + "]'");
        };

        if (section == "grid") {
            if (key == "n") cfg.n = static_cast<int>(parse_int(val, line, key));
            else if (key == "box_length") cfg.box_length = parse_double(val, line, key);
            else throw unknown();
        } else if (section == "params") {
            if (key == "alpha") cfg.params.alpha = parse_double(val, line, key);
            else if (key == "epsilon") cfg.params.epsilon = parse_double(val, line, key);
            else if (key == "T") cfg.params.T = parse_double(val, line, key);
            else if (key == "theta") cfg.params.theta = parse_double(val, line, key);
            else if (key == "K") cfg.params.K = parse_double(val, line, key);
            else throw unknown();
        } else if (section == "time") {
            if (key == "dt") cfg.params.dt = parse_double(val, line, key);
            else if (key == "t_end") cfg.params.t_end = parse_double(val, line, key);
            else if (key == "output_every")
                cfg.params.output_every = static_cast<int>(parse_int(val, line, key));
            else throw unknown();
        } else if (section == "init") {
            if (key == "kind") cfg.init_kind = val;
            else if (key == "amplitude") cfg.amplitude = parse_double(val, line, key);
            else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(val, line, key));
            else if (key == "coeffs") {
                auto v = parse_list(val, line, key);
                if (v.size() != 3)
                    throw ConfigError("line " + std::to_string(line) +
                                      ": 'coeffs' needs exactly three entries");
                cfg.coeffs = {v[0], v[1], v[2]};
            } else throw unknown();
        } else if (section == "run") {
            if (key == "mode") cfg.mode = val;
            else if (key == "output_dir") cfg.output_dir = val;
            else if (key == "gate_moments") cfg.gate_moments = parse_bool(val, line, key);
            else if (key == "gate_envelope") cfg.gate_envelope = parse_bool(val, line, key);
            else if (key == "envelope_cap") cfg.envelope_cap = parse_double(val, line, key);
            else throw unknown();
        } else if (section == "sweep") {
            if (key == "alphas") cfg.alphas = parse_list(val, line, key);
            else throw unknown();
        } else {
            throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                              "' appears before any section header");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace sgf
