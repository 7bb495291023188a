#include <fstream>
#include <set>
#include <sstream>

#include "apfv/harness.hpp"
#include "apfv/models.hpp"

namespace apfv {
namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "': not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw ConfigError("config: key '" + key + "': trailing junk in '" + v + "'");
    return out;
}

int to_int(const std::string& key, const std::string& v)
{
    const double d = to_double(key, v);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("config: key '" + key + "': expected an integer, got '" + v + "'");
    return i;
}

std::vector<double> to_list(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw ConfigError("config: key '" + key + "': empty list");
    return out;
}

Boundary to_boundary(const std::string& v)
{
    if (v == "periodic") return Boundary::periodic;
    if (v == "outflow") return Boundary::outflow;
    throw ConfigError("config: boundary must be 'periodic' or 'outflow', got '" + v + "'");
}

} // namespace

void RunConfig::validate() const
{
    if (model.empty()) throw ConfigError("config: [model] name is required");
    if (scheme != "hll" && scheme != "ap" && scheme != "parabolic")
        throw ConfigError("config: scheme must be hll, ap, or parabolic, got '" + scheme + "'");
    if (num_cells < 4) throw ConfigError("config: num_cells must be >= 4");
    if (!(x_max > x_min)) throw ConfigError("config: x_max must exceed x_min");
    if (end_time < 0.0) throw ConfigError("config: end_time must be >= 0");
    if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("config: eps must be in (0, 1]");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("config: cfl must be in (0, 1]");
    if (gamma_mode != "late_time" && gamma_mode != "fixed")
        throw ConfigError("config: gamma_mode must be late_time or fixed");
    if (output_every < 0) throw ConfigError("config: output.every must be >= 0");
    if (ic.profile != "gaussian" && ic.profile != "sine_mode" && ic.profile != "riemann")
        throw ConfigError("config: ic profile must be gaussian, sine_mode, or riemann");
    if (ic.profile == "gaussian" && !(ic.width > 0.0))
        throw ConfigError("config: gaussian width must be > 0");
    if (ic.profile == "sine_mode" && ic.k == 0)
        throw ConfigError("config: sine_mode k must be nonzero");
}

RunConfig parse_config(std::istream& in)
{
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"model", "scheme", "grid", "ic",
                                                        "output"};
            if (!known.count(section))
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": empty key or value");

        if (section == "model") {
            if (key == "name")
                cfg.model = val;
            else
                cfg.model_params[key] = to_double(key, val);  // checked by make_model
        } else if (section == "scheme") {
            if (key == "type")
                cfg.scheme = val;
            else if (key == "eps")
                cfg.eps = to_double(key, val);
            else if (key == "cfl")
                cfg.cfl = to_double(key, val);
            else if (key == "gamma_mode")
                cfg.gamma_mode = val;
            else if (key == "gamma")
                cfg.gamma = to_double(key, val);
            else if (key == "end_time")
                cfg.end_time = to_double(key, val);
            else
                throw ConfigError("config: unknown key '" + key + "' in [scheme]");
        } else if (section == "grid") {
            if (key == "x_min")
                cfg.x_min = to_double(key, val);
            else if (key == "x_max")
                cfg.x_max = to_double(key, val);
            else if (key == "num_cells")
                cfg.num_cells = to_int(key, val);
            else if (key == "boundary")
                cfg.boundary = to_boundary(val);
            else
                throw ConfigError("config: unknown key '" + key + "' in [grid]");
        } else if (section == "ic") {
            if (key == "profile")
                cfg.ic.profile = val;
            else if (key == "component")
                cfg.ic.component = to_int(key, val);
            else if (key == "base")
                cfg.ic.base = to_list(key, val);
            else if (key == "center")
                cfg.ic.center = to_double(key, val);
            else if (key == "width")
                cfg.ic.width = to_double(key, val);
            else if (key == "amplitude")
                cfg.ic.amplitude = to_double(key, val);
            else if (key == "floor")
                cfg.ic.floor = to_double(key, val);
            else if (key == "k")
                cfg.ic.k = to_int(key, val);
            else if (key == "mean")
                cfg.ic.mean = to_double(key, val);
            else if (key == "left")
                cfg.ic.left = to_list(key, val);
            else if (key == "right")
                cfg.ic.right = to_list(key, val);
            else if (key == "jump")
                cfg.ic.jump = to_double(key, val);
            else if (key == "offeq")
                cfg.ic.offeq = to_double(key, val);
            else if (key == "offeq_component")
                cfg.ic.offeq_component = to_int(key, val);
            else
                throw ConfigError("config: unknown key '" + key + "' in [ic]");
        } else if (section == "output") {
            if (key == "every")
                cfg.output_every = to_int(key, val);
            else if (key == "path")
                cfg.output_path = val;
            else
                throw ConfigError("config: unknown key '" + key + "' in [output]");
        } else {
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": key outside any section");
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

} // namespace apfv
