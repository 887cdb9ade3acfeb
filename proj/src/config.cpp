#include "pseudopara/config.hpp"

#include "pseudopara/profile.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace pseudopara {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (v == "inf" || v == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(key, trim(item)));
    }
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += format_double(v[i]);
    }
    return s;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

// One entry per key: how to read it into a config and how to print it.
struct Field {
    std::function<void(RunConfig&, const std::string& key, const std::string& value)> read;
    std::function<std::string(const RunConfig&)> write;
};

using Table = std::vector<std::pair<std::string, Field>>;

template <typename Get>
Field num_field(Get get) {
    return {[get](RunConfig& c, const std::string& k, const std::string& v) {
                get(c) = parse_number(k, v);
            },
            [get](const RunConfig& c) { return format_double(get(c)); }};
}

template <typename Get>
Field int_field(Get get) {
    return {[get](RunConfig& c, const std::string& k, const std::string& v) { get(c) = parse_int(k, v); },
            [get](const RunConfig& c) { return std::to_string(get(c)); }};
}

template <typename Get>
Field bool_field(Get get) {
    return {[get](RunConfig& c, const std::string& k, const std::string& v) { get(c) = parse_bool(k, v); },
            [get](const RunConfig& c) { return format_bool(get(c)); }};
}

template <typename Get>
Field str_field(Get get) {
    return {[get](RunConfig& c, const std::string&, const std::string& v) { get(c) = v; },
            [get](const RunConfig& c) { return get(c); }};
}

template <typename Get>
Field list_field(Get get) {
    return {[get](RunConfig& c, const std::string& k, const std::string& v) { get(c) = parse_list(k, v); },
            [get](const RunConfig& c) { return format_list(get(c)); }};
}

template <typename Get>
Field profile_field(Get get) {
    return {[get](RunConfig& c, const std::string& k, const std::string& v) {
                try {
                    get(c) = RadialProfile::parse(v);
                } catch (const std::exception& e) {
                    throw ConfigError(k + ": " + e.what());
                }
            },
            [get](const RunConfig& c) { return get(c).to_string(); }};
}

const std::vector<std::pair<std::string, Table>>& schema() {
    static const std::vector<std::pair<std::string, Table>> s = {
        {"problem",
         {{"k", num_field([](auto& c) -> auto& { return c.problem.k; })},
          {"p", num_field([](auto& c) -> auto& { return c.problem.p; })},
          {"gamma", num_field([](auto& c) -> auto& { return c.problem.gamma; })},
          {"omega", profile_field([](auto& c) -> auto& { return c.problem.omega; })},
          {"u0", profile_field([](auto& c) -> auto& { return c.problem.u0; })},
          {"nonlinear", bool_field([](auto& c) -> auto& { return c.problem.nonlinear; })}}},
        {"grid",
         {{"ndim", int_field([](auto& c) -> auto& { return c.grid.ndim; })},
          {"r_max", num_field([](auto& c) -> auto& { return c.grid.r_max; })},
          {"n_r", int_field([](auto& c) -> auto& { return c.grid.n_r; })},
          {"bc",
           Field{[](RunConfig& c, const std::string& k, const std::string& v) {
                     try {
                         c.grid.bc = boundary_from_string(v);
                     } catch (const std::exception&) {
                         throw ConfigError(k + ": expected neumann or dirichlet, got '" + v + "'");
                     }
                 },
                 [](const RunConfig& c) { return to_string(c.grid.bc); }}}}},
        {"time",
         {{"dt0", num_field([](auto& c) -> auto& { return c.control.dt0; })},
          {"horizon", num_field([](auto& c) -> auto& { return c.control.horizon; })},
          {"adaptive", bool_field([](auto& c) -> auto& { return c.control.adaptive; })},
          {"max_growth", num_field([](auto& c) -> auto& { return c.control.max_growth; })},
          {"growth_floor", num_field([](auto& c) -> auto& { return c.control.growth_floor; })},
          {"dt_min", num_field([](auto& c) -> auto& { return c.control.dt_min; })},
          {"grow_factor", num_field([](auto& c) -> auto& { return c.control.grow_factor; })},
          {"grow_below", num_field([](auto& c) -> auto& { return c.control.grow_below; })},
          {"dt_max", num_field([](auto& c) -> auto& { return c.control.dt_max; })},
          {"record_every", int_field([](auto& c) -> auto& { return c.control.record_every; })}}},
        {"blowup", {{"threshold", num_field([](auto& c) -> auto& { return c.control.threshold; })}}},
        {"output",
         {{"trajectory", str_field([](auto& c) -> auto& { return c.output.trajectory; })},
          {"report", str_field([](auto& c) -> auto& { return c.output.report; })},
          {"map", str_field([](auto& c) -> auto& { return c.output.map; })},
          {"residual", str_field([](auto& c) -> auto& { return c.output.residual; })},
          {"scaling", str_field([](auto& c) -> auto& { return c.output.scaling; })}}},
        {"sweep",
         {{"p", list_field([](auto& c) -> auto& { return c.sweep.p; })},
          {"gamma", list_field([](auto& c) -> auto& { return c.sweep.gamma; })},
          {"k", list_field([](auto& c) -> auto& { return c.sweep.k; })},
          {"omega_amp", list_field([](auto& c) -> auto& { return c.sweep.omega_amp; })},
          {"omega_width", num_field([](auto& c) -> auto& { return c.sweep.omega_width; })},
          {"near_critical_band",
           num_field([](auto& c) -> auto& { return c.sweep.near_critical_band; })}}},
        {"testfn",
         {{"horizon", num_field([](auto& c) -> auto& { return c.testfn.horizon; })},
          {"radius", num_field([](auto& c) -> auto& { return c.testfn.radius; })}}},
    };
    return s;
}

const Field* find_field(const std::string& section, const std::string& key) {
    for (const auto& [name, table] : schema()) {
        if (name != section) {
            continue;
        }
        for (const auto& [k, f] : table) {
            if (k == key) {
                return &f;
            }
        }
    }
    return nullptr;
}

bool known_section(const std::string& section) {
    for (const auto& [name, table] : schema()) {
        if (name == section) {
            return true;
        }
    }
    return false;
}

template <typename F>
void wrap(const std::string& key, F&& f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

}  // namespace

void RunConfig::validate() const {
    wrap("problem", [&] { problem.validate(); });
    wrap("grid", [&] { (void)grid.build(); });
    wrap("time", [&] { control.validate(); });
    auto positive_list = [](const std::string& key, const std::vector<double>& v, auto ok) {
        if (v.empty()) {
            throw ConfigError(key + ": list must not be empty");
        }
        for (double x : v) {
            if (!ok(x)) {
                throw ConfigError(key + ": value " + format_double(x) + " out of range");
            }
        }
    };
    positive_list("sweep.p", sweep.p, [](double x) { return x > 1.0; });
    positive_list("sweep.gamma", sweep.gamma, [](double x) { return x >= 0.0 && x < 1.0; });
    positive_list("sweep.k", sweep.k, [](double x) { return x >= 0.0; });
    positive_list("sweep.omega_amp", sweep.omega_amp, [](double x) { return std::isfinite(x); });
    if (!(sweep.omega_width > 0.0)) {
        throw ConfigError("sweep.omega_width: must be positive");
    }
    if (!(sweep.near_critical_band >= 0.0)) {
        throw ConfigError("sweep.near_critical_band: must be nonnegative");
    }
    if (!(testfn.horizon > 0.0)) {
        throw ConfigError("testfn.horizon: must be positive");
    }
    if (!(testfn.radius > 0.0)) {
        throw ConfigError("testfn.radius: must be positive");
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            }
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_section(section)) {
                throw ConfigError("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                              "' appears before any section");
        }
        const std::string path = section + "." + key;
        const Field* f = find_field(section, key);
        if (!f) {
            throw ConfigError("unknown key '" + path + "'");
        }
        f->read(cfg, path, value);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
    std::string out;
    for (const auto& [name, table] : schema()) {
        out += "[" + name + "]\n";
        for (const auto& [key, f] : table) {
            out += key + " = " + f.write(cfg) + "\n";
        }
    }
    return out;
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : serialize(cfg)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string header_block(const RunConfig& cfg, std::string_view prefix) {
    std::string out(prefix);
    out += "config_hash = " + config_hash(cfg) + "\n";
    std::istringstream in(serialize(cfg));
    std::string line;
    while (std::getline(in, line)) {
        out += std::string(prefix) + line + "\n";
    }
    return out;
}

std::string resolve_config_path(const std::string& flag_value) {
    if (!flag_value.empty()) {
        return flag_value;
    }
    if (const char* env = std::getenv("PSEUDOPARA_CONFIG"); env && *env) {
        return env;
    }
    throw ConfigError("no config file given (use -c FILE or set PSEUDOPARA_CONFIG)");
}

}  // namespace pseudopara
