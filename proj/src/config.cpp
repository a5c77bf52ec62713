#include "anisotrap/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace anisotrap {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                          value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-integer value '" +
                          value + "'");
    }
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value,
                          Parse parse)
{
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(parse(key, item));
    }
    return out;
}

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text)
{
    ConfigMap map;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("config: empty key on line " +
                              std::to_string(lineno));
        map[key] = trim(line.substr(eq + 1));
    }
    return map;
}

ConfigMap load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ConfigMap& map, const std::string& keyval)
{
    const auto eq = keyval.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + keyval + "' is not key=value");
    map[trim(keyval.substr(0, eq))] = trim(keyval.substr(eq + 1));
}

RunConfig resolve_config(const ConfigMap& map)
{
    static const char* known[] = {
        "nu_a",    "nu_b",   "dnu_over_lambda", "theta",   "alpha",
        "lambda",  "k",      "mass",            "rabi_Omega",
        "N",       "n_max",  "method",          "samples", "steps",
        "N_list",  "sweep_dnu_over_lambda",     "sweep_N", "sweep_theta",
        "format",  "precision"};
    for (const auto& [key, value] : map)
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) ==
            std::end(known))
            throw ConfigError("config: unknown key '" + key + "'");

    const auto has = [&](const char* k) { return map.count(k) > 0; };
    const auto get = [&](const char* k) { return map.at(k); };

    if (has("theta") == has("alpha"))
        throw ConfigError("config: exactly one of {theta, alpha} is required");
    if (has("nu_b") == has("dnu_over_lambda"))
        throw ConfigError(
            "config: exactly one of {nu_b, dnu_over_lambda} is required");
    if (!has("nu_a"))
        throw ConfigError("config: nu_a is required");

    RunConfig cfg;
    const double nu_a = parse_double("nu_a", get("nu_a"));

    if (has("theta")) {
        const double theta = parse_double("theta", get("theta"));
        const double lambda =
            has("lambda") ? parse_double("lambda", get("lambda")) : 1.0;
        const double nu_b = has("nu_b")
            ? parse_double("nu_b", get("nu_b"))
            : nu_a - parse_double("dnu_over_lambda", get("dnu_over_lambda")) *
                         lambda;
        cfg.geometry = effective_geometry(theta, lambda, nu_a, nu_b);
    } else {
        if (has("lambda"))
            throw ConfigError(
                "config: lambda is derived on the alpha path; do not set it");
        if (!has("nu_b"))
            throw ConfigError(
                "config: the alpha path needs an explicit nu_b (the "
                "dnu_over_lambda shortcut is circular: lambda depends on nu_b)");
        for (const char* k : {"k", "mass", "rabi_Omega"})
            if (!has(k))
                throw ConfigError(std::string("config: the alpha path needs '") +
                                  k + "'");
        cfg.geometry = coupling_geometry(
            nu_a, parse_double("nu_b", get("nu_b")),
            parse_double("alpha", get("alpha")), parse_double("k", get("k")),
            parse_double("rabi_Omega", get("rabi_Omega")),
            parse_double("mass", get("mass")));
    }

    if (has("N"))
        cfg.N = parse_int("N", get("N"));
    if (cfg.N < 2)
        throw ConfigError("config: N must be >= 2");
    cfg.n_max = has("n_max") ? parse_int("n_max", get("n_max")) : cfg.N + 1;
    if (cfg.n_max < cfg.N + 1)
        throw ConfigError("config: n_max must be >= N + 1");

    if (has("method")) {
        const std::string m = get("method");
        if (m == "closed")
            cfg.method = Method::closed;
        else if (m == "stepped")
            cfg.method = Method::stepped;
        else if (m == "adiabatic")
            cfg.method = Method::adiabatic;
        else
            throw ConfigError("config: method must be closed|stepped|adiabatic");
    }

    if (has("samples"))
        cfg.samples = parse_int("samples", get("samples"));
    if (cfg.samples < 3)
        throw ConfigError("config: samples must be >= 3");
    if (has("steps"))
        cfg.steps = parse_int("steps", get("steps"));
    if (cfg.steps < 0)
        throw ConfigError("config: steps must be >= 0 (0 = adaptive)");

    if (has("N_list"))
        cfg.N_list = parse_list<int>("N_list", get("N_list"), parse_int);
    else
        for (int n = 2; n <= cfg.n_max; ++n)
            cfg.N_list.push_back(n);
    for (int n : cfg.N_list)
        if (n < 2 || n > cfg.n_max)
            throw ConfigError("config: N_list entries must lie in [2, n_max]");

    if (has("sweep_dnu_over_lambda"))
        cfg.sweep_dnu_over_lambda = parse_list<double>(
            "sweep_dnu_over_lambda", get("sweep_dnu_over_lambda"), parse_double);
    else
        cfg.sweep_dnu_over_lambda = {cfg.geometry.dnu / cfg.geometry.lambda};
    if (has("sweep_N"))
        cfg.sweep_N = parse_list<int>("sweep_N", get("sweep_N"), parse_int);
    else
        cfg.sweep_N = {cfg.N};
    if (has("sweep_theta"))
        cfg.sweep_theta =
            parse_list<double>("sweep_theta", get("sweep_theta"), parse_double);
    else
        cfg.sweep_theta = {cfg.geometry.theta};
    if (!has("theta") &&
        (has("sweep_dnu_over_lambda") || has("sweep_theta")))
        throw ConfigError("config: sweeps over theta or dnu/lambda need the "
                          "theta + lambda geometry path");
    for (int n : cfg.sweep_N)
        if (n < 2)
            throw ConfigError("config: sweep_N entries must be >= 2");

    if (has("format")) {
        cfg.format = get("format");
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("config: format must be csv|json");
    }
    if (has("precision")) {
        cfg.precision = parse_int("precision", get("precision"));
        if (cfg.precision != 17)
            throw ConfigError(
                "config: only precision = 17 keeps the determinism contract");
    }

    // resolved echo, fixed order, canonical float formatting
    auto& r = cfg.resolved;
    if (has("theta")) {
        r.emplace_back("theta", format_value(cfg.geometry.theta));
        r.emplace_back("lambda", format_value(cfg.geometry.lambda));
    } else {
        r.emplace_back("alpha", format_value(cfg.geometry.alpha));
        r.emplace_back("k", format_value(cfg.geometry.k));
        r.emplace_back("mass", format_value(cfg.geometry.mass));
        r.emplace_back("rabi_Omega", format_value(cfg.geometry.rabi_Omega));
    }
    r.emplace_back("nu_a", format_value(cfg.geometry.nu_a));
    r.emplace_back("nu_b", format_value(cfg.geometry.nu_b));
    r.emplace_back("N", std::to_string(cfg.N));
    r.emplace_back("n_max", std::to_string(cfg.n_max));
    r.emplace_back("method", cfg.method == Method::closed    ? "closed"
                             : cfg.method == Method::stepped ? "stepped"
                                                             : "adiabatic");
    r.emplace_back("samples", std::to_string(cfg.samples));
    r.emplace_back("steps", std::to_string(cfg.steps));
    if (has("N_list")) {
        std::string joined;
        for (std::size_t i = 0; i < cfg.N_list.size(); ++i)
            joined += (i ? "," : "") + std::to_string(cfg.N_list[i]);
        r.emplace_back("N_list", joined);
    }
    if (has("sweep_dnu_over_lambda")) {
        std::string joined;
        for (std::size_t i = 0; i < cfg.sweep_dnu_over_lambda.size(); ++i)
            joined += (i ? "," : "") + format_value(cfg.sweep_dnu_over_lambda[i]);
        r.emplace_back("sweep_dnu_over_lambda", joined);
    }
    if (has("sweep_N")) {
        std::string joined;
        for (std::size_t i = 0; i < cfg.sweep_N.size(); ++i)
            joined += (i ? "," : "") + std::to_string(cfg.sweep_N[i]);
        r.emplace_back("sweep_N", joined);
    }
    if (has("sweep_theta")) {
        std::string joined;
        for (std::size_t i = 0; i < cfg.sweep_theta.size(); ++i)
            joined += (i ? "," : "") + format_value(cfg.sweep_theta[i]);
        r.emplace_back("sweep_theta", joined);
    }
    r.emplace_back("format", cfg.format);
    r.emplace_back("precision", std::to_string(cfg.precision));
    return cfg;
}

}  // namespace anisotrap
