// config.hpp — flat key = value run configuration for the CLI: parsing,
// override merging, and resolution into a CouplingGeometry plus protocol
// parameters. Two geometry paths exist and must not be mixed:
//   theta + lambda (+ nu_b or the dnu_over_lambda shortcut) -> effective_geometry
//   alpha + k + mass + rabi_Omega + explicit nu_b           -> coupling_geometry
// The shortcut is rejected on the alpha path because lambda itself depends
// on nu_b there, making dnu = (dnu/lambda)*lambda circular.

#pragma once

#include "anisotrap/propagator.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace anisotrap {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ConfigMap = std::map<std::string, std::string>;

// "key = value" per line, '#' starts a comment, blank lines ignored.
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

// "key=value" from --override; later overrides win.
void apply_override(ConfigMap& map, const std::string& keyval);

struct RunConfig {
    CouplingGeometry geometry;
    int N = 4;
    int n_max = 5;
    Method method = Method::adiabatic;
    int samples = 2048;         // Wilson-loop samples
    int steps = 0;              // stepped integrator; 0 = adaptive
    std::vector<int> N_list;    // spectrum/berry tables
    std::vector<double> sweep_dnu_over_lambda;
    std::vector<int> sweep_N;
    std::vector<double> sweep_theta;
    std::string format = "csv";
    int precision = 17;
    // resolved key = value echo embedded in every output (round-trip)
    std::vector<std::pair<std::string, std::string>> resolved;
};

RunConfig resolve_config(const ConfigMap& map);

}  // namespace anisotrap
