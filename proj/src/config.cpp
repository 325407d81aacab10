#include "grimglue/config.hpp"

#include <fstream>
#include <stdexcept>

namespace grimglue {

json RunConfig::to_json() const {
    json j;
    j["epsilon"] = format_double(epsilon);
    j["R"] = format_double(R);
    j["R0"] = format_double(R0);
    j["c"] = format_double(c);
    j["Delta"] = format_double(Delta);
    j["eta"] = format_double(eta);
    j["Cbound"] = format_double(Cbound);
    j["delta"] = format_double(delta);
    j["gamma"] = format_double(gamma);
    j["alpha"] = format_double(alpha);
    j["tol"] = format_double(tol);
    j["n_samples"] = n_samples;
    j["n_nodes"] = n_nodes;
    j["m_max"] = m_max;
    j["symmetry_order"] = symmetry_order;
    j["laurent_n"] = laurent_n;
    j["bivariate_k"] = bivariate_k;
    j["order"] = order;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    return j;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    auto as_double = [&] { return std::stod(value); };
    auto as_int = [&] { return std::stoi(value); };
    if (key == "epsilon") {
        config.epsilon = as_double();
    } else if (key == "R") {
        config.R = as_double();
    } else if (key == "R0") {
        config.R0 = as_double();
    } else if (key == "c") {
        config.c = as_double();
    } else if (key == "Delta") {
        config.Delta = as_double();
    } else if (key == "eta") {
        config.eta = as_double();
    } else if (key == "Cbound") {
        config.Cbound = as_double();
    } else if (key == "delta") {
        config.delta = as_double();
    } else if (key == "gamma") {
        config.gamma = as_double();
    } else if (key == "alpha") {
        config.alpha = as_double();
    } else if (key == "tol") {
        config.tol = as_double();
    } else if (key == "n_samples") {
        config.n_samples = as_int();
    } else if (key == "n_nodes") {
        config.n_nodes = as_int();
    } else if (key == "m_max") {
        config.m_max = as_int();
    } else if (key == "symmetry_order") {
        config.symmetry_order = as_int();
    } else if (key == "laurent_n") {
        config.laurent_n = as_int();
    } else if (key == "bivariate_k") {
        config.bivariate_k = as_int();
    } else if (key == "order") {
        config.order = as_int();
    } else if (key == "seed") {
        config.seed = std::stoull(value);
    } else if (key == "out_dir") {
        config.out_dir = value;
    } else {
        throw std::invalid_argument("unknown config key: " + key);
    }
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string trimmed = line.substr(first, last - first + 1);
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_config_entry(base, strip(trimmed.substr(0, eq)), strip(trimmed.substr(eq + 1)));
    }
    return base;
}

}  // namespace grimglue
