#include "run_config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "triadic/error.hpp"

namespace triadic::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw Error(ErrorKind::ConfigError, "invalid value '" + std::string(value) + "' for " + std::string(key));
}

double to_double(std::string_view key, std::string_view value) {
    value = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
        bad_value(key, value);
    }
    return out;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view value) {
    value = trim(value);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
        bad_value(key, value);
    }
    return out;
}

bool to_bool(std::string_view key, std::string_view value) {
    value = trim(value);
    if (value == "true" || value == "1" || value == "yes" || value.empty()) return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(key, value);
}

std::vector<double> to_list(std::string_view key, std::string_view value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view item = value.substr(start, comma == std::string_view::npos ? value.npos : comma - start);
        out.push_back(to_double(key, item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Test: return "test";
        case Command::Simulate: return "simulate";
        case Command::ClosureCheck: return "closure-check";
        case Command::Counterexample: return "counterexample";
        case Command::Graph: return "graph";
    }
    return "?";
}

Command parse_command(std::string_view text) {
    if (text == "test") return Command::Test;
    if (text == "simulate") return Command::Simulate;
    if (text == "closure-check") return Command::ClosureCheck;
    if (text == "counterexample") return Command::Counterexample;
    if (text == "graph") return Command::Graph;
    throw Error(ErrorKind::ConfigError, "unknown command '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
    if (text == "table") return OutputFormat::Table;
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    throw Error(ErrorKind::ConfigError, "unknown format '" + std::string(text) + "'");
}

void RunConfig::validate() const {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::ConfigError, "alpha must lie in (0, 1)");
    require(!replicates || *replicates >= 1, ErrorKind::ConfigError, "replicates must be >= 1");
    require(!trials || *trials >= 1, ErrorKind::ConfigError, "trials must be >= 1");
    require(workers >= 1, ErrorKind::ConfigError, "workers must be >= 1");
    require(n >= 1.0, ErrorKind::ConfigError, "n must be >= 1");
    require(grid_step > 0.0, ErrorKind::ConfigError, "grid-step must be positive");
    require(model == "gaussian" || model == "nested", ErrorKind::ConfigError, "model must be gaussian or nested");
}

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view raw_value) {
    const std::string_view key = trim(raw_key);
    const std::string_view value = trim(raw_value);
    if (key == "alpha") c.alpha = to_double(key, value);
    else if (key == "calibration") c.calibration = parse_calibration(value);
    else if (key == "input") c.input_path = std::string(value);
    else if (key == "format") c.output_format = parse_format(value);
    else if (key == "seed") c.seed = to_unsigned(key, value);
    else if (key == "replicates") c.replicates = to_unsigned(key, value);
    else if (key == "workers") c.workers = to_unsigned(key, value);
    else if (key == "allow-noncomplementary") c.allow_noncomplementary = to_bool(key, value);
    else if (key == "model") c.model = std::string(value);
    else if (key == "procedure") c.procedure = parse_procedure(value);
    else if (key == "m") c.m = to_unsigned(key, value);
    else if (key == "theta") c.theta = to_list(key, value);
    else if (key == "boundary") c.boundary = to_list(key, value);
    else if (key == "n") c.n = to_double(key, value);
    else if (key == "loss-b") {
        const double b = to_double(key, value);
        require(b >= 0.0 && b <= 1.0, ErrorKind::ConfigError, "loss-b must lie in [0, 1]");
        c.loss = LossSpec::identity(b);
    } else if (key == "loss") {
        const std::vector<double> v = to_list(key, value);
        require(v.size() == 4, ErrorKind::ConfigError, "loss takes four values a,b,c,l");
        c.loss = LossSpec{v[0], v[1], v[2], v[3]};
    } else if (key == "trials") c.trials = to_unsigned(key, value);
    else if (key == "nested") c.nested = to_bool(key, value);
    else if (key == "theta1") c.theta1 = to_double(key, value);
    else if (key == "theta2") c.theta2 = to_double(key, value);
    else if (key == "grid-min") c.grid_min = to_double(key, value);
    else if (key == "grid-max") c.grid_max = to_double(key, value);
    else if (key == "grid-step") c.grid_step = to_double(key, value);
    else if (key == "rho0") c.rho0 = to_double(key, value);
    else throw Error(ErrorKind::ConfigError, "unknown setting '" + std::string(key) + "'");
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != view.npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        require(eq != view.npos, ErrorKind::ConfigError,
                "config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(view.substr(0, eq)));
        require(!key.empty(), ErrorKind::ConfigError, "config line " + std::to_string(line_no) + ": empty key");
        out[key] = std::string(trim(view.substr(eq + 1)));
    }
    return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::ConfigError, "cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::uint64_t effective_seed(const RunConfig& config) {
    if (config.seed) {
        return *config.seed;
    }
    if (const char* env = std::getenv(std::string(kSeedEnvVar).c_str()); env != nullptr && *env != '\0') {
        return to_unsigned(kSeedEnvVar, env);
    }
    return 0;
}

} // namespace triadic::cli
