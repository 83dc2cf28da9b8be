#include <jcqt/config.hpp>

#include <fstream>
#include <functional>

namespace jcqt {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

int parse_int(const std::string& s) {
    const double v = parse_real(s);
    if (v != static_cast<double>(static_cast<int>(v)))
        throw ValidationError("expected an integer, got '" + s + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ValidationError("expected a boolean, got '" + s + "'");
}

}  // namespace

ConfigMap parse_config(std::istream& is) {
    ConfigMap out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty())
            throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

ConfigMap load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config " + path.string());
    return parse_config(is);
}

void apply_config(const ConfigMap& config, SweepSpec& spec) {
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters{
        {"protocol", [&](const std::string& v) { spec.protocol = parse_protocol(v); }},
        {"quantity", [&](const std::string& v) { spec.quantity = parse_quantity(v); }},
        {"construction", [&](const std::string& v) { spec.construction = parse_construction(v); }},
        {"mode", [&](const std::string& v) { spec.mode = parse_mode(v); }},
        {"engine", [&](const std::string& v) { spec.qfi.engine = parse_engine(v); }},
        {"derivative", [&](const std::string& v) { spec.qfi.derivative = parse_derivative(v); }},
        {"params.n", [&](const std::string& v) { spec.n = parse_int(v); }},
        {"params.nbar", [&](const std::string& v) { spec.nbar = parse_real_list(v); }},
        {"params.delta", [&](const std::string& v) { spec.delta = parse_real_list(v); }},
        {"tau.start", [&](const std::string& v) { spec.tau.start = parse_real(v); }},
        {"tau.stop", [&](const std::string& v) { spec.tau.stop = parse_real(v); }},
        {"tau.count", [&](const std::string& v) { spec.tau.count = parse_int(v); }},
        {"input.theta", [&](const std::string& v) { spec.input.theta = parse_angle(v); }},
        {"input.phi", [&](const std::string& v) { spec.input.phi = parse_angle(v); }},
        {"fd.h", [&](const std::string& v) { spec.qfi.fd.h = parse_real(v); }},
        {"fd.richardson", [&](const std::string& v) { spec.qfi.fd.richardson = parse_bool(v); }},
    };
    for (const auto& [key, value] : config) {
        if (key.rfind("output.", 0) == 0) continue;
        const auto it = setters.find(key);
        if (it == setters.end()) throw ValidationError("config: unknown key '" + key + "'");
        try {
            it->second(value);
        } catch (const ValidationError& e) {
            throw ValidationError("config key '" + key + "': " + e.what());
        }
    }
}

}  // namespace jcqt
