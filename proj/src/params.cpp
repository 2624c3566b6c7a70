#include "thermal_link/params.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace thermal_link {

std::uint64_t SystemParams::hash() const {
    Fnv1a h;
    h.feed(omega_a);
    h.feed(delta);
    h.feed(g1);
    h.feed(g2);
    h.feed(nu);
    h.feed(gamma1);
    h.feed(gamma2);
    h.feed(gamma3);
    h.feed(T1);
    h.feed(T2);
    h.feed(T3);
    h.feed(static_cast<std::uint64_t>(delta_convention));
    return h.state;
}

ValidationReport validate(const SystemParams& p) {
    ValidationReport report;
    auto flag = [&report](const std::string& msg) { report.problems.push_back(msg); };

    if (!(p.omega_a > 0.0)) flag("omega_a must be positive");
    if (p.g1 < 0.0) flag("negative coupling g1");
    if (p.g2 < 0.0) flag("negative coupling g2");
    if (p.nu < 0.0) flag("negative coupling nu");
    if (p.gamma1 < 0.0) flag("negative damping rate gamma1");
    if (p.gamma2 < 0.0) flag("negative damping rate gamma2");
    if (p.gamma3 < 0.0) flag("negative damping rate gamma3");
    if (p.T1 < 0.0) flag("negative temperature T1");
    if (p.T2 < 0.0) flag("negative temperature T2");
    if (p.T3 < 0.0) flag("negative temperature T3");
    if (p.omega_a > 0.0 && !(p.omega_0() > 0.0)) flag("cavity frequency not positive");
    for (double v : {p.omega_a, p.delta, p.g1, p.g2, p.nu, p.gamma1, p.gamma2,
                     p.gamma3, p.T1, p.T2, p.T3}) {
        if (!std::isfinite(v)) {
            flag("non-finite parameter value");
            break;
        }
    }
    return report;
}

double temperature_for_occupation(double nbar, double omega) {
    if (!(nbar > 0.0)) throw std::invalid_argument("occupation must be positive");
    if (!(omega > 0.0)) throw std::invalid_argument("positive Bohr frequency required");
    return omega / std::log1p(1.0 / nbar);
}

namespace {

double parse_double(const std::string& text, const std::string& origin, int line_no) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        std::ostringstream msg;
        msg << origin << ":" << line_no << ": cannot parse value '" << text << "'";
        throw validation_error(msg.str());
    }
    return value;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ParamsFile parse_params_text(std::istream& in, const std::string& origin) {
    ParamsFile out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << origin << ":" << line_no << ": expected key=value, got '" << line << "'";
            throw validation_error(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const double value = parse_double(trim(line.substr(eq + 1)), origin, line_no);

        auto& p = out.params;
        if (key == "omega_a")           p.omega_a = value;
        else if (key == "delta")        p.delta = value;
        else if (key == "g1")           p.g1 = value;
        else if (key == "g2")           p.g2 = value;
        else if (key == "nu")           p.nu = value;
        else if (key == "gamma1")       p.gamma1 = value;
        else if (key == "gamma2")       p.gamma2 = value;
        else if (key == "gamma3")       p.gamma3 = value;
        else if (key == "T1")           p.T1 = value;
        else if (key == "T2")           p.T2 = value;
        else if (key == "T3")           p.T3 = value;
        else if (key == "nbar_target")  out.nbar_target = value;
        else {
            std::ostringstream msg;
            msg << origin << ":" << line_no << ": unknown key '" << key << "'";
            throw validation_error(msg.str());
        }
    }
    return out;
}

ParamsFile parse_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open parameter file '" + path + "'");
    return parse_params_text(in, path);
}

}  // namespace thermal_link
