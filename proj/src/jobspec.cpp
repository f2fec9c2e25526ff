#include "openbook/jobspec.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace openbook {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

JobSpec JobSpec::from_text(const std::string& text) {
    JobSpec job;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        job.raw_lines.push_back(line);
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("jobspec: expected key=value, got: " + stripped);
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("jobspec: empty key");
        job.values[key] = value;
    }
    return job;
}

JobSpec JobSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open jobspec: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

void JobSpec::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write jobspec: " + path);
    for (const auto& line : raw_lines) out << line << "\n";
}

std::string JobSpec::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

long JobSpec::get_int(const std::string& key, long fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    return std::stol(it->second);
}

double JobSpec::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    return std::stod(it->second);
}

std::vector<double> JobSpec::get_doubles(const std::string& key,
                                         const std::vector<double>& fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (!part.empty()) out.push_back(std::stod(part));
    }
    return out;
}

void JobSpec::set(const std::string& key, const std::string& value) {
    values[key] = value;
    for (auto& line : raw_lines) {
        std::string stripped = trim(line);
        if (stripped.rfind(key, 0) == 0) {
            auto eq = stripped.find('=');
            if (eq != std::string::npos && trim(stripped.substr(0, eq)) == key) {
                line = key + " = " + value;
                return;
            }
        }
    }
    raw_lines.push_back(key + " = " + value);
}

}  // namespace openbook
