#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace openbook {

/// A key=value job description. '#' starts a comment; raw lines are kept so
/// a loaded file saves back losslessly.
struct JobSpec {
    std::vector<std::string> raw_lines;
    std::map<std::string, std::string> values;

    static JobSpec load(const std::string& path);
    static JobSpec from_text(const std::string& text);
    void save(const std::string& path) const;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::vector<double> get_doubles(const std::string& key,
                                    const std::vector<double>& fallback) const;
    void set(const std::string& key, const std::string& value);
};

}  // namespace openbook
