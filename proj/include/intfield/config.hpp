#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace intfield {

/// Malformed or unknown configuration input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flat INI document: [section] headers followed by key = value lines; '#' and ';' start comments.
class Config {
public:
    using Section = std::map<std::string, std::string>;

    static Config parse_string(const std::string& text);
    static Config parse_file(const std::string& path);

    [[nodiscard]] bool has(const std::string& section, const std::string& key) const;
    [[nodiscard]] const std::string& get(const std::string& section, const std::string& key) const;
    [[nodiscard]] double get_double(const std::string& section, const std::string& key) const;
    [[nodiscard]] long get_int(const std::string& section, const std::string& key) const;
    [[nodiscard]] bool get_bool(const std::string& section, const std::string& key) const;
    /// Comma-separated doubles; an empty value gives an empty list.
    [[nodiscard]] std::vector<double> get_list(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);
    [[nodiscard]] const std::map<std::string, Section>& sections() const { return sections_; }

    /// Every key must appear in `schema`; missing keys take the schema value.
    /// Throws ConfigError naming the first unknown section or key.
    [[nodiscard]] Config resolved_against(const Config& schema) const;

    /// Canonical text: sections and keys in sorted order, one `key = value` per line.
    [[nodiscard]] std::string to_ini() const;

private:
    std::map<std::string, Section> sections_;
};

double parse_double(const std::string& text, const std::string& what);
long parse_int(const std::string& text, const std::string& what);
std::vector<double> parse_list(const std::string& text, const std::string& what);

/// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double v);

}  // namespace intfield
