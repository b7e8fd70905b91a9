#include "intfield/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace intfield {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(what + ": expected a number, got '" + text + "'");
    return v;
}

long parse_int(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(what + ": expected an integer, got '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Config Config::parse_string(const std::string& text) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config: " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    Config c;
    for (const auto& [name, node] : tree) {
        if (node.empty() && !node.data().empty())
            throw ConfigError("config: key '" + name + "' appears outside any [section]");
        c.sections_[name];
        for (const auto& [key, value] : node) {
            if (!value.empty()) throw ConfigError("config: nested key under '" + name + "." + key + "'");
            c.sections_[name][key] = trim(value.data());
        }
    }
    return c;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key);
}

const std::string& Config::get(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key)) throw ConfigError("config: missing [" + section + "] " + key);
    return s->second.at(key);
}

double Config::get_double(const std::string& section, const std::string& key) const {
    return parse_double(get(section, key), "[" + section + "] " + key);
}

long Config::get_int(const std::string& section, const std::string& key) const {
    return parse_int(get(section, key), "[" + section + "] " + key);
}

bool Config::get_bool(const std::string& section, const std::string& key) const {
    const std::string& v = get(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("[" + section + "] " + key + ": expected true or false, got '" + v + "'");
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    return parse_list(get(section, key), "[" + section + "] " + key);
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

Config Config::resolved_against(const Config& schema) const {
    for (const auto& [name, keys] : sections_) {
        const auto s = schema.sections_.find(name);
        if (s == schema.sections_.end()) throw ConfigError("config: unknown section [" + name + "]");
        for (const auto& [key, value] : keys)
            if (!s->second.count(key)) throw ConfigError("config: unknown key '" + key + "' in [" + name + "]");
    }
    Config out = schema;
    for (const auto& [name, keys] : sections_)
        for (const auto& [key, value] : keys) out.sections_[name][key] = value;
    return out;
}

std::string Config::to_ini() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, keys] : sections_) {
        if (!first) os << "\n";
        first = false;
        os << "[" << name << "]\n";
        for (const auto& [key, value] : keys) os << key << " = " << value << "\n";
    }
    return os.str();
}

}  // namespace intfield
