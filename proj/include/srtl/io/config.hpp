#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "srtl/error.hpp"

namespace srtl::io {

// INI-like text: `[section]` headers, `key = value` lines, `#` or `;`
// comments. Keys may repeat (phantom components); scalar getters reject
// repeats. Every lookup marks the key as used so leftovers can be reported.
class Config {
public:
    struct Entry {
        std::string key, value;
        int line = 0;
    };

    static Config parse(std::istream& in, const std::string& source = "<config>") {
        Config c;
        c.source_ = source;
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find_first_of("#;");
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') c.fail(lineno, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty() || !valid_name(section)) c.fail(lineno, "bad section name");
                c.sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) c.fail(lineno, "expected `key = value`");
            if (section.empty()) c.fail(lineno, "key outside any section");
            Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
            if (e.key.empty() || !valid_name(e.key)) c.fail(lineno, "bad key name");
            if (e.value.empty()) c.fail(lineno, "empty value for `" + e.key + "`");
            c.sections_[section].push_back(e);
        }
        return c;
    }

    static Config parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file " + path);
        return parse(in, path);
    }

    bool has_section(const std::string& s) const { return sections_.count(s) != 0; }
    bool has(const std::string& s, const std::string& k) const { return find(s, k) != nullptr; }

    std::string get_string(const std::string& s, const std::string& k) const {
        const Entry* e = find(s, k);
        if (!e) throw ConfigError(source_ + ": missing key [" + s + "] " + k);
        return e->value;
    }
    std::string get_string(const std::string& s, const std::string& k, const std::string& def) const {
        return has(s, k) ? get_string(s, k) : def;
    }

    double get_double(const std::string& s, const std::string& k) const {
        return to_double(get_string(s, k), where(s, k));
    }
    double get_double(const std::string& s, const std::string& k, double def) const {
        return has(s, k) ? get_double(s, k) : def;
    }

    long get_int(const std::string& s, const std::string& k) const { return to_int(get_string(s, k), where(s, k)); }
    long get_int(const std::string& s, const std::string& k, long def) const {
        return has(s, k) ? get_int(s, k) : def;
    }

    bool get_bool(const std::string& s, const std::string& k, bool def) const {
        if (!has(s, k)) return def;
        const std::string v = lower(get_string(s, k));
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        throw ConfigError(where(s, k) + ": expected a boolean, got `" + v + "`");
    }

    std::vector<double> get_doubles(const std::string& s, const std::string& k) const {
        return split_doubles(get_string(s, k), where(s, k));
    }
    std::vector<double> get_doubles(const std::string& s, const std::string& k, const std::vector<double>& def) const {
        return has(s, k) ? get_doubles(s, k) : def;
    }

    // Every value of a repeatable key, in file order.
    std::vector<Entry> get_all(const std::string& s, const std::string& k) const {
        std::vector<Entry> out;
        auto it = sections_.find(s);
        if (it == sections_.end()) return out;
        for (const auto& e : it->second)
            if (e.key == k) out.push_back(e);
        used_.insert(s + "\n" + k);
        return out;
    }

    // Keys never looked up, as "[section] key" strings.
    std::vector<std::string> unused() const {
        std::vector<std::string> out;
        for (const auto& [s, entries] : sections_)
            for (const auto& e : entries)
                if (!used_.count(s + "\n" + e.key)) out.push_back("[" + s + "] " + e.key);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    void require_all_used() const {
        const auto u = unused();
        if (u.empty()) return;
        std::string msg = source_ + ": unknown keys:";
        for (const auto& k : u) msg += " " + k;
        throw ConfigError(msg);
    }

    const std::string& source() const { return source_; }

    static std::vector<double> split_doubles(const std::string& text, const std::string& what) {
        std::vector<double> out;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok.back() == ',') tok.pop_back();
            if (!tok.empty()) out.push_back(to_double(tok, what));
        }
        if (out.empty()) throw ConfigError(what + ": expected numbers");
        return out;
    }

    static double to_double(const std::string& v, const std::string& what) {
        double x = 0.0;
        const char* b = v.data();
        const char* e = b + v.size();
        if (b != e && *b == '+') ++b;
        const auto [p, ec] = std::from_chars(b, e, x);
        if (ec != std::errc() || p != e) throw ConfigError(what + ": expected a number, got `" + v + "`");
        return x;
    }

    static long to_int(const std::string& v, const std::string& what) {
        long x = 0;
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || p != v.data() + v.size())
            throw ConfigError(what + ": expected an integer, got `" + v + "`");
        return x;
    }

private:
    const Entry* find(const std::string& s, const std::string& k) const {
        auto it = sections_.find(s);
        if (it == sections_.end()) return nullptr;
        const Entry* hit = nullptr;
        for (const auto& e : it->second) {
            if (e.key != k) continue;
            if (hit) throw ConfigError(source_ + ":" + std::to_string(e.line) + ": duplicate key [" + s + "] " + k);
            hit = &e;
        }
        if (hit) used_.insert(s + "\n" + k);
        return hit;
    }

    std::string where(const std::string& s, const std::string& k) const { return source_ + ": [" + s + "] " + k; }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
    }

    static std::string trim(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }

    static std::string lower(std::string s) {
        for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        return s;
    }

    static bool valid_name(const std::string& s) {
        return std::all_of(s.begin(), s.end(), [](char ch) {
            return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
        });
    }

    std::string source_;
    std::map<std::string, std::vector<Entry>> sections_;
    mutable std::set<std::string> used_;
};

}  // namespace srtl::io
