#ifndef TTOV_CONFIG_HPP
#define TTOV_CONFIG_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "ttov/corpus.hpp"
#include "ttov/error.hpp"
#include "ttov/textproc.hpp"

namespace ttov {

// Stopword override file: one token per line, '#' starts a comment. Tokens
// are lowercased so the list matches the pipeline's casing.
inline std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open stopword file: " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        detail::strip_cr(line);
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t");
        words.insert(ascii_lowercase(line.substr(begin, end - begin + 1)));
    }
    return words;
}

namespace detail {

inline bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw usage_error("config key '" + key + "' expects a boolean, got '" + value + "'");
}

inline std::vector<int> parse_order_list(const std::string& value) {
    std::vector<int> orders;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        try {
            const int n = std::stoi(item);
            if (n < 1) throw std::invalid_argument("order");
            orders.push_back(n);
        } catch (const std::exception&) {
            throw usage_error("config key 'orders' expects comma-separated integers >= 1, got '" +
                              value + "'");
        }
    }
    if (orders.empty()) throw usage_error("config key 'orders' is empty");
    return orders;
}

}  // namespace detail

// Applies a key = value config file on top of the defaults. Keys:
//   stopwords   = path to a stopword override file
//   lowercase   = true | false
//   offset_mode = byte | char
//   orders      = comma-separated n-gram orders, e.g. 1,2,3
// '#' starts a comment; unknown keys are usage errors.
inline text_config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open config file: " + path.string());
    text_config cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        detail::strip_cr(line);
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t") != std::string::npos) {
                throw parse_error(path.string(), lineno, "expected 'key = value'");
            }
            continue;
        }
        const auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            const std::size_t e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "stopwords") {
            cfg.stopwords = load_stopwords(value);
        } else if (key == "lowercase") {
            cfg.lowercase = detail::parse_bool(value, key);
        } else if (key == "offset_mode") {
            if (value == "byte") cfg.char_offsets = false;
            else if (value == "char") cfg.char_offsets = true;
            else throw usage_error("config key 'offset_mode' expects byte|char, got '" + value + "'");
        } else if (key == "orders") {
            cfg.orders = detail::parse_order_list(value);
        } else {
            throw usage_error("unknown config key '" + key + "' at " + path.string() + ":" +
                              std::to_string(lineno));
        }
    }
    return cfg;
}

}  // namespace ttov

#endif  // TTOV_CONFIG_HPP
