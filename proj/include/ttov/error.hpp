#ifndef TTOV_ERROR_HPP
#define TTOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ttov {

// Caller misuse: bad flags, invalid parameters, inconsistent inputs.
// The CLI maps this to exit code 1.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data: parse failures, missing files,
// violated file-format invariants. The CLI maps this to exit code 2.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure tied to a specific file and line.
struct parse_error : data_error {
    parse_error(const std::string& file, std::size_t line, const std::string& msg)
        : data_error(file + ":" + std::to_string(line) + ": " + msg),
          file(file),
          line(line) {}

    std::string file;
    std::size_t line;
};

}  // namespace ttov

#endif  // TTOV_ERROR_HPP
