#pragma once

#include <stdexcept>
#include <string>

namespace covergrowth {

// Input text could not be parsed. Positions are 1-based; column 0 means
// the error concerns the whole line.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line, int column)
        : std::runtime_error("line " + std::to_string(line) +
                             (column > 0 ? ", column " + std::to_string(column) : "") +
                             ": " + msg),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A polynomial operation would exceed the configured degree cap.
class degree_cap_error : public std::runtime_error {
public:
    explicit degree_cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// d1 * d2 != 0, so the pair of matrices is not a chain complex.
class chain_complex_error : public std::logic_error {
public:
    explicit chain_complex_error(const std::string& msg) : std::logic_error(msg) {}
};

// The closed-form Betti number disagrees with the rewriting-based one.
// Carries a preformatted diagnostic dump (matrices, cover presentation).
class oracle_mismatch_error : public std::runtime_error {
public:
    oracle_mismatch_error(std::string msg, std::string details)
        : std::runtime_error(std::move(msg)), details_(std::move(details)) {}

    const std::string& details() const { return details_; }

private:
    std::string details_;
};

} // namespace covergrowth
