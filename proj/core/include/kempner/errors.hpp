#ifndef KEMPNER_ERRORS_HPP
#define KEMPNER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kempner {

// Bad arguments: digit sets out of range, s at or below the abscissa of
// convergence, malformed CLI flags.  CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// A certified evaluation cannot reach the requested tolerance within its
// enumeration budget.  Carries the best tail bound that was achievable so
// the caller can retry with a relaxed tolerance or switch method.
// CLI maps this to exit code 3.
class infeasible_tolerance : public std::runtime_error {
public:
    infeasible_tolerance(const std::string& what, double best_achievable)
        : std::runtime_error(what), best_achievable_(best_achievable) {}
    double best_achievable() const { return best_achievable_; }

private:
    double best_achievable_;
};

// Word-enumeration budget exhausted before any depth satisfied the
// tolerance; the direct series is desk-scale only.
class budget_exceeded : public infeasible_tolerance {
public:
    budget_exceeded(const std::string& what, double best_achievable)
        : infeasible_tolerance(what, best_achievable) {}
};

// Telescoped w=1 evaluation requested but the constants store has no entry
// for this (base, digit set).
class missing_constant : public std::runtime_error {
public:
    explicit missing_constant(const std::string& what)
        : std::runtime_error(what) {}
};

// Constants-file syntax or validation problem; carries the 1-based line.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace kempner

#endif
