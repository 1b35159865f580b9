#ifndef FJPOL_ERRORS_HPP
#define FJPOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fjpol {

// Exit-code mapping used by the CLI: validation/parse -> 2,
// numerical/convergence -> 3, I/O -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct ParseError : ValidationError {
    ParseError(const std::string& what, long line)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_number(line) {}
    long line_number;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, double residual = 0.0)
        : Error(what), residual(residual) {}
    double residual;
};

struct NumericalError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace fjpol

#endif // FJPOL_ERRORS_HPP
