#ifndef RYDPOL_COMMON_HPP
#define RYDPOL_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace rydpol {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Bad input / configuration. CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A solver failed to converge or a run detected numerical contamination.
// CLI maps this to exit code 2.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

inline const char* version_tag() { return "rydpol 0.1.0"; }

} // namespace rydpol

#endif
