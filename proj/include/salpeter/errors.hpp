#pragma once

#include <stdexcept>
#include <string>

namespace salpeter {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// argument outside the mathematical domain of an operation
struct DomainError : Error {
    using Error::Error;
};

// operation called for the wrong physical regime (e.g. massive routine with m = 0)
struct RegimeError : Error {
    using Error::Error;
};

// evaluation exactly at a delta center
struct SingularityError : Error {
    using Error::Error;
};

struct NumericalFailure : Error {
    NumericalFailure(const std::string& what, double lo = 0.0, double hi = 0.0)
        : Error(what), lo(lo), hi(hi) {}
    double lo;
    double hi;
};

struct ValidationError : Error {
    ValidationError(std::string field_path, const std::string& what)
        : Error(field_path + ": " + what), field(std::move(field_path)) {}
    std::string field;
};

// Landau-type pole of the closed-form coupling flow
struct PoleError : Error {
    PoleError(const std::string& what, double critical_alpha)
        : Error(what), critical_alpha(critical_alpha) {}
    double critical_alpha;
};

}  // namespace salpeter
