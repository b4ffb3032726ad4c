#include "salpeter/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "salpeter/errors.hpp"

namespace salpeter {

double ModelConfig::scale() const {
    if (mass > 0.0) return mass;
    return bindings.empty() ? 1.0 : std::abs(bindings.front());
}

void ModelConfig::validate() const {
    if (!std::isfinite(mass) || mass < 0.0) throw ValidationError("mass", "must be finite and >= 0");
    if (centers.empty()) throw ValidationError("centers", "at least one center is required");
    if (bindings.size() != centers.size())
        throw ValidationError("bindings", "must have one entry per center");
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const std::string path = "centers[" + std::to_string(i) + "]";
        if (!std::isfinite(centers[i])) throw ValidationError(path, "must be finite");
        for (std::size_t j = 0; j < i; ++j)
            if (centers[j] == centers[i])
                throw ValidationError(path, "duplicate of centers[" + std::to_string(j) + "]");
    }
    for (std::size_t i = 0; i < bindings.size(); ++i) {
        const std::string path = "bindings[" + std::to_string(i) + "]";
        const double eb = bindings[i];
        if (!std::isfinite(eb)) throw ValidationError(path, "must be finite");
        if (mass > 0.0 && !(eb < mass)) throw ValidationError(path, "binding energy must be below the mass");
        if (mass == 0.0 && !(eb < 0.0))
            throw ValidationError(path, "massless binding energy must be negative");
    }
}

double ModelConfig::min_separation() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) d = std::min(d, std::abs(centers[i] - centers[j]));
    return d;
}

double ModelConfig::min_binding() const {
    return *std::min_element(bindings.begin(), bindings.end());
}

BoundClass classify(double energy, double mass) {
    if (energy > 0.0) return BoundClass::weak;
    if (energy > -mass) return BoundClass::strong;
    return BoundClass::ultrastrong;
}

const char* to_string(BoundClass c) {
    switch (c) {
        case BoundClass::weak: return "weak";
        case BoundClass::strong: return "strong";
        case BoundClass::ultrastrong: return "ultrastrong";
    }
    return "?";
}

}  // namespace salpeter
