#pragma once

#include <vector>

namespace salpeter {

// Physical configuration: mass m >= 0, N distinct center positions and their
// single-center binding energies E_B (E_B < m, or E_B < 0 when m = 0).
// Positions are in inverse-energy units, energies in energy units.
struct ModelConfig {
    double mass = 1.0;
    std::vector<double> centers;
    std::vector<double> bindings;

    std::size_t size() const { return centers.size(); }
    bool massless() const { return mass == 0.0; }

    // Energy scale used to nondimensionalize: m, or |E_B^1| when m = 0.
    double scale() const;

    // Throws ValidationError naming the offending field.
    void validate() const;

    double min_separation() const;
    double min_binding() const;
};

enum class BoundClass { weak, strong, ultrastrong };

BoundClass classify(double energy, double mass);
const char* to_string(BoundClass c);

}  // namespace salpeter
