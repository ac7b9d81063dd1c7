#pragma once

#include <convrad/rational.hpp>

#include <stdexcept>

namespace convrad {

// Residue characteristic of the base field and the induced log unit. All
// multiplicative quantities are exact rational logarithms normalized so that
// log|p| = -1 when the residue characteristic p is a prime; then
// log omega = -1/(p-1) exactly. For residue characteristic 0 (p = 0 here)
// omega = 1 and the unit is arbitrary.
struct FieldConfig {
    long p = 0;

    Rat log_omega() const { return p >= 2 ? Rat(-1, p - 1) : Rat(0); }

    bool residue_char_positive() const { return p >= 2; }

    void validate() const {
        if (p == 0) return;
        if (p < 2) throw std::invalid_argument("FieldConfig: residue characteristic must be 0 or a prime");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("FieldConfig: residue characteristic must be 0 or a prime");
    }
};

}  // namespace convrad
