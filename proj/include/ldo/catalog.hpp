#pragma once

#include <string>
#include <vector>

#include "ldo/numfield.hpp"

namespace ldo::catalog {

// Fields used by the test suites and as CLI shortcuts (--field <name>).
NumberField q_sqrt2();       // x^2 - 2, unit 1 + t
NumberField cyclic_cubic();  // x^3 - 3x - 1, units t, t^2 - 2
NumberField quartic_circle();  // x^4 - 2x^3 + x^2 - 2x + 1, units t, t - 1; one real pair, one complex place
NumberField q_zeta8();       // x^4 + 1 = Q(sqrt2)(i), unit 1 + t - t^3, CM over x^2 - 2
NumberField q_i();           // x^2 + 1

std::vector<std::string> names();
// nullopt-like: throws Config for unknown names
NumberField by_name(const std::string& name);
bool has(const std::string& name);

}  // namespace ldo::catalog
