#pragma once

#include "cedga/dga.hpp"

#include <string>
#include <vector>

namespace cedga {

// Built-in examples. Every entry passes check_dga at load.
Dga make_unknot();
Dga make_trefoil();        // Chekanov presentation of the maximal-tb trefoil
Dga make_hopf_attaching(); // two-idempotent synthetic attaching link

// Seeded random semi-projective DGAs, built in layers so that d^2 = 0 holds
// by construction: closed generators first, then generators whose
// differentials are either words in closed letters or derivatives of
// existing elements.
Dga make_synthetic(uint64_t seed);

// A synthetic DGA containing a generator pair in elimination position
// (da = b, db = 0); returns the pair names through the out parameters.
Dga make_synthetic_with_pair(uint64_t seed, std::string& a, std::string& b);

std::vector<std::string> registry_names(); // includes "synthetic-<seed>" as a family
bool is_registry_name(const std::string& name);
Dga registry_example(const std::string& name);

} // namespace cedga
