#pragma once

#include "cedga/chain.hpp"
#include "cedga/dga.hpp"
#include "cedga/module.hpp"
#include "cedga/surgery.hpp"

#include <random>

namespace cedga::testutil {

// Random chain complex: random dimensions in a degree window, differential
// conjugated from a sum of elementary pieces so that d^2 = 0 and the
// homology is nontrivial with positive probability.
ChainComplex random_complex(std::mt19937_64& rng, uint32_t max_dim, int64_t min_deg,
                            int64_t max_deg);

// Uniformly random element of the space of degree-0 chain maps, found as a
// random vector of the nullspace of f -> df + fd.
Gf2Matrix random_chain_map(std::mt19937_64& rng, const ChainComplex& from, const ChainComplex& to);

// Random valid (Dga, V0, V1) triples via caps over a synthetic base and
// enumerated augmentations; dim V = total copy count.
struct RandomTriple {
    Dga base;
    DgModule v0, v1;
};
RandomTriple random_module_triple(std::mt19937_64& rng);

} // namespace cedga::testutil
