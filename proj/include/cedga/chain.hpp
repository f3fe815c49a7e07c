#pragma once

#include "cedga/dga.hpp"
#include "cedga/gf2.hpp"

#include <map>
#include <string>
#include <vector>

namespace cedga {

/******** finite chain complexes over F2 ********/

struct ChainBasisElement {
    std::string label;
    int64_t degree = 0;
};

// Finite-dimensional complex with a degree -1 differential.
struct ChainComplex {
    GradingSpec grading;
    std::vector<ChainBasisElement> basis;
    Gf2Matrix d; // square, d[r] collects the rows hit by basis column c

    uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
    // entries must connect degree k to degree k-1; d^2 = 0
    void validate() const;
};

struct ChainMap {
    const ChainComplex* source = nullptr;
    const ChainComplex* target = nullptr;
    Gf2Matrix matrix; // degree 0

    void validate() const; // commutes with differentials, degree 0
};

// degree -> rank of homology; finitely supported
struct PoincarePolynomial {
    std::map<int64_t, uint64_t> rank;

    uint64_t total() const;
    int64_t euler() const; // sum of (-1)^k rank_k (taken in Z even for Zmod)
    bool operator==(const PoincarePolynomial&) const = default;
    std::string to_string() const;
};

// per-degree rank_k(H) = dim ker d_k - rank d_{k+1}, by GF(2) elimination
PoincarePolynomial betti(const ChainComplex& c);

// shifted-source mapping cone of a degree 0 chain map
ChainComplex mapping_cone(const ChainMap& f);

// unshifted cone of a degree -1 chain map given as a raw matrix
ChainComplex cone_of_degree_minus1(const ChainComplex& x, const ChainComplex& y, const Gf2Matrix& g);

struct ConeCompositionReport {
    PoincarePolynomial cone_eta;
    PoincarePolynomial cone_composite;
    bool pass = false;
    std::string to_string() const;
};

// Betti(Cone(eta)) == Betti(Cone(mu o nu)) for eta: Cone(mu) -> Cone(nu)
// the identity on the common middle complex and zero elsewhere.
ConeCompositionReport cone_composition_check(const ChainMap& nu, const ChainMap& mu);

// Equality of Betti tables up to one global degree shift; fills *shift.
bool equal_up_to_shift(const PoincarePolynomial& a, const PoincarePolynomial& b,
                       const GradingSpec& grading, int64_t* shift);

} // namespace cedga
