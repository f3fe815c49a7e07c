#pragma once

#include "cedga/chain.hpp"
#include "cedga/dga.hpp"
#include "cedga/gf2.hpp"

#include <string>
#include <vector>

namespace cedga {

/******** finite-dimensional dg-modules ********/

struct ModuleBasisVector {
    std::string label;
    uint32_t idempotent = 0; // ignored for slashed over-algebras
    int64_t degree = 0;
};

// Left dg-module over a Dga: d has degree -1, act(x) maps the s_+(x) block
// to the s_-(x) block with degree |x|, and the Leibniz rule
// d act(x) + act(x) d = act(dx) holds, where words act by composition and a
// unit term at s acts as the projection onto the s block.
struct DgModule {
    Dga over;
    std::vector<ModuleBasisVector> basis;
    Gf2Matrix d;
    std::vector<Gf2Matrix> act; // per generator of `over`

    uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
    Gf2Matrix act_word(const Word& w) const;
    Gf2Matrix act_element(const Element& e) const;
    Gf2Matrix projection(uint32_t idem) const;
    ChainComplex underlying_complex() const;

    void validate() const; // throws on any invariant failure
};

/******** augmentations ********/

struct Augmentation {
    enum class Form { Scalar, Ke } form = Form::Scalar;
    std::vector<uint8_t> scalar; // per generator, Form::Scalar
    std::vector<KeElement> ke;   // per generator, Form::Ke
};

// eps(g) = 0 unless |g| = 0 (waived by `ungraded`), and eps(dg) = 0 for all g.
bool augmentation_valid(const Dga& d, const Augmentation& eps, bool ungraded,
                        std::string* why = nullptr);

// Exhaustive search over F2 assignments to the degree-0 generators with early
// constraint propagation. Assignments are emitted in lexicographic order over
// the name-sorted degree-0 generators, bit 0 first. jobs > 1 splits the
// search over assignment prefixes; the result order is unchanged.
std::vector<Augmentation> find_augmentations(const Dga& d, uint32_t cap_bits = 24,
                                             bool ungraded = false, unsigned jobs = 1);

// Lift of a scalar augmentation on the slashed algebra to the k^e-valued
// augmentation on its composable origin: eps(x) = check-eps(x) s_-(x) (x) s_+(x).
Augmentation lift_to_ke(const Augmentation& eps, const Dga& slashed, const Dga& unslashed);

} // namespace cedga
