#pragma once

#include "cedga/chain.hpp"
#include "cedga/dga.hpp"
#include "cedga/module.hpp"
#include "cedga/transforms.hpp"

#include <string>
#include <vector>

namespace cedga {

/******** cap data ********/

struct CapSpec {
    Dga base;      // A_S, unital, not slashed
    CopyMap copies; // counts k_sigma and Maslov potentials per copy
};

// Subscripted expansion of a composable word between copy i of its left
// endpoint and copy j of its right one (sum over intermediate copy indices).
// Bounds-checked front end of the shared expansion helper.
Element subscript_expand(const Dga& base, const Word& w, uint32_t i, uint32_t j, const CopyMap& cm,
                         const Dga& target);

// The arrow algebra vec-A+ attached to a cap: generators a@i.j and e@s@i.j
// (i < j) with the morsification-twisted, quotient-filtered differential.
// Equal, table for table, to ordered_quotient(expand(morsify(base))).
Dga build_cap_algebra(const CapSpec& spec);

// The model cap algebra: vec-A+ plus c@s@i.j and m@s@i.j (i < j) in degrees
// p_i - p_j + dim_l - 1 and p_i - p_j + dim_l - 2, with
// dc = m + sum(ce + ec) and the minimal m-model dm = sum(me + em).
Dga build_model_cap(const CapSpec& spec, int64_t dim_l = 2);

/******** the Cthulhu bimodule ********/

// A three-part word: a word over the cap1 algebra, a hatted generator, a word
// over the cap0 algebra.
struct CthWord {
    Word left;
    uint32_t hat = 0;
    Word right;
    auto operator<=>(const CthWord&) const = default;
};

struct CthElement {
    std::vector<CthWord> terms;

    CthElement() = default;
    explicit CthElement(std::vector<CthWord> ts);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const CthElement&) const = default;
};

CthElement cth_add(const CthElement& a, const CthElement& b);

struct CthGenerator {
    std::string name;     // e^@s@i.j or a^@i.j
    std::string base;     // base chord name, or the idempotent label for e-hats
    bool is_e = false;
    uint32_t i = 0, j = 0;
    int64_t degree = 0;   // p1_i - p0_j - 1 for e-hats, |a| + p1_i - p0_j for chords
};

// Which summation ranges the differential uses. `Derived` filters the
// resolution definition through the quotient (the default; d^2 = 0 always).
// `Truncated` drops the boundary copy indices from the side sums; it is kept
// to document that those terms are forced: d^2 acquires a defect as soon as a
// differential word has length two, and the build records the defect instead
// of patching it.
enum class CthulhuRanges { Derived, Truncated };

struct CthulhuBimodule {
    Dga cap1; // left cap algebra (unital vec-A+)
    Dga cap0; // right cap algebra
    CapSpec spec1, spec0;
    std::vector<CthGenerator> generators;
    std::vector<CthElement> differential;
    CthulhuRanges ranges = CthulhuRanges::Derived;
    bool d_squared_ok = false;
    std::string d_squared_witness; // first failing generator, Truncated ranges only

    uint32_t gen_count() const { return static_cast<uint32_t>(generators.size()); }
    uint32_t gen_index(const std::string& name) const;
    CthElement d_of(const CthElement& e) const; // Leibniz over the three parts
};

// Single-hat subscripted expansion of a composable word: the sum over the hat
// position and all intermediate copy indices; letters left of the hat carry
// cap1 subscripts, letters right of it cap0 subscripts. Empty words expand
// to zero (there is no hat position).
CthElement hat_subscript_expand(const Dga& base, const Word& w, uint32_t i, uint32_t j,
                                const CthulhuBimodule& b);

CthulhuBimodule build_cthulhu_bimodule(const CapSpec& cap1, const CapSpec& cap0,
                                       CthulhuRanges ranges = CthulhuRanges::Derived);

// hom(Cth (x) V0, V1) with the inherited differential; V0 over the cap0
// algebra (or its omitted twin), V1 over cap1's.
ChainComplex cthulhu_complex(const CthulhuBimodule& b, const DgModule& v0, const DgModule& v1);

/******** augmentation -> module, and the two-path comparison ********/

// The A_S-module induced by a scalar augmentation of the omitted cap algebra:
// one basis vector per copy, d and the actions given by the augmentation
// values on the subscripted generators. The copy potentials enter negated
// (plus `shift`) so that d has degree -1.
DgModule module_from_cap_augmentation(const Dga& a_s, const CapSpec& cap, const Augmentation& eps,
                                      int64_t shift = 0);

struct PipelineReport {
    PoincarePolynomial cthulhu;
    PoincarePolynomial rhom;
    int64_t shift = 0;
    bool pass = false;
    std::string to_string() const;
};

// Betti of the Cthulhu complex over (F_eps0, F_eps1) against Betti of
// RHom(V_eps0, V_eps1) over A_S, equal up to one global degree shift.
PipelineReport pipeline_compare(const Dga& a_s, const CapSpec& cap0, const CapSpec& cap1,
                                const Augmentation& eps0, const Augmentation& eps1);

// F_eps: the one-dimensional module over an omitted cap algebra.
DgModule augmentation_module(const Dga& omitted_cap, const Augmentation& eps);

} // namespace cedga
