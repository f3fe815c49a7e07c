#pragma once

#include "cedga/dga.hpp"

#include <optional>
#include <utility>

namespace cedga {

/******** Copy maps and derived names ********/

// Expansion data: k_s ordered copies per idempotent of the source ring, with
// an optional Maslov potential per copy (degree offsets of the copies).
struct CopyMap {
    std::map<std::string, uint32_t> counts;
    std::map<std::string, std::vector<int64_t>> potentials; // missing = all zero

    uint32_t count(const std::string& base) const;
    int64_t potential(const std::string& base, uint32_t i) const; // i is 1-based
    static CopyMap uniform(const Dga& base, uint32_t k);
};

// Deterministic naming of derived generators, so that independent
// construction paths can be compared syntactically.
std::string copy_label(const std::string& base, uint32_t i);                  // s@i
std::string copy_gen_name(const std::string& base, uint32_t i, uint32_t j);   // x@i.j
std::string e_gen_name(const std::string& idempotent);                        // e@s

struct DerivedName {
    std::string base;
    uint32_t i = 0, j = 0;
};
std::optional<DerivedName> parse_copy_name(const std::string& name);

/******** Dga morphisms ********/

struct DgaMorphism {
    Dga source;
    Dga target;
    std::vector<Element> images; // per source generator

    Element apply(const Word& w) const;
    Element apply(const Element& e) const;
    // chain map check on every generator: d_target(T(x)) == T(d_source(x))
    bool is_chain_map(std::string* witness = nullptr) const;
};

/******** The four algebra operations, elimination, truncation ********/

// Adjoin one e-unit per idempotent with de = e^2 and twist all differentials
// by e-conjugation. The output carries no action filtration (de = e^2 cannot
// decrease a nonnegative action).
Dga morsify(const Dga& d);

// Forget composability; constant terms collapse to the global unit.
Dga omit_idempotents(const Dga& d);

// Replace each idempotent by ordered copies; generators acquire copy
// subscripts and the differential expands over all intermediate copies.
std::pair<Dga, DgaMorphism> expand_idempotents(const Dga& d, const CopyMap& cm);

// Kill the e-copies e@s@i.j with i >= j; the surviving e's are strictly
// triangular and the quotient is semi-projective again.
Dga ordered_quotient(const Dga& d);

// Quotient by the bilateral differential ideal (a, b) where da = b, db = 0.
Dga eliminate_pair(const Dga& d, const std::string& a, const std::string& b);

// Eliminate every (c@s@i.j, m@s@i.j) pair of a model cap algebra,
// inductively on j-i.
Dga eliminate_cm_tower(const Dga& d);

// Sub-dga generated by the generators of action <= Q.
Dga truncate_by_action(const Dga& d, const Rational& q);

// Shared expansion helper: the subscripted sum over intermediate copies of a
// composable word, between copy i of its left endpoint and copy j of its
// right one. `target` must be the expanded algebra with its CopyOrdering.
Element expand_word_copies(const Dga& base, const Word& w, uint32_t i, uint32_t j,
                           const CopyMap& cm, const Dga& target);

} // namespace cedga
