#pragma once

#include "cedga/chain.hpp"
#include "cedga/dga.hpp"
#include "cedga/module.hpp"

#include <string>

namespace cedga {

// The complex computing RHom(V0, V1) through the short resolution: the
// underlying space is hom_{k_S}(C+ (x) V0, V1), with basis functionals
// (x, v, w*) for x a generator or an e-slot, v in the s_+(x) block of V0 and
// w in the s_-(x) block of V1, of degree |w| - |v| - |x| - 1.
//
// The differential, for x a generator,
//   (D phi)(x^ (x) v) = phi(hat(dx) (x) v) + x phi(e^ (x) v)
//                       + phi(e^ (x) xv) + phi(x^ (x) d0 v) + d1 phi(x^ (x) v)
// and on the e-slot (D phi)(e^ (x) v) = d1 phi(e^ (x) v) + phi(e^ (x) d0 v),
// where phi(a c^ b (x) v) = act1(a) phi(c^ (x) act0(b) v).
ChainComplex rhom_complex(const Dga& d, const DgModule& v0, const DgModule& v1);

// The same complex assembled through the morsified algebra: V+ has trivial
// differential and e acts as d, so the whole differential is the single term
// phi(hat(d+ x) (x) v). Must agree with rhom_complex entry for entry.
ChainComplex rhom_complex_plus(const Dga& d, const DgModule& v0, const DgModule& v1);

/******** module minimization ********/

// Quasi-isomorphic replacement with nonzero bottom degree i0 and V_{i0+1}
// consisting of cycles, by the complement-and-restrict loop. Requires the
// algebra hypotheses: Z-graded, no generators of degree <= 0, d vanishing on
// the degree-1 generators, and H(V) != 0.
DgModule cycle_split(const DgModule& v);

struct SingleDegreeReport {
    enum class Status { Pass, Fail, NotApplicable, Vacuous } status = Status::NotApplicable;
    uint64_t h0_rank = 0;
    std::string detail;
    std::string to_string() const;
};

// Checks the consequence of a 1-dimensional zeroth Ext group: H(V) supported
// in a single degree with every idempotent block of rank <= 1.
SingleDegreeReport single_degree_check(const Dga& d, const DgModule& v);

} // namespace cedga
