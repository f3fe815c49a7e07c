#include "cedga/rhom.hpp"

#include "cedga/resolution.hpp"
#include "cedga/transforms.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cedga {

namespace {

// slot = generator id, or gen_count + s for the e-slot of idempotent s
struct SlotInfo {
    uint32_t left = 0, right = 0;
    int64_t degree = 0;
    std::string name;
};

std::vector<SlotInfo> make_slots(const Dga& d)
{
    std::vector<SlotInfo> slots;
    for (uint32_t g = 0; g < d.gen_count(); ++g)
        slots.push_back({d.gen(g).left, d.gen(g).right, d.gen(g).degree, d.gen(g).name});
    for (uint32_t s = 0; s < d.ring.size(); ++s)
        slots.push_back({s, s, d.grading.normalize(-1), "e@" + d.ring.labels[s]});
    return slots;
}

struct HomBasis {
    std::vector<std::array<uint32_t, 3>> list; // (slot, v0 index, v1 index)
    std::map<std::array<uint32_t, 3>, uint32_t> index;

    void build(const std::vector<SlotInfo>& slots, const DgModule& v0, const DgModule& v1)
    {
        for (uint32_t x = 0; x < slots.size(); ++x)
            for (uint32_t p = 0; p < v0.dim(); ++p) {
                if (!v0.over.slashed && v0.basis[p].idempotent != slots[x].right)
                    continue;
                for (uint32_t q = 0; q < v1.dim(); ++q) {
                    if (!v1.over.slashed && v1.basis[q].idempotent != slots[x].left)
                        continue;
                    index[{x, p, q}] = static_cast<uint32_t>(list.size());
                    list.push_back({x, p, q});
                }
            }
    }
};

ChainComplex finish(const Dga& d, const std::vector<SlotInfo>& slots, const HomBasis& basis,
                    const DgModule& v0, const DgModule& v1, Gf2Matrix dmat)
{
    ChainComplex c;
    c.grading = d.grading;
    for (const auto& [x, p, q] : basis.list)
        c.basis.push_back(
            {"(" + slots[x].name + "; " + v0.basis[p].label + "; " + v1.basis[q].label + ")",
             d.grading.normalize(v1.basis[q].degree - v0.basis[p].degree - slots[x].degree - 1)});
    c.d = std::move(dmat);
    c.validate();
    return c;
}

} // namespace

ChainComplex rhom_complex(const Dga& d, const DgModule& v0, const DgModule& v1)
{
    if (d.slashed)
        throw error("rhom_complex: slashed input");
    if (!same_dga(v0.over, d) || !same_dga(v1.over, d))
        throw error("rhom_complex: module/algebra mismatch");
    v0.validate();
    v1.validate();

    std::vector<SlotInfo> slots = make_slots(d);
    uint32_t e_slot_base = d.gen_count();
    HomBasis basis;
    basis.build(slots, v0, v1);
    ShortResolution res{d};
    std::vector<HatElement> hat_dx;
    for (uint32_t x = 0; x < d.gen_count(); ++x)
        hat_dx.push_back(res.delta(d.differential[x]));

    Gf2Matrix dm(static_cast<uint32_t>(basis.list.size()), static_cast<uint32_t>(basis.list.size()));
    auto toggle = [&](uint32_t slot, uint32_t p, uint32_t q, uint32_t col) {
        auto it = basis.index.find({slot, p, q});
        if (it != basis.index.end())
            dm.set(it->second, col);
    };

    for (uint32_t col = 0; col < basis.list.size(); ++col) {
        auto [cslot, p, q] = basis.list[col];
        bool c_is_e = cslot >= e_slot_base;

        // module differential terms: phi(x^ (x) d0 v) and d1 phi(x^ (x) v)
        for (uint32_t j = 0; j < v0.dim(); ++j)
            if (v0.d.get(p, j))
                toggle(cslot, j, q, col);
        for (uint32_t i = 0; i < v1.dim(); ++i)
            if (v1.d.get(i, q))
                toggle(cslot, p, i, col);

        if (!c_is_e) {
            // phi(hat(dx) (x) v) for every generator slot x
            uint32_t cgen = cslot;
            for (uint32_t x = 0; x < d.gen_count(); ++x) {
                for (const TriWord& t : hat_dx[x].terms) {
                    if (t.hat != cgen)
                        continue;
                    Gf2Matrix m0 = v0.act_word(t.right);
                    Gf2Matrix m1 = v1.act_word(t.left);
                    for (uint32_t j = 0; j < v0.dim(); ++j) {
                        if (!m0.get(p, j))
                            continue;
                        for (uint32_t i = 0; i < v1.dim(); ++i)
                            if (m1.get(i, q))
                                toggle(x, j, i, col);
                    }
                }
            }
        } else {
            // x phi(e^ (x) v): rows (x, p, i) weighted by act1(x)[i, q]
            // phi(e^ (x) x v): rows (x, j, q) weighted by act0(x)[p, j]
            for (uint32_t x = 0; x < d.gen_count(); ++x) {
                for (uint32_t i = 0; i < v1.dim(); ++i)
                    if (v1.act[x].get(i, q))
                        toggle(x, p, i, col);
                for (uint32_t j = 0; j < v0.dim(); ++j)
                    if (v0.act[x].get(p, j))
                        toggle(x, j, q, col);
            }
        }
    }
    return finish(d, slots, basis, v0, v1, std::move(dm));
}

ChainComplex rhom_complex_plus(const Dga& d, const DgModule& v0, const DgModule& v1)
{
    if (d.slashed)
        throw error("rhom_complex_plus: slashed input");
    if (!same_dga(v0.over, d) || !same_dga(v1.over, d))
        throw error("rhom_complex_plus: module/algebra mismatch");
    v0.validate();
    v1.validate();

    // The morsified algebra: slots of C+ are exactly its generators, in the
    // same order as make_slots produces them.
    Dga plus = morsify(d);
    std::vector<SlotInfo> slots = make_slots(d);
    if (plus.gen_count() != slots.size())
        throw error("rhom_complex_plus: slot bookkeeping mismatch");

    // e acts as the module differential (restricted per block), V+ has no
    // differential of its own.
    auto acts_plus = [&](const DgModule& v) {
        std::vector<Gf2Matrix> a = v.act;
        for (uint32_t s = 0; s < d.ring.size(); ++s) {
            Gf2Matrix m = v.d.compose(v.projection(s));
            a.push_back(std::move(m));
        }
        return a;
    };
    std::vector<Gf2Matrix> act0 = acts_plus(v0);
    std::vector<Gf2Matrix> act1 = acts_plus(v1);
    auto act_word_plus = [&](const std::vector<Gf2Matrix>& acts, const DgModule& v, const Word& w) {
        if (w.empty()) {
            if (w.unit < 0 || v.over.slashed) {
                Gf2Matrix id(v.dim(), v.dim());
                for (uint32_t i = 0; i < v.dim(); ++i)
                    id.set(i, i);
                return id;
            }
            return v.projection(static_cast<uint32_t>(w.unit));
        }
        Gf2Matrix m = acts.at(w.letters.front());
        for (size_t i = 1; i < w.letters.size(); ++i)
            m = m.compose(acts.at(w.letters[i]));
        return m;
    };

    HomBasis basis;
    basis.build(slots, v0, v1);
    ShortResolution res{plus};

    Gf2Matrix dm(static_cast<uint32_t>(basis.list.size()), static_cast<uint32_t>(basis.list.size()));
    for (uint32_t col = 0; col < basis.list.size(); ++col) {
        auto [cslot, p, q] = basis.list[col];
        // single term: phi(hat(d+ x) (x) v) over every slot x of C+
        for (uint32_t x = 0; x < plus.gen_count(); ++x) {
            for (const TriWord& t : res.delta(plus.differential[x]).terms) {
                if (t.hat != cslot)
                    continue;
                Gf2Matrix m0 = act_word_plus(act0, v0, t.right);
                Gf2Matrix m1 = act_word_plus(act1, v1, t.left);
                for (uint32_t j = 0; j < v0.dim(); ++j) {
                    if (!m0.get(p, j))
                        continue;
                    for (uint32_t i = 0; i < v1.dim(); ++i)
                        if (m1.get(i, q)) {
                            auto it = basis.index.find({x, j, i});
                            if (it != basis.index.end())
                                dm.set(it->second, col);
                        }
                }
            }
        }
    }
    return finish(d, slots, basis, v0, v1, std::move(dm));
}

/******** cycle splitting ********/

namespace {

struct SplitVec {
    std::vector<uint8_t> coords; // over the ambient V basis
    int64_t degree = 0;
    uint32_t idem = 0;
};

std::vector<uint8_t> mat_apply(const Gf2Matrix& m, const std::vector<uint8_t>& v)
{
    return m.apply_dense(v);
}

bool is_zero_vec(const std::vector<uint8_t>& v)
{
    return std::all_of(v.begin(), v.end(), [](uint8_t b) { return b == 0; });
}

void check_cycle_split_hypotheses(const Dga& d)
{
    if (d.grading.kind != GradingSpec::Kind::Z)
        throw error("cycle_split: algebra must be Z-graded");
    for (const auto& g : d.generators) {
        if (g.degree < 0)
            throw error("cycle_split: algebra has a negative-degree generator: " + g.name);
        if (g.degree == 0)
            throw error("cycle_split: degree-0 part of the algebra must be the idempotents (" +
                        g.name + " has degree 0)");
    }
    for (uint32_t g = 0; g < d.gen_count(); ++g)
        if (d.gen(g).degree == 1 && !d.differential[g].is_zero())
            throw error("cycle_split: d does not vanish on the degree-1 generator " + d.gen(g).name);
}

} // namespace

DgModule cycle_split(const DgModule& v)
{
    check_cycle_split_hypotheses(v.over);
    v.validate();
    PoincarePolynomial h = betti(v.underlying_complex());
    if (h.total() == 0)
        throw error("cycle_split: H(V) = 0");

    // current submodule basis, degree and block homogeneous, in V coordinates
    std::vector<SplitVec> m;
    for (uint32_t i = 0; i < v.dim(); ++i) {
        SplitVec sv;
        sv.coords.assign(v.dim(), 0);
        sv.coords[i] = 1;
        sv.degree = v.basis[i].degree;
        sv.idem = v.basis[i].idempotent;
        m.push_back(std::move(sv));
    }

    auto echelon_insert = [](std::map<uint32_t, std::vector<uint8_t>>& ech,
                             std::vector<uint8_t> vec) -> bool {
        // reduce against the echelon; returns true when a new pivot was added
        for (;;) {
            uint32_t lead = 0;
            bool nonzero = false;
            for (uint32_t i = 0; i < vec.size(); ++i)
                if (vec[i]) {
                    lead = i;
                    nonzero = true;
                    break;
                }
            if (!nonzero)
                return false;
            auto it = ech.find(lead);
            if (it == ech.end()) {
                ech.emplace(lead, std::move(vec));
                return true;
            }
            for (uint32_t i = 0; i < vec.size(); ++i)
                vec[i] ^= it->second[i];
        }
    };

    for (;;) {
        if (m.empty())
            throw error("cycle_split: submodule collapsed (H(V) should be nonzero)");
        int64_t bottom = m.front().degree;
        for (const auto& sv : m)
            bottom = std::min(bottom, sv.degree);

        // d of the (bottom+1)-slice
        bool any_boundary = false;
        for (const auto& sv : m)
            if (sv.degree == bottom + 1 && !is_zero_vec(mat_apply(v.d, sv.coords)))
                any_boundary = true;
        if (!any_boundary)
            break; // V_{i0+1} all cycles already

        // per block: complement of d(M_{bottom+1}) inside M_bottom
        std::vector<SplitVec> next;
        bool h_nonzero = false;
        for (uint32_t s = 0; s < std::max<uint32_t>(1, v.over.ring.size()); ++s) {
            std::map<uint32_t, std::vector<uint8_t>> ech;
            for (const auto& sv : m)
                if (sv.degree == bottom + 1 && (v.over.slashed || sv.idem == s))
                    echelon_insert(ech, mat_apply(v.d, sv.coords));
            for (const auto& sv : m) {
                if (sv.degree != bottom || (!v.over.slashed && sv.idem != s))
                    continue;
                std::vector<uint8_t> c = sv.coords;
                if (echelon_insert(ech, c)) {
                    next.push_back(sv); // part of the complement H
                    h_nonzero = true;
                }
            }
            if (v.over.slashed)
                break;
        }
        // cycles of the (bottom+1) slice, per block
        for (uint32_t s = 0; s < std::max<uint32_t>(1, v.over.ring.size()); ++s) {
            std::vector<const SplitVec*> slice;
            for (const auto& sv : m)
                if (sv.degree == bottom + 1 && (v.over.slashed || sv.idem == s))
                    slice.push_back(&sv);
            if (!slice.empty()) {
                Gf2Matrix dd(v.dim(), static_cast<uint32_t>(slice.size()));
                for (uint32_t c = 0; c < slice.size(); ++c) {
                    auto img = mat_apply(v.d, slice[c]->coords);
                    for (uint32_t r = 0; r < v.dim(); ++r)
                        if (img[r])
                            dd.set(r, c);
                }
                for (const Gf2Row& combo : gf2_nullspace(dd)) {
                    SplitVec sv;
                    sv.coords.assign(v.dim(), 0);
                    for (uint32_t c : combo)
                        for (uint32_t i = 0; i < v.dim(); ++i)
                            sv.coords[i] ^= slice[c]->coords[i];
                    sv.degree = bottom + 1;
                    sv.idem = s;
                    next.push_back(std::move(sv));
                }
            }
            if (v.over.slashed)
                break;
        }
        for (const auto& sv : m)
            if (sv.degree >= bottom + 2)
                next.push_back(sv);
        m = std::move(next);
        if (h_nonzero)
            break;
    }

    // package the span of m as a DgModule: restrict d and the actions
    Gf2Matrix basis_mat(v.dim(), static_cast<uint32_t>(m.size()));
    for (uint32_t c = 0; c < m.size(); ++c)
        for (uint32_t r = 0; r < v.dim(); ++r)
            if (m[c].coords[r])
                basis_mat.set(r, c);
    auto restrict_map = [&](const Gf2Matrix& big) {
        Gf2Matrix small(static_cast<uint32_t>(m.size()), static_cast<uint32_t>(m.size()));
        for (uint32_t c = 0; c < m.size(); ++c) {
            std::vector<uint8_t> img = mat_apply(big, m[c].coords);
            std::vector<uint8_t> x;
            if (!gf2_solve(basis_mat, img, x))
                throw error("cycle_split: subspace is not invariant (algebra hypotheses violated)");
            for (uint32_t r = 0; r < m.size(); ++r)
                if (x[r])
                    small.set(r, c);
        }
        return small;
    };

    DgModule out;
    out.over = v.over;
    for (uint32_t c = 0; c < m.size(); ++c)
        out.basis.push_back({"w" + std::to_string(c), m[c].idem, m[c].degree});
    out.d = restrict_map(v.d);
    for (const auto& a : v.act)
        out.act.push_back(restrict_map(a));
    out.validate();

    PoincarePolynomial h2 = betti(out.underlying_complex());
    if (!(h2 == h))
        throw error("cycle_split: output is not quasi-isomorphic to the input");
    return out;
}

/******** the single-degree criterion ********/

std::string SingleDegreeReport::to_string() const
{
    std::ostringstream os;
    switch (status) {
    case Status::Pass: os << "PASS"; break;
    case Status::Fail: os << "FAIL"; break;
    case Status::NotApplicable: os << "NOT APPLICABLE"; break;
    case Status::Vacuous: os << "VACUOUS (H(V) = 0)"; break;
    }
    os << "; rank H^0(RHom(V,V)) = " << h0_rank;
    if (!detail.empty())
        os << "; " << detail;
    return os.str();
}

SingleDegreeReport single_degree_check(const Dga& d, const DgModule& v)
{
    SingleDegreeReport rep;
    try {
        check_cycle_split_hypotheses(d);
    } catch (const error& e) {
        rep.status = SingleDegreeReport::Status::NotApplicable;
        rep.detail = e.what();
        return rep;
    }
    v.validate();

    PoincarePolynomial hv = betti(v.underlying_complex());
    if (hv.total() == 0) {
        rep.status = SingleDegreeReport::Status::Vacuous;
        rep.detail = "module is acyclic; criterion holds vacuously";
        return rep;
    }

    PoincarePolynomial ext = betti(rhom_complex(d, v, v));
    auto it = ext.rank.find(0);
    rep.h0_rank = (it == ext.rank.end()) ? 0 : it->second;
    if (rep.h0_rank != 1) {
        rep.status = SingleDegreeReport::Status::NotApplicable;
        rep.detail = "endomorphism degree 0 rank != 1; criterion not triggered";
        return rep;
    }

    DgModule split = cycle_split(v);
    int64_t bottom = split.basis.front().degree;
    for (const auto& b : split.basis)
        bottom = std::min(bottom, b.degree);
    // quotient onto the bottom slice: a module concentrated in one degree
    DgModule bottom_module;
    bottom_module.over = split.over;
    for (const auto& b : split.basis)
        if (b.degree == bottom)
            bottom_module.basis.push_back(b);
    uint32_t nb = static_cast<uint32_t>(bottom_module.basis.size());
    bottom_module.d = Gf2Matrix(nb, nb);
    for (uint32_t g = 0; g < split.over.gen_count(); ++g)
        bottom_module.act.emplace_back(nb, nb);
    bottom_module.validate();

    PoincarePolynomial hs = betti(split.underlying_complex());
    PoincarePolynomial hb = betti(bottom_module.underlying_complex());
    if (!(hs == hb)) {
        rep.status = SingleDegreeReport::Status::Fail;
        rep.detail = "quotient onto the bottom degree is not a quasi-isomorphism";
        return rep;
    }
    // block ranks of the bottom slice
    std::map<uint32_t, uint32_t> block;
    for (const auto& b : bottom_module.basis)
        ++block[b.idempotent];
    for (const auto& [s, n] : block)
        if (n > 1) {
            rep.status = SingleDegreeReport::Status::Fail;
            rep.detail = "idempotent block " + d.ring.labels.at(s) + " has rank " + std::to_string(n);
            return rep;
        }
    rep.status = SingleDegreeReport::Status::Pass;
    rep.detail = "H(V) concentrated in degree " + std::to_string(bottom) +
                 " with idempotent blocks of rank <= 1";
    return rep;
}

} // namespace cedga
