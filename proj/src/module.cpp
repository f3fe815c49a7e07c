#include "cedga/module.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>

namespace cedga {

/******** DgModule ********/

Gf2Matrix DgModule::projection(uint32_t idem) const
{
    Gf2Matrix p(dim(), dim());
    for (uint32_t i = 0; i < dim(); ++i)
        if (over.slashed || basis[i].idempotent == idem)
            p.set(i, i);
    return p;
}

Gf2Matrix DgModule::act_word(const Word& w) const
{
    if (w.empty()) {
        if (over.slashed || w.unit < 0) {
            Gf2Matrix id(dim(), dim());
            for (uint32_t i = 0; i < dim(); ++i)
                id.set(i, i);
            return id;
        }
        return projection(static_cast<uint32_t>(w.unit));
    }
    Gf2Matrix m = act.at(w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i)
        m = m.compose(act.at(w.letters[i]));
    return m;
}

Gf2Matrix DgModule::act_element(const Element& e) const
{
    Gf2Matrix out(dim(), dim());
    for (const Word& w : e.words) {
        Gf2Matrix m = act_word(w);
        for (uint32_t r = 0; r < dim(); ++r)
            out.row[r] = gf2_add(out.row[r], m.row[r]);
    }
    return out;
}

ChainComplex DgModule::underlying_complex() const
{
    ChainComplex c;
    c.grading = over.grading;
    for (const auto& b : basis)
        c.basis.push_back({b.label, b.degree});
    c.d = d;
    return c;
}

void DgModule::validate() const
{
    if (act.size() != over.gen_count())
        throw error("module: action table size mismatch");
    if (d.rows != dim() || d.cols != dim())
        throw error("module: differential shape mismatch");
    for (const auto& m : act)
        if (m.rows != dim() || m.cols != dim())
            throw error("module: action matrix shape mismatch");
    if (!over.slashed)
        for (const auto& b : basis)
            if (b.idempotent >= over.ring.size())
                throw error("module: basis idempotent out of range");

    for (uint32_t r = 0; r < dim(); ++r)
        for (uint32_t c : d.row[r]) {
            if (!over.grading.same_degree(basis[r].degree, basis[c].degree - 1))
                throw error("module: differential entry not of degree -1");
            if (!over.slashed && basis[r].idempotent != basis[c].idempotent)
                throw error("module: differential does not preserve idempotent blocks");
        }
    if (!d.compose(d).is_zero())
        throw error("module: d^2 != 0");

    for (uint32_t g = 0; g < over.gen_count(); ++g) {
        const Generator& gen = over.gen(g);
        for (uint32_t r = 0; r < dim(); ++r)
            for (uint32_t c : act[g].row[r]) {
                if (!over.grading.same_degree(basis[r].degree, basis[c].degree + gen.degree))
                    throw error("module: act(" + gen.name + ") entry not of degree |x|");
                if (!over.slashed &&
                    (basis[c].idempotent != gen.right || basis[r].idempotent != gen.left))
                    throw error("module: act(" + gen.name + ") violates the block structure");
            }
        Gf2Matrix lhs = d.compose(act[g]);
        Gf2Matrix rhs = act[g].compose(d);
        for (uint32_t r = 0; r < dim(); ++r)
            lhs.row[r] = gf2_add(lhs.row[r], rhs.row[r]);
        Gf2Matrix expect = act_element(over.differential[g]);
        for (uint32_t r = 0; r < dim(); ++r)
            if (lhs.row[r] != expect.row[r])
                throw error("module: Leibniz rule fails for " + gen.name);
    }
}

/******** augmentations ********/

namespace {

// One F2 polynomial constraint per generator and idempotent component:
// sum over words of the product of the unknown bits.
struct Constraint {
    std::vector<std::vector<uint32_t>> monomials; // each a sorted set of unknown indices
    bool constant = false;                        // unit-term contribution
    uint32_t max_unknown = 0;                     // for propagation scheduling
    std::string generator;
};

uint8_t eval_constraint(const Constraint& c, const std::vector<uint8_t>& bits)
{
    uint8_t acc = c.constant ? 1 : 0;
    for (const auto& m : c.monomials) {
        uint8_t p = 1;
        for (uint32_t u : m)
            p &= bits[u];
        acc ^= p;
    }
    return acc;
}

} // namespace

bool augmentation_valid(const Dga& d, const Augmentation& eps, bool ungraded, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    if (eps.form == Augmentation::Form::Scalar) {
        if (eps.scalar.size() != d.gen_count())
            return fail("value table size mismatch");
        for (uint32_t g = 0; g < d.gen_count(); ++g)
            if (eps.scalar[g] && !ungraded && !d.grading.same_degree(d.gen(g).degree, 0))
                return fail("nonzero value on generator of nonzero degree: " + d.gen(g).name);
        for (uint32_t g = 0; g < d.gen_count(); ++g) {
            uint8_t acc = 0;
            for (const Word& w : d.differential[g].words) {
                uint8_t p = 1;
                for (uint32_t l : w.letters)
                    p &= eps.scalar[l];
                acc ^= p; // unit terms contribute 1
            }
            if (acc)
                return fail("eps(d g) != 0 for " + d.gen(g).name);
        }
        return true;
    }
    if (eps.ke.size() != d.gen_count())
        return fail("value table size mismatch");
    for (uint32_t g = 0; g < d.gen_count(); ++g) {
        if (!eps.ke[g].is_zero() && !ungraded && !d.grading.same_degree(d.gen(g).degree, 0))
            return fail("nonzero value on generator of nonzero degree: " + d.gen(g).name);
        // a bimodule map supported on the (s_-, s_+) component
        for (const auto& [s, t] : eps.ke[g].pairs)
            if (s != d.gen(g).left || t != d.gen(g).right)
                return fail("value of " + d.gen(g).name + " is not a bimodule map");
    }
    for (uint32_t g = 0; g < d.gen_count(); ++g)
        if (!evaluate_ke_morphism(eps.ke, d.differential[g], d).is_zero())
            return fail("eps(d g) != 0 for " + d.gen(g).name);
    return true;
}

std::vector<Augmentation> find_augmentations(const Dga& d, uint32_t cap_bits, bool ungraded,
                                             unsigned jobs)
{
    // unknowns: degree-0 generators (all generators with --ungraded)
    std::vector<uint32_t> unknown_ids;
    for (uint32_t g = 0; g < d.gen_count(); ++g)
        if (ungraded || d.grading.same_degree(d.gen(g).degree, 0))
            unknown_ids.push_back(g);
    std::sort(unknown_ids.begin(), unknown_ids.end(),
              [&](uint32_t a, uint32_t b) { return d.gen(a).name < d.gen(b).name; });
    if (unknown_ids.size() > cap_bits)
        throw error("augmentation search budget exceeded: " + std::to_string(unknown_ids.size()) +
                    " unknowns > " + std::to_string(cap_bits));
    std::vector<int64_t> slot(d.gen_count(), -1);
    for (uint32_t u = 0; u < unknown_ids.size(); ++u)
        slot[unknown_ids[u]] = u;

    std::vector<Constraint> constraints;
    for (uint32_t g = 0; g < d.gen_count(); ++g) {
        Constraint c;
        c.generator = d.gen(g).name;
        bool nontrivial = false;
        for (const Word& w : d.differential[g].words) {
            if (w.empty()) {
                c.constant = !c.constant;
                nontrivial = true;
                continue;
            }
            std::set<uint32_t> mono;
            bool dead = false;
            for (uint32_t l : w.letters) {
                if (slot[l] < 0) {
                    dead = true; // a letter with eps = 0 kills the word
                    break;
                }
                mono.insert(static_cast<uint32_t>(slot[l]));
            }
            if (dead)
                continue;
            nontrivial = true;
            c.monomials.emplace_back(mono.begin(), mono.end());
        }
        if (!nontrivial)
            continue;
        // cancel repeated monomials mod 2
        std::sort(c.monomials.begin(), c.monomials.end());
        std::vector<std::vector<uint32_t>> kept;
        for (size_t i = 0; i < c.monomials.size();) {
            size_t j = i;
            while (j < c.monomials.size() && c.monomials[j] == c.monomials[i])
                ++j;
            if ((j - i) % 2 == 1)
                kept.push_back(c.monomials[i]);
            i = j;
        }
        c.monomials = std::move(kept);
        if (c.monomials.empty() && !c.constant)
            continue;
        c.max_unknown = 0;
        for (const auto& m : c.monomials)
            for (uint32_t u : m)
                c.max_unknown = std::max(c.max_unknown, u + 1);
        constraints.push_back(std::move(c));
    }

    // constraints become decidable once all their unknowns are assigned
    std::vector<std::vector<uint32_t>> due(unknown_ids.size() + 1);
    for (uint32_t i = 0; i < constraints.size(); ++i)
        due[constraints[i].max_unknown].push_back(i);

    auto emit = [&](const std::vector<uint8_t>& bits, std::vector<Augmentation>& found) {
        Augmentation eps;
        if (d.slashed) {
            eps.form = Augmentation::Form::Scalar;
            eps.scalar.assign(d.gen_count(), 0);
            for (uint32_t u = 0; u < unknown_ids.size(); ++u)
                eps.scalar[unknown_ids[u]] = bits[u];
        } else {
            eps.form = Augmentation::Form::Ke;
            eps.ke.assign(d.gen_count(), KeElement::zero());
            for (uint32_t u = 0; u < unknown_ids.size(); ++u)
                if (bits[u])
                    eps.ke[unknown_ids[u]] =
                        KeElement::pure(d.gen(unknown_ids[u]).left, d.gen(unknown_ids[u]).right);
        }
        found.push_back(std::move(eps));
    };

    // the DFS below a fixed assignment prefix; results come out in
    // lexicographic order, bit 0 first
    auto search_from = [&](std::vector<uint8_t> bits, uint32_t start) {
        std::vector<Augmentation> found;
        for (uint32_t level = 0; level <= start; ++level)
            for (uint32_t ci : due[level])
                if (eval_constraint(constraints[ci], bits))
                    return found;
        auto rec = [&](auto&& self, uint32_t level) -> void {
            if (level > start)
                for (uint32_t ci : due[level])
                    if (eval_constraint(constraints[ci], bits))
                        return; // prune
            if (level == unknown_ids.size()) {
                emit(bits, found);
                return;
            }
            for (uint8_t b : {0, 1}) {
                bits[level] = b;
                self(self, level + 1);
            }
            bits[level] = 0;
        };
        rec(rec, start);
        return found;
    };

    uint32_t n = static_cast<uint32_t>(unknown_ids.size());
    if (jobs <= 1 || n < 2)
        return search_from(std::vector<uint8_t>(n, 0), 0);

    uint32_t prefix_len = 1;
    while ((1u << prefix_len) < jobs && prefix_len + 1 < n && prefix_len < 4)
        ++prefix_len;
    std::vector<std::future<std::vector<Augmentation>>> futs;
    for (uint32_t p = 0; p < (1u << prefix_len); ++p) {
        std::vector<uint8_t> bits(n, 0);
        for (uint32_t i = 0; i < prefix_len; ++i)
            bits[i] = (p >> (prefix_len - 1 - i)) & 1;
        futs.push_back(std::async(std::launch::async,
                                  [&, bits] { return search_from(bits, prefix_len); }));
    }
    std::vector<Augmentation> found;
    for (auto& f : futs)
        for (auto& eps : f.get())
            found.push_back(std::move(eps));
    return found;
}

Augmentation lift_to_ke(const Augmentation& eps, const Dga& slashed, const Dga& unslashed)
{
    if (eps.form != Augmentation::Form::Scalar)
        throw error("lift_to_ke: expected a scalar augmentation");
    if (!slashed.slashed)
        throw error("lift_to_ke: source algebra is not slashed");
    if (slashed.gen_count() != unslashed.gen_count())
        throw error("lift_to_ke: generator sets differ");
    for (uint32_t g = 0; g < slashed.gen_count(); ++g)
        if (slashed.gen(g).name != unslashed.gen(g).name)
            throw error("lift_to_ke: generator sets differ at " + slashed.gen(g).name);
    Augmentation out;
    out.form = Augmentation::Form::Ke;
    out.ke.assign(unslashed.gen_count(), KeElement::zero());
    for (uint32_t g = 0; g < unslashed.gen_count(); ++g)
        if (eps.scalar.at(g))
            out.ke[g] = KeElement::pure(unslashed.gen(g).left, unslashed.gen(g).right);
    return out;
}

} // namespace cedga
