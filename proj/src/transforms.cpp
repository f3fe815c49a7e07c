#include "cedga/transforms.hpp"

#include <algorithm>
#include <set>

namespace cedga {

/******** names ********/

std::string copy_label(const std::string& base, uint32_t i)
{
    return base + "@" + std::to_string(i);
}

std::string copy_gen_name(const std::string& base, uint32_t i, uint32_t j)
{
    return base + "@" + std::to_string(i) + "." + std::to_string(j);
}

std::string e_gen_name(const std::string& idempotent)
{
    return "e@" + idempotent;
}

std::optional<DerivedName> parse_copy_name(const std::string& name)
{
    auto at = name.rfind('@');
    if (at == std::string::npos || at + 1 >= name.size())
        return std::nullopt;
    std::string suffix = name.substr(at + 1);
    auto dot = suffix.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= suffix.size())
        return std::nullopt;
    for (char c : suffix)
        if (!isdigit(static_cast<unsigned char>(c)) && c != '.')
            return std::nullopt;
    DerivedName dn;
    dn.base = name.substr(0, at);
    dn.i = static_cast<uint32_t>(std::stoul(suffix.substr(0, dot)));
    dn.j = static_cast<uint32_t>(std::stoul(suffix.substr(dot + 1)));
    return dn;
}

/******** CopyMap ********/

uint32_t CopyMap::count(const std::string& base) const
{
    auto it = counts.find(base);
    if (it == counts.end())
        throw error("copy map has no count for idempotent " + base);
    return it->second;
}

int64_t CopyMap::potential(const std::string& base, uint32_t i) const
{
    auto it = potentials.find(base);
    if (it == potentials.end())
        return 0;
    if (i == 0 || i > it->second.size())
        throw error("copy index out of range for potentials of " + base);
    return it->second[i - 1];
}

CopyMap CopyMap::uniform(const Dga& base, uint32_t k)
{
    CopyMap cm;
    for (const auto& s : base.ring.labels)
        cm.counts[s] = k;
    return cm;
}

/******** DgaMorphism ********/

Element DgaMorphism::apply(const Word& w) const
{
    if (w.empty()) {
        if (w.unit < 0)
            return Element::single(w);
        // i^*(s) = sum of the copies of s (a non-unital map)
        const std::string& base = source.ring.labels.at(static_cast<uint32_t>(w.unit));
        Element out;
        for (uint32_t c = 0; c < target.ring.size(); ++c) {
            if (target.ordering) {
                if (target.ordering->base_labels.at(c) == base)
                    out = add(out, Element::single(Word::unit_at(static_cast<int32_t>(c))));
            } else if (target.ring.labels[c] == base) {
                out = add(out, Element::single(Word::unit_at(static_cast<int32_t>(c))));
            }
        }
        return out;
    }
    Element acc = images.at(w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i)
        acc = multiply(acc, images.at(w.letters[i]), target);
    return acc;
}

Element DgaMorphism::apply(const Element& e) const
{
    Element out;
    for (const Word& w : e.words)
        out = add(out, apply(w));
    return out;
}

bool DgaMorphism::is_chain_map(std::string* witness) const
{
    for (uint32_t id = 0; id < source.gen_count(); ++id) {
        Element lhs = differentiate(images.at(id), target);
        Element rhs = apply(source.differential.at(id));
        if (!(lhs == rhs)) {
            if (witness)
                *witness = source.gen(id).name;
            return false;
        }
    }
    return true;
}

/******** small helpers ********/

namespace {

void require_d_squared_zero(const Dga& d, const char* who)
{
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        Element sq = differentiate(d.differential[id], d);
        if (!sq.is_zero())
            throw error(std::string(who) + ": d^2 != 0 on " + d.gen(id).name + ": " +
                        element_to_string(sq, d));
    }
}

// Rebuild a Dga keeping only the generators not listed in `dead`; words of
// any differential touching a dead generator are dropped.
Dga drop_generators(const Dga& d, const std::set<uint32_t>& dead)
{
    Dga out;
    out.ring = d.ring;
    out.grading = d.grading;
    out.slashed = d.slashed;
    out.actions_in_use = d.actions_in_use;
    out.ordering = d.ordering;
    std::vector<int64_t> remap(d.gen_count(), -1);
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        if (dead.count(id))
            continue;
        remap[id] = static_cast<int64_t>(out.generators.size());
        out.generators.push_back(d.gen(id));
    }
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        if (dead.count(id))
            continue;
        std::vector<Word> kept;
        for (const Word& w : d.differential[id].words) {
            bool alive = true;
            for (uint32_t l : w.letters)
                if (remap[l] < 0) {
                    alive = false;
                    break;
                }
            if (!alive)
                continue;
            Word nw = w;
            for (auto& l : nw.letters)
                l = static_cast<uint32_t>(remap[l]);
            kept.push_back(std::move(nw));
        }
        out.differential.push_back(Element(std::move(kept)));
    }
    return out;
}

} // namespace

/******** morsification ********/

Dga morsify(const Dga& d)
{
    if (d.slashed)
        throw error("morsify: input must not be slashed");
    for (const auto& s : d.ring.labels)
        for (const auto& g : d.generators)
            if (g.name == e_gen_name(s))
                throw error("morsify: generator name clashes with reserved name " + g.name);

    Dga out;
    out.ring = d.ring;
    out.grading = d.grading;
    out.slashed = false;
    out.actions_in_use = false;
    out.ordering = d.ordering;
    out.generators = d.generators;
    for (auto& g : out.generators)
        g.action = Rational(0);

    std::vector<uint32_t> e_id(d.ring.size());
    for (uint32_t s = 0; s < d.ring.size(); ++s) {
        Generator e;
        e.name = e_gen_name(d.ring.labels[s]);
        e.degree = d.grading.normalize(-1);
        e.left = e.right = s;
        e.kind = GenKind::EUnit;
        e_id[s] = out.gen_count();
        out.generators.push_back(e);
    }

    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        const Generator& g = d.gen(id);
        Element dg = d.differential[id];
        dg = add(dg, Element::single(Word({e_id[g.left], id})));
        dg = add(dg, Element::single(Word({id, e_id[g.right]})));
        out.differential.push_back(dg);
    }
    for (uint32_t s = 0; s < d.ring.size(); ++s)
        out.differential.push_back(Element::single(Word({e_id[s], e_id[s]})));

    require_d_squared_zero(out, "morsify");
    return out;
}

/******** omission of idempotents ********/

Dga omit_idempotents(const Dga& d)
{
    Dga out = d;
    out.slashed = true;
    for (auto& e : out.differential) {
        std::vector<Word> ws;
        for (Word w : e.words) {
            if (w.empty())
                w.unit = Word::kUnitGlobal;
            ws.push_back(std::move(w));
        }
        e = Element(std::move(ws));
    }
    return out;
}

/******** expansion of idempotents ********/

Element expand_word_copies(const Dga& base, const Word& w, uint32_t i, uint32_t j,
                           const CopyMap& cm, const Dga& target)
{
    if (w.empty()) {
        if (w.unit < 0)
            throw error("cannot expand a global unit term");
        if (i != j)
            return Element::zero();
        uint32_t c = target.ring.index_of(copy_label(base.ring.labels.at(w.unit), i));
        return Element::single(Word::unit_at(static_cast<int32_t>(c)));
    }
    const Generator& g = base.gen(w.letters.front());
    if (w.letters.size() == 1)
        return Element::single(Word({target.gen_index(copy_gen_name(g.name, i, j))}));
    // branch over the copy index at the first junction, recurse on the tail
    uint32_t kmid = cm.count(base.ring.labels.at(g.right));
    Word rest(std::vector<uint32_t>(w.letters.begin() + 1, w.letters.end()));
    Element out;
    for (uint32_t h = 1; h <= kmid; ++h) {
        uint32_t id = target.gen_index(copy_gen_name(g.name, i, h));
        Element tails = expand_word_copies(base, rest, h, j, cm, target);
        for (const Word& t : tails.words) {
            Word full;
            full.letters.push_back(id);
            full.letters.insert(full.letters.end(), t.letters.begin(), t.letters.end());
            out = add(out, Element::single(full));
        }
    }
    return out;
}

std::pair<Dga, DgaMorphism> expand_idempotents(const Dga& d, const CopyMap& cm)
{
    if (d.slashed)
        throw error("expand_idempotents: input must not be slashed");
    for (const auto& s : d.ring.labels)
        if (cm.counts.find(s) == cm.counts.end())
            throw error("copy map ring mismatch: no count for " + s);

    Dga out;
    out.grading = d.grading;
    out.slashed = false;
    out.actions_in_use = false;

    CopyOrdering ord;
    std::vector<std::string> labels;
    for (const auto& s : d.ring.labels)
        for (uint32_t i = 1; i <= cm.count(s); ++i) {
            labels.push_back(copy_label(s, i));
            ord.base_labels.push_back(s);
            ord.index.push_back(i);
            ord.potential.push_back(cm.potential(s, i));
        }
    if (labels.empty())
        throw error("expansion produced an empty ring");
    out.ring = IdempotentRing(labels);
    out.ordering = ord;

    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        const Generator& g = d.gen(id);
        const std::string& sl = d.ring.labels[g.left];
        const std::string& sr = d.ring.labels[g.right];
        for (uint32_t i = 1; i <= cm.count(sl); ++i)
            for (uint32_t j = 1; j <= cm.count(sr); ++j) {
                Generator c;
                c.name = copy_gen_name(g.name, i, j);
                c.degree = d.grading.normalize(g.degree + cm.potential(sl, i) - cm.potential(sr, j));
                c.left = out.ring.index_of(copy_label(sl, i));
                c.right = out.ring.index_of(copy_label(sr, j));
                c.kind = (i == j) ? g.kind : (g.kind == GenKind::EUnit ? GenKind::Auxiliary : g.kind);
                out.generators.push_back(c);
            }
    }

    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        const Generator& g = d.gen(id);
        const std::string& sl = d.ring.labels[g.left];
        const std::string& sr = d.ring.labels[g.right];
        for (uint32_t i = 1; i <= cm.count(sl); ++i)
            for (uint32_t j = 1; j <= cm.count(sr); ++j) {
                Element e;
                for (const Word& w : d.differential[id].words)
                    e = add(e, expand_word_copies(d, w, i, j, cm, out));
                out.differential.push_back(e);
            }
    }

    DgaMorphism t;
    t.source = d;
    t.target = out;
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        const Generator& g = d.gen(id);
        const std::string& sl = d.ring.labels[g.left];
        const std::string& sr = d.ring.labels[g.right];
        Element img;
        for (uint32_t i = 1; i <= cm.count(sl); ++i)
            for (uint32_t j = 1; j <= cm.count(sr); ++j)
                img = add(img, Element::single(Word({out.gen_index(copy_gen_name(g.name, i, j))})));
        t.images.push_back(img);
    }

    require_d_squared_zero(out, "expand_idempotents");
    std::string bad;
    if (!t.is_chain_map(&bad))
        throw error("expand_idempotents: T fails to commute with differentials at " + bad);
    return {out, t};
}

/******** ordered quotient ********/

Dga ordered_quotient(const Dga& d)
{
    if (!d.ordering)
        throw error("ordered_quotient: missing ordering (input did not arise from an expansion)");
    std::set<uint32_t> dead;
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        auto dn = parse_copy_name(d.gen(id).name);
        if (dn && dn->base.rfind("e@", 0) == 0 && dn->i >= dn->j)
            dead.insert(id);
    }
    Dga out = drop_generators(d, dead);
    require_d_squared_zero(out, "ordered_quotient");
    return out;
}

/******** pair elimination ********/

Dga eliminate_pair(const Dga& d, const std::string& a, const std::string& b)
{
    uint32_t ia = d.gen_index(a);
    uint32_t ib = d.gen_index(b);
    Element expected = Element::single(Word({ib}));
    if (!(d.differential[ia] == expected)) {
        Element residual = add(d.differential[ia], expected);
        throw error("eliminate_pair: d(" + a + ") != " + b + ", residual " +
                    element_to_string(residual, d));
    }
    if (!d.differential[ib].is_zero())
        throw error("eliminate_pair: d(" + b + ") = " + element_to_string(d.differential[ib], d) +
                    " != 0");
    Dga out = drop_generators(d, {ia, ib});
    require_d_squared_zero(out, "eliminate_pair");
    return out;
}

/******** c/m tower elimination ********/

Dga eliminate_cm_tower(const Dga& d)
{
    struct Pair {
        std::string c, m;
        uint32_t delta;
    };
    std::vector<Pair> pairs;
    for (const auto& g : d.generators) {
        auto dn = parse_copy_name(g.name);
        if (!dn || dn->base.rfind("c@", 0) != 0)
            continue;
        if (dn->j <= dn->i)
            throw error("eliminate_cm_tower: unexpected c generator " + g.name);
        std::string m = "m" + g.name.substr(1);
        pairs.push_back({g.name, m, dn->j - dn->i});
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return x.delta != y.delta ? x.delta < y.delta : x.c < y.c;
    });
    Dga cur = d;
    for (const auto& p : pairs) {
        try {
            cur = eliminate_pair(cur, p.c, p.m);
        } catch (const error& e) {
            throw error("eliminate_cm_tower: round j-i=" + std::to_string(p.delta) + ": " + e.what());
        }
    }
    return cur;
}

/******** action truncation ********/

Dga truncate_by_action(const Dga& d, const Rational& q)
{
    if (!d.actions_in_use)
        throw error("truncate_by_action: input carries no actions");
    std::set<uint32_t> dead;
    for (uint32_t id = 0; id < d.gen_count(); ++id)
        if (d.gen(id).action > q)
            dead.insert(id);
    // closure is guaranteed by the action-decrease invariant: a surviving
    // generator's differential cannot mention a dropped one
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        if (dead.count(id))
            continue;
        for (const Word& w : d.differential[id].words)
            for (uint32_t l : w.letters)
                if (dead.count(l))
                    throw error("truncate_by_action: differential of " + d.gen(id).name +
                                " escapes the truncation (action data violates the filtration)");
    }
    return drop_generators(d, dead);
}

} // namespace cedga
