#include "cedga/surgery.hpp"

#include "cedga/rhom.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>

namespace cedga {

namespace {

void require_valid_base(const Dga& base)
{
    if (base.slashed)
        throw error("cap construction: base algebra must not be slashed");
}

void require_d_squared_zero(const Dga& d, const char* who)
{
    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        Element sq = differentiate(d.differential[id], d);
        if (!sq.is_zero())
            throw error(std::string(who) + ": d^2 != 0 on " + d.gen(id).name + ": " +
                        element_to_string(sq, d));
    }
}

// ring, ordering and the a@i.j / e@s@i.j generators common to the cap and
// model cap algebras
Dga cap_skeleton(const CapSpec& spec)
{
    require_valid_base(spec.base);
    const Dga& base = spec.base;
    const CopyMap& cm = spec.copies;

    Dga out;
    out.grading = base.grading;
    out.slashed = false;
    out.actions_in_use = false;

    CopyOrdering ord;
    std::vector<std::string> labels;
    for (const auto& s : base.ring.labels)
        for (uint32_t i = 1; i <= cm.count(s); ++i) {
            labels.push_back(copy_label(s, i));
            ord.base_labels.push_back(s);
            ord.index.push_back(i);
            ord.potential.push_back(cm.potential(s, i));
        }
    if (labels.empty())
        throw error("cap construction: no copies at all");
    out.ring = IdempotentRing(labels);
    out.ordering = ord;

    for (uint32_t id = 0; id < base.gen_count(); ++id) {
        const Generator& g = base.gen(id);
        const std::string& sl = base.ring.labels[g.left];
        const std::string& sr = base.ring.labels[g.right];
        for (uint32_t i = 1; i <= cm.count(sl); ++i)
            for (uint32_t j = 1; j <= cm.count(sr); ++j) {
                Generator c;
                c.name = copy_gen_name(g.name, i, j);
                c.degree =
                    base.grading.normalize(g.degree + cm.potential(sl, i) - cm.potential(sr, j));
                c.left = out.ring.index_of(copy_label(sl, i));
                c.right = out.ring.index_of(copy_label(sr, j));
                c.kind = (i == j) ? g.kind : (g.kind == GenKind::EUnit ? GenKind::Auxiliary : g.kind);
                out.generators.push_back(c);
            }
    }
    for (const auto& s : base.ring.labels)
        for (uint32_t i = 1; i <= cm.count(s); ++i)
            for (uint32_t j = i + 1; j <= cm.count(s); ++j) {
                Generator e;
                e.name = copy_gen_name(e_gen_name(s), i, j);
                e.degree = base.grading.normalize(cm.potential(s, i) - cm.potential(s, j) - 1);
                e.left = out.ring.index_of(copy_label(s, i));
                e.right = out.ring.index_of(copy_label(s, j));
                e.kind = GenKind::Auxiliary;
                out.generators.push_back(e);
            }
    return out;
}

Element cap_chord_differential(const CapSpec& spec, const Dga& out, uint32_t base_id, uint32_t i,
                               uint32_t j)
{
    const Dga& base = spec.base;
    const CopyMap& cm = spec.copies;
    const Generator& g = base.gen(base_id);
    const std::string& sl = base.ring.labels[g.left];
    const std::string& sr = base.ring.labels[g.right];
    Element e;
    for (const Word& w : base.differential[base_id].words)
        e = add(e, expand_word_copies(base, w, i, j, cm, out));
    for (uint32_t h = i + 1; h <= cm.count(sl); ++h)
        e = add(e, Element::single(Word({out.gen_index(copy_gen_name(e_gen_name(sl), i, h)),
                                         out.gen_index(copy_gen_name(g.name, h, j))})));
    for (uint32_t h = 1; h < j; ++h)
        e = add(e, Element::single(Word({out.gen_index(copy_gen_name(g.name, i, h)),
                                         out.gen_index(copy_gen_name(e_gen_name(sr), h, j))})));
    return e;
}

Element cap_e_differential(const Dga& out, const std::string& s, uint32_t i, uint32_t j)
{
    Element e;
    for (uint32_t h = i + 1; h < j; ++h)
        e = add(e, Element::single(Word({out.gen_index(copy_gen_name(e_gen_name(s), i, h)),
                                         out.gen_index(copy_gen_name(e_gen_name(s), h, j))})));
    return e;
}

} // namespace

Element subscript_expand(const Dga& base, const Word& w, uint32_t i, uint32_t j, const CopyMap& cm,
                         const Dga& target)
{
    uint32_t kl = cm.count(base.ring.labels.at(base.word_left(w)));
    uint32_t kr = cm.count(base.ring.labels.at(base.word_right(w)));
    if (i == 0 || i > kl || j == 0 || j > kr)
        throw error("subscript_expand: copy index out of range");
    if (!base.word_composable(w))
        throw error("subscript_expand: word is not composable");
    return expand_word_copies(base, w, i, j, cm, target);
}

Dga build_cap_algebra(const CapSpec& spec)
{
    Dga out = cap_skeleton(spec);
    const Dga& base = spec.base;
    const CopyMap& cm = spec.copies;
    out.differential.resize(out.gen_count());
    for (uint32_t id = 0; id < base.gen_count(); ++id) {
        const Generator& g = base.gen(id);
        const std::string& sl = base.ring.labels[g.left];
        const std::string& sr = base.ring.labels[g.right];
        for (uint32_t i = 1; i <= cm.count(sl); ++i)
            for (uint32_t j = 1; j <= cm.count(sr); ++j)
                out.differential[out.gen_index(copy_gen_name(g.name, i, j))] =
                    cap_chord_differential(spec, out, id, i, j);
    }
    for (const auto& s : base.ring.labels)
        for (uint32_t i = 1; i <= cm.count(s); ++i)
            for (uint32_t j = i + 1; j <= cm.count(s); ++j)
                out.differential[out.gen_index(copy_gen_name(e_gen_name(s), i, j))] =
                    cap_e_differential(out, s, i, j);
    require_d_squared_zero(out, "build_cap_algebra");
    return out;
}

Dga build_model_cap(const CapSpec& spec, int64_t dim_l)
{
    Dga out = cap_skeleton(spec);
    const Dga& base = spec.base;
    const CopyMap& cm = spec.copies;

    // double points c@s@i.j and the short maximum chords m@s@i.j
    for (const auto& s : base.ring.labels)
        for (uint32_t i = 1; i <= cm.count(s); ++i)
            for (uint32_t j = i + 1; j <= cm.count(s); ++j) {
                Generator c;
                c.name = copy_gen_name("c@" + s, i, j);
                c.degree =
                    base.grading.normalize(cm.potential(s, i) - cm.potential(s, j) + dim_l - 1);
                c.left = out.ring.index_of(copy_label(s, i));
                c.right = out.ring.index_of(copy_label(s, j));
                c.kind = GenKind::DoublePoint;
                out.generators.push_back(c);
                Generator m = c;
                m.name = copy_gen_name("m@" + s, i, j);
                m.degree =
                    base.grading.normalize(cm.potential(s, i) - cm.potential(s, j) + dim_l - 2);
                m.kind = GenKind::Chord;
                out.generators.push_back(m);
            }

    out.differential.resize(out.gen_count());
    for (uint32_t id = 0; id < base.gen_count(); ++id) {
        const Generator& g = base.gen(id);
        const std::string& sl = base.ring.labels[g.left];
        const std::string& sr = base.ring.labels[g.right];
        for (uint32_t i = 1; i <= cm.count(sl); ++i)
            for (uint32_t j = 1; j <= cm.count(sr); ++j)
                out.differential[out.gen_index(copy_gen_name(g.name, i, j))] =
                    cap_chord_differential(spec, out, id, i, j);
    }
    for (const auto& s : base.ring.labels)
        for (uint32_t i = 1; i <= cm.count(s); ++i)
            for (uint32_t j = i + 1; j <= cm.count(s); ++j) {
                out.differential[out.gen_index(copy_gen_name(e_gen_name(s), i, j))] =
                    cap_e_differential(out, s, i, j);
                // dc = m + sum(c e + e c), dm = sum(m e + e m)
                Element dc = Element::single(Word({out.gen_index(copy_gen_name("m@" + s, i, j))}));
                Element dm;
                for (uint32_t h = i + 1; h < j; ++h) {
                    uint32_t e_ih = out.gen_index(copy_gen_name(e_gen_name(s), i, h));
                    uint32_t e_hj = out.gen_index(copy_gen_name(e_gen_name(s), h, j));
                    dc = add(dc, Element::single(Word({out.gen_index(copy_gen_name("c@" + s, i, h)), e_hj})));
                    dc = add(dc, Element::single(Word({e_ih, out.gen_index(copy_gen_name("c@" + s, h, j))})));
                    dm = add(dm, Element::single(Word({out.gen_index(copy_gen_name("m@" + s, i, h)), e_hj})));
                    dm = add(dm, Element::single(Word({e_ih, out.gen_index(copy_gen_name("m@" + s, h, j))})));
                }
                out.differential[out.gen_index(copy_gen_name("c@" + s, i, j))] = dc;
                out.differential[out.gen_index(copy_gen_name("m@" + s, i, j))] = dm;
            }
    require_d_squared_zero(out, "build_model_cap");
    return out;
}

/******** Cthulhu bimodule ********/

CthElement::CthElement(std::vector<CthWord> ts)
{
    std::sort(ts.begin(), ts.end());
    for (size_t i = 0; i < ts.size();) {
        size_t j = i;
        while (j < ts.size() && ts[j] == ts[i])
            ++j;
        if ((j - i) % 2 == 1)
            terms.push_back(ts[i]);
        i = j;
    }
}

CthElement cth_add(const CthElement& a, const CthElement& b)
{
    CthElement out;
    std::set_symmetric_difference(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
                                  std::back_inserter(out.terms));
    return out;
}

uint32_t CthulhuBimodule::gen_index(const std::string& name) const
{
    for (uint32_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name)
            return i;
    throw error("unknown Cthulhu generator: " + name);
}

namespace {

std::string hat_e_name(const std::string& s, uint32_t i, uint32_t j)
{
    return copy_gen_name("e^@" + s, i, j);
}

std::string hat_chord_name(const std::string& a, uint32_t i, uint32_t j)
{
    return copy_gen_name(a + "^", i, j);
}

// endpoints of a hatted generator: a copy idempotent in cap1 on the left and
// one in cap0 on the right
uint32_t hat_left_idem(const CthulhuBimodule& b, const CthGenerator& g)
{
    const Dga& base = b.spec1.base;
    const std::string& s = g.is_e ? g.base : base.ring.labels[base.gen(base.gen_index(g.base)).left];
    return b.cap1.ring.index_of(copy_label(s, g.i));
}

uint32_t hat_right_idem(const CthulhuBimodule& b, const CthGenerator& g)
{
    const Dga& base = b.spec0.base;
    const std::string& s = g.is_e ? g.base : base.ring.labels[base.gen(base.gen_index(g.base)).right];
    return b.cap0.ring.index_of(copy_label(s, g.j));
}

CthWord hat_only(const CthulhuBimodule& b, uint32_t hat)
{
    CthWord w;
    w.hat = hat;
    w.left = Word::unit_at(static_cast<int32_t>(hat_left_idem(b, b.generators[hat])));
    w.right = Word::unit_at(static_cast<int32_t>(hat_right_idem(b, b.generators[hat])));
    return w;
}

CthElement mul_left(const CthulhuBimodule& b, const Element& a, const CthElement& t)
{
    std::vector<CthWord> ts;
    for (const Word& u : a.words)
        for (const CthWord& x : t.terms) {
            Element prod = multiply(Element::single(u), Element::single(x.left), b.cap1);
            for (const Word& w : prod.words)
                ts.push_back({w, x.hat, x.right});
        }
    return CthElement(std::move(ts));
}

CthElement mul_right(const CthulhuBimodule& b, const CthElement& t, const Element& a)
{
    std::vector<CthWord> ts;
    for (const CthWord& x : t.terms)
        for (const Word& v : a.words) {
            Element prod = multiply(Element::single(x.right), Element::single(v), b.cap0);
            for (const Word& w : prod.words)
                ts.push_back({x.left, x.hat, w});
        }
    return CthElement(std::move(ts));
}

} // namespace

CthElement hat_subscript_expand(const Dga& base, const Word& w, uint32_t i, uint32_t j,
                                const CthulhuBimodule& b)
{
    if (w.empty())
        return {}; // no hat position
    const Generator& g = base.gen(w.letters.front());
    const std::string gname = g.name;
    std::vector<CthWord> out;
    // hat on the first letter: the tail is expanded with cap0 subscripts
    uint32_t k0r = b.spec0.copies.count(base.ring.labels[g.right]);
    if (w.letters.size() == 1) {
        CthWord t = hat_only(b, b.gen_index(hat_chord_name(gname, i, j)));
        out.push_back(t);
    } else {
        Word rest(std::vector<uint32_t>(w.letters.begin() + 1, w.letters.end()));
        for (uint32_t h = 1; h <= k0r; ++h) {
            CthWord t = hat_only(b, b.gen_index(hat_chord_name(gname, i, h)));
            Element tails = expand_word_copies(base, rest, h, j, b.spec0.copies, b.cap0);
            for (const Word& tail : tails.words)
                out.push_back({t.left, t.hat, tail});
        }
        // hat strictly after the first letter: the first letter carries cap1
        // subscripts and we recurse on the tail
        uint32_t k1r = b.spec1.copies.count(base.ring.labels[g.right]);
        for (uint32_t h = 1; h <= k1r; ++h) {
            uint32_t head = b.cap1.gen_index(copy_gen_name(gname, i, h));
            CthElement tails = hat_subscript_expand(base, rest, h, j, b);
            for (const CthWord& t : tails.terms) {
                Word left({head});
                left.letters.insert(left.letters.end(), t.left.letters.begin(), t.left.letters.end());
                out.push_back({left, t.hat, t.right});
            }
        }
    }
    return CthElement(std::move(out));
}

CthElement CthulhuBimodule::d_of(const CthElement& e) const
{
    CthElement out;
    for (const CthWord& t : e.terms) {
        for (const Word& u : differentiate(Element::single(t.left), cap1).words)
            out = cth_add(out, CthElement({{u, t.hat, t.right}}));
        CthElement mid = differential.at(t.hat);
        mid = mul_left(*this, Element::single(t.left), mid);
        mid = mul_right(*this, mid, Element::single(t.right));
        out = cth_add(out, mid);
        for (const Word& v : differentiate(Element::single(t.right), cap0).words)
            out = cth_add(out, CthElement({{t.left, t.hat, v}}));
    }
    return out;
}

CthulhuBimodule build_cthulhu_bimodule(const CapSpec& cap1, const CapSpec& cap0, CthulhuRanges ranges)
{
    if (!same_dga(cap1.base, cap0.base))
        throw error("build_cthulhu_bimodule: cap algebras must share the base algebra");
    CthulhuBimodule b;
    b.spec1 = cap1;
    b.spec0 = cap0;
    b.cap1 = build_cap_algebra(cap1);
    b.cap0 = build_cap_algebra(cap0);
    b.ranges = ranges;
    const Dga& base = cap1.base;

    for (const auto& s : base.ring.labels) {
        uint32_t k1 = cap1.copies.count(s);
        uint32_t k0 = cap0.copies.count(s);
        for (uint32_t i = 1; i <= k1; ++i)
            for (uint32_t j = 1; j <= k0; ++j) {
                CthGenerator g;
                g.name = hat_e_name(s, i, j);
                g.base = s;
                g.is_e = true;
                g.i = i;
                g.j = j;
                g.degree = base.grading.normalize(cap1.copies.potential(s, i) -
                                                  cap0.copies.potential(s, j) - 1);
                b.generators.push_back(g);
            }
    }
    for (uint32_t id = 0; id < base.gen_count(); ++id) {
        const Generator& a = base.gen(id);
        const std::string& sl = base.ring.labels[a.left];
        const std::string& sr = base.ring.labels[a.right];
        for (uint32_t i = 1; i <= cap1.copies.count(sl); ++i)
            for (uint32_t j = 1; j <= cap0.copies.count(sr); ++j) {
                CthGenerator g;
                g.name = hat_chord_name(a.name, i, j);
                g.base = a.name;
                g.is_e = false;
                g.i = i;
                g.j = j;
                g.degree = base.grading.normalize(a.degree + cap1.copies.potential(sl, i) -
                                                  cap0.copies.potential(sr, j));
                b.generators.push_back(g);
            }
    }

    auto cap1_e = [&](const std::string& s, uint32_t i, uint32_t h) {
        return b.cap1.gen_index(copy_gen_name(e_gen_name(s), i, h));
    };
    auto cap0_e = [&](const std::string& s, uint32_t h, uint32_t j) {
        return b.cap0.gen_index(copy_gen_name(e_gen_name(s), h, j));
    };

    bool truncated = (ranges == CthulhuRanges::Truncated);
    for (const CthGenerator& g : b.generators) {
        CthElement e;
        if (g.is_e) {
            const std::string& s = g.base;
            uint32_t k1 = cap1.copies.count(s);
            uint32_t left_hi = truncated ? (k1 ? k1 - 1 : 0) : k1;
            for (uint32_t h = g.i + 1; h <= left_hi; ++h) {
                CthWord t = hat_only(b, b.gen_index(hat_e_name(s, h, g.j)));
                t.left = Word({cap1_e(s, g.i, h)});
                e = cth_add(e, CthElement({t}));
            }
            for (uint32_t h = 1; h < g.j; ++h) { // h = j term is killed in the quotient
                CthWord t = hat_only(b, b.gen_index(hat_e_name(s, g.i, h)));
                t.right = Word({cap0_e(s, h, g.j)});
                e = cth_add(e, CthElement({t}));
            }
        } else {
            uint32_t id = base.gen_index(g.base);
            const Generator& a = base.gen(id);
            const std::string& sl = base.ring.labels[a.left];
            const std::string& sr = base.ring.labels[a.right];
            uint32_t k1s = cap1.copies.count(sl);
            uint32_t k1e = cap1.copies.count(sr);
            uint32_t k0s = cap0.copies.count(sl);
            uint32_t k0e = cap0.copies.count(sr);

            for (const Word& w : base.differential[id].words)
                e = cth_add(e, hat_subscript_expand(base, w, g.i, g.j, b));

            // e^ a0 terms
            {
                uint32_t lo = truncated ? 2 : 1;
                uint32_t hi = truncated ? (k1s ? std::min(k0s, k1s - 1) : 0) : k0s;
                for (uint32_t h = lo; h <= hi; ++h) {
                    CthWord t = hat_only(b, b.gen_index(hat_e_name(sl, g.i, h)));
                    t.right = Word({b.cap0.gen_index(copy_gen_name(g.base, h, g.j))});
                    e = cth_add(e, CthElement({t}));
                }
            }
            // e1 a^ terms
            {
                uint32_t hi = truncated ? (k1s ? k1s - 1 : 0) : k1s;
                for (uint32_t h = g.i + 1; h <= hi; ++h) {
                    CthWord t = hat_only(b, b.gen_index(hat_chord_name(g.base, h, g.j)));
                    t.left = Word({cap1_e(sl, g.i, h)});
                    e = cth_add(e, CthElement({t}));
                }
            }
            // a^ e0 terms
            {
                uint32_t lo = truncated ? 2 : 1;
                uint32_t hi = truncated ? (k0e ? std::min(g.j - 1, k0e - 1) : 0) : g.j - 1;
                for (uint32_t h = lo; g.j >= 1 && h <= hi; ++h) {
                    CthWord t = hat_only(b, b.gen_index(hat_chord_name(g.base, g.i, h)));
                    t.right = Word({cap0_e(sr, h, g.j)});
                    e = cth_add(e, CthElement({t}));
                }
            }
            // a1 e^ terms
            {
                uint32_t hi = truncated ? std::min(g.j, k1e) : k1e;
                for (uint32_t h = 1; h <= hi; ++h) {
                    CthWord t = hat_only(b, b.gen_index(hat_e_name(sr, h, g.j)));
                    t.left = Word({b.cap1.gen_index(copy_gen_name(g.base, g.i, h))});
                    e = cth_add(e, CthElement({t}));
                }
            }
        }
        b.differential.push_back(e);
    }

    // degree -1 check on the table
    for (uint32_t i = 0; i < b.gen_count(); ++i)
        for (const CthWord& t : b.differential[i].terms) {
            int64_t deg = b.cap1.word_degree(t.left) + b.generators[t.hat].degree +
                          b.cap0.word_degree(t.right);
            if (!base.grading.same_degree(deg, b.generators[i].degree - 1))
                throw error("build_cthulhu_bimodule: differential term of wrong degree on " +
                            b.generators[i].name);
        }

    // d^2 = 0, evaluated through the bimodule multiplication
    b.d_squared_ok = true;
    for (uint32_t i = 0; i < b.gen_count(); ++i) {
        CthElement sq = b.d_of(b.differential[i]);
        if (!sq.is_zero()) {
            b.d_squared_ok = false;
            b.d_squared_witness = b.generators[i].name;
            if (ranges == CthulhuRanges::Derived)
                throw error("build_cthulhu_bimodule: d^2 != 0 on " + b.generators[i].name);
            break;
        }
    }
    return b;
}

/******** the Cthulhu complex with representations ********/

namespace {

bool modules_match(const DgModule& v, const Dga& cap)
{
    if (v.over.gen_count() != cap.gen_count())
        return false;
    for (uint32_t g = 0; g < cap.gen_count(); ++g)
        if (v.over.gen(g).name != cap.gen(g).name)
            return false;
    return true;
}

} // namespace

ChainComplex cthulhu_complex(const CthulhuBimodule& b, const DgModule& v0, const DgModule& v1)
{
    if (!modules_match(v0, b.cap0) || !modules_match(v1, b.cap1))
        throw error("cthulhu_complex: modules do not match the cap algebras");
    v0.validate();
    v1.validate();

    struct Key {
        uint32_t g, p, q;
        auto operator<=>(const Key&) const = default;
    };
    std::vector<Key> list;
    std::map<Key, uint32_t> index;
    for (uint32_t g = 0; g < b.gen_count(); ++g)
        for (uint32_t p = 0; p < v0.dim(); ++p) {
            if (!v0.over.slashed && v0.basis[p].idempotent != hat_right_idem(b, b.generators[g]))
                continue;
            for (uint32_t q = 0; q < v1.dim(); ++q) {
                if (!v1.over.slashed && v1.basis[q].idempotent != hat_left_idem(b, b.generators[g]))
                    continue;
                index[{g, p, q}] = static_cast<uint32_t>(list.size());
                list.push_back({g, p, q});
            }
        }

    Gf2Matrix dm(static_cast<uint32_t>(list.size()), static_cast<uint32_t>(list.size()));
    auto toggle = [&](uint32_t g, uint32_t p, uint32_t q, uint32_t col) {
        auto it = index.find({g, p, q});
        if (it != index.end())
            dm.set(it->second, col);
    };
    for (uint32_t col = 0; col < list.size(); ++col) {
        auto [h, p, q] = list[col];
        // phi(d g (x) v) over every bimodule generator g
        for (uint32_t g = 0; g < b.gen_count(); ++g)
            for (const CthWord& t : b.differential[g].terms) {
                if (t.hat != h)
                    continue;
                Gf2Matrix m0 = v0.act_word(t.right);
                Gf2Matrix m1 = v1.act_word(t.left);
                for (uint32_t j = 0; j < v0.dim(); ++j) {
                    if (!m0.get(p, j))
                        continue;
                    for (uint32_t i = 0; i < v1.dim(); ++i)
                        if (m1.get(i, q))
                            toggle(g, j, i, col);
                }
            }
        // module differentials
        for (uint32_t j = 0; j < v0.dim(); ++j)
            if (v0.d.get(p, j))
                toggle(h, j, q, col);
        for (uint32_t i = 0; i < v1.dim(); ++i)
            if (v1.d.get(i, q))
                toggle(h, p, i, col);
    }

    ChainComplex c;
    c.grading = b.spec1.base.grading;
    for (const auto& [g, p, q] : list)
        c.basis.push_back(
            {"(" + b.generators[g].name + "; " + v0.basis[p].label + "; " + v1.basis[q].label + ")",
             c.grading.normalize(v1.basis[q].degree - v0.basis[p].degree - b.generators[g].degree -
                                 1)});
    c.d = std::move(dm);
    c.validate();
    return c;
}

/******** augmentation -> module ********/

DgModule augmentation_module(const Dga& omitted_cap, const Augmentation& eps)
{
    if (!omitted_cap.slashed)
        throw error("augmentation_module: expected the omitted cap algebra");
    if (eps.form != Augmentation::Form::Scalar)
        throw error("augmentation_module: expected a scalar augmentation");
    std::string why;
    if (!augmentation_valid(omitted_cap, eps, false, &why))
        throw error("augmentation_module: invalid augmentation: " + why);
    DgModule f;
    f.over = omitted_cap;
    f.basis.push_back({"1", 0, 0});
    f.d = Gf2Matrix(1, 1);
    for (uint32_t g = 0; g < omitted_cap.gen_count(); ++g) {
        Gf2Matrix m(1, 1);
        if (eps.scalar.at(g))
            m.set(0, 0);
        f.act.push_back(std::move(m));
    }
    f.validate();
    return f;
}

DgModule module_from_cap_augmentation(const Dga& a_s, const CapSpec& cap, const Augmentation& eps,
                                      int64_t shift)
{
    if (!same_dga(a_s, cap.base))
        throw error("module_from_cap_augmentation: cap is not over the given algebra");
    Dga cap_alg = build_cap_algebra(cap);
    Dga omitted = omit_idempotents(cap_alg);

    std::vector<uint8_t> bits(cap_alg.gen_count(), 0);
    if (eps.form == Augmentation::Form::Scalar) {
        std::string why;
        if (!augmentation_valid(omitted, eps, false, &why))
            throw error("module_from_cap_augmentation: invalid augmentation: " + why);
        bits = eps.scalar;
    } else {
        std::string why;
        if (!augmentation_valid(cap_alg, eps, false, &why))
            throw error("module_from_cap_augmentation: invalid augmentation: " + why);
        for (uint32_t g = 0; g < cap_alg.gen_count(); ++g)
            bits[g] = eps.ke.at(g).is_zero() ? 0 : 1;
    }

    DgModule v;
    v.over = a_s;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> row; // (base idem, copy) -> basis index
    for (uint32_t s = 0; s < a_s.ring.size(); ++s) {
        const std::string& label = a_s.ring.labels[s];
        for (uint32_t i = 1; i <= cap.copies.count(label); ++i) {
            row[{s, i}] = v.dim();
            // potentials enter negated so that d has degree -1
            v.basis.push_back({copy_label(label, i), s,
                               a_s.grading.normalize(shift - cap.copies.potential(label, i))});
        }
    }
    uint32_t n = v.dim();
    v.d = Gf2Matrix(n, n);
    for (uint32_t s = 0; s < a_s.ring.size(); ++s) {
        const std::string& label = a_s.ring.labels[s];
        for (uint32_t i = 1; i <= cap.copies.count(label); ++i)
            for (uint32_t j = i + 1; j <= cap.copies.count(label); ++j)
                if (bits[cap_alg.gen_index(copy_gen_name(e_gen_name(label), i, j))])
                    v.d.set(row.at({s, i}), row.at({s, j}));
    }
    for (uint32_t g = 0; g < a_s.gen_count(); ++g) {
        const Generator& x = a_s.gen(g);
        const std::string& sl = a_s.ring.labels[x.left];
        const std::string& sr = a_s.ring.labels[x.right];
        Gf2Matrix m(n, n);
        for (uint32_t i = 1; i <= cap.copies.count(sl); ++i)
            for (uint32_t j = 1; j <= cap.copies.count(sr); ++j)
                if (bits[cap_alg.gen_index(copy_gen_name(x.name, i, j))])
                    m.set(row.at({x.left, i}), row.at({x.right, j}));
        v.act.push_back(std::move(m));
    }
    v.validate();
    return v;
}

/******** the end-to-end comparison ********/

std::string PipelineReport::to_string() const
{
    std::ostringstream os;
    os << "Cthulhu Betti: " << cthulhu.to_string() << "\nRHom Betti:    " << rhom.to_string();
    if (pass)
        os << "\nPASS (global shift " << shift << ")";
    else
        os << "\nFAIL (no global shift matches)";
    return os.str();
}

PipelineReport pipeline_compare(const Dga& a_s, const CapSpec& cap0, const CapSpec& cap1,
                                const Augmentation& eps0, const Augmentation& eps1)
{
    CthulhuBimodule b = build_cthulhu_bimodule(cap1, cap0);
    DgModule f0 = augmentation_module(omit_idempotents(b.cap0), eps0);
    DgModule f1 = augmentation_module(omit_idempotents(b.cap1), eps1);
    PipelineReport rep;
    rep.cthulhu = betti(cthulhu_complex(b, f0, f1));

    DgModule v0 = module_from_cap_augmentation(a_s, cap0, eps0);
    DgModule v1 = module_from_cap_augmentation(a_s, cap1, eps1);
    rep.rhom = betti(rhom_complex(a_s, v0, v1));

    rep.pass = equal_up_to_shift(rep.cthulhu, rep.rhom, a_s.grading, &rep.shift);
    return rep;
}

} // namespace cedga
