#include "cedga/dga.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <set>
#include <future>
#include <sstream>

namespace cedga {

/******** Grading ********/

GradingSpec GradingSpec::zmod(int64_t n)
{
    if (n < 1)
        throw error("Zmod grading needs modulus >= 1");
    GradingSpec g;
    g.kind = Kind::Zmod;
    g.modulus = n;
    return g;
}

int64_t GradingSpec::normalize(int64_t d) const
{
    if (kind == Kind::Z)
        return d;
    int64_t r = d % modulus;
    return r < 0 ? r + modulus : r;
}

/******** Ring and k^e ********/

IdempotentRing::IdempotentRing(std::vector<std::string> l) : labels(std::move(l))
{
    if (labels.empty())
        throw error("idempotent ring needs at least one label");
    std::set<std::string> seen;
    for (const auto& s : labels)
        if (!seen.insert(s).second)
            throw error("duplicate idempotent label: " + s);
}

uint32_t IdempotentRing::index_of(const std::string& label) const
{
    for (uint32_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return i;
    throw error("unknown idempotent: " + label);
}

KeElement ke_add(const KeElement& a, const KeElement& b)
{
    KeElement out;
    std::set_symmetric_difference(a.pairs.begin(), a.pairs.end(), b.pairs.begin(), b.pairs.end(),
                                  std::back_inserter(out.pairs));
    return out;
}

KeElement star(const KeElement& f, const KeElement& g)
{
    KeElement out;
    for (const auto& [s, s1] : f.pairs)
        for (const auto& [t, t1] : g.pairs)
            if (s1 == t) // lambda(s't) = 1 iff s' = t
                out = ke_add(out, KeElement::pure(s, t1));
    return out;
}

KeElement ke_scale_left(uint32_t s, const KeElement& f)
{
    KeElement out;
    for (const auto& p : f.pairs)
        if (p.first == s)
            out.pairs.push_back(p);
    return out;
}

KeElement ke_scale_right(const KeElement& f, uint32_t s)
{
    KeElement out;
    for (const auto& p : f.pairs)
        if (p.second == s)
            out.pairs.push_back(p);
    return out;
}

/******** Generators / words / elements ********/

std::string to_string(GenKind k)
{
    switch (k) {
    case GenKind::Chord: return "chord";
    case GenKind::DoublePoint: return "double-point";
    case GenKind::EUnit: return "e-unit";
    case GenKind::Auxiliary: return "auxiliary";
    }
    return "chord";
}

GenKind gen_kind_from_string(const std::string& s)
{
    if (s == "chord") return GenKind::Chord;
    if (s == "double-point") return GenKind::DoublePoint;
    if (s == "e-unit") return GenKind::EUnit;
    if (s == "auxiliary") return GenKind::Auxiliary;
    throw error("unknown generator kind: " + s);
}

Element::Element(std::vector<Word> ws) : words(std::move(ws))
{
    std::sort(words.begin(), words.end());
    // mod 2: repeated words cancel in pairs
    std::vector<Word> out;
    for (size_t i = 0; i < words.size();) {
        size_t j = i;
        while (j < words.size() && words[j] == words[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.push_back(words[i]);
        i = j;
    }
    words = std::move(out);
}

Element add(const Element& a, const Element& b)
{
    Element out;
    std::set_symmetric_difference(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                                  std::back_inserter(out.words));
    return out;
}

/******** Dga basics ********/

uint32_t Dga::gen_index(const std::string& name) const
{
    for (uint32_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name)
            return i;
    throw error("unknown generator name: " + name);
}

int64_t Dga::word_degree(const Word& w) const
{
    int64_t d = 0;
    for (uint32_t id : w.letters)
        d += generators.at(id).degree;
    return grading.normalize(d);
}

Rational Dga::word_action(const Word& w) const
{
    Rational a(0);
    for (uint32_t id : w.letters)
        a += generators.at(id).action;
    return a;
}

uint32_t Dga::word_left(const Word& w) const
{
    if (!w.empty())
        return generators.at(w.letters.front()).left;
    if (w.unit < 0)
        throw error("global unit has no left idempotent");
    return static_cast<uint32_t>(w.unit);
}

uint32_t Dga::word_right(const Word& w) const
{
    if (!w.empty())
        return generators.at(w.letters.back()).right;
    if (w.unit < 0)
        throw error("global unit has no right idempotent");
    return static_cast<uint32_t>(w.unit);
}

bool Dga::word_composable(const Word& w) const
{
    for (size_t i = 0; i + 1 < w.letters.size(); ++i)
        if (generators.at(w.letters[i]).right != generators.at(w.letters[i + 1]).left)
            return false;
    return true;
}

/******** Products and the differential ********/

Word concat(const Word& u, const Word& v)
{
    Word w;
    w.letters = u.letters;
    w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
    return w;
}

Element multiply(const Word& u, const Word& v, const Dga& d)
{
    if (u.empty() && v.empty()) {
        if (d.slashed)
            return Element::single(Word::unit_at(Word::kUnitGlobal));
        if (u.unit < 0)
            return Element::single(v);
        if (v.unit < 0)
            return Element::single(u);
        return u.unit == v.unit ? Element::single(u) : Element::zero();
    }
    if (u.empty()) {
        if (d.slashed || u.unit < 0 || static_cast<uint32_t>(u.unit) == d.word_left(v))
            return Element::single(v);
        return Element::zero();
    }
    if (v.empty()) {
        if (d.slashed || v.unit < 0 || static_cast<uint32_t>(v.unit) == d.word_right(u))
            return Element::single(u);
        return Element::zero();
    }
    if (!d.slashed && d.word_right(u) != d.word_left(v))
        return Element::zero();
    return Element::single(concat(u, v));
}

Element multiply(const Element& a, const Element& b, const Dga& d)
{
    Element out;
    for (const Word& u : a.words)
        for (const Word& v : b.words)
            out = add(out, multiply(u, v, d));
    return out;
}

Element differentiate(const Element& a, const Dga& d)
{
    Element out;
    for (const Word& w : a.words) {
        for (size_t i = 0; i < w.letters.size(); ++i) {
            uint32_t id = w.letters[i];
            if (id >= d.gen_count())
                throw error("unknown generator id in word");
            Word prefix(std::vector<uint32_t>(w.letters.begin(), w.letters.begin() + i));
            Word suffix(std::vector<uint32_t>(w.letters.begin() + i + 1, w.letters.end()));
            if (prefix.empty())
                prefix.unit = d.slashed ? Word::kUnitGlobal : static_cast<int32_t>(d.gen(id).left);
            if (suffix.empty())
                suffix.unit = d.slashed ? Word::kUnitGlobal : static_cast<int32_t>(d.gen(id).right);
            Element mid = multiply(Element::single(prefix), d.differential.at(id), d);
            out = add(out, multiply(mid, Element::single(suffix), d));
        }
    }
    return out;
}

/******** Validation ********/

std::string ValidationReport::summary() const
{
    if (ok())
        return "ok";
    std::ostringstream os;
    os << issues.size() << " issue(s):";
    for (const auto& i : issues)
        os << "\n  [" << i.generator << "] " << i.message;
    return os.str();
}

ValidationReport check_dga(const Dga& d, unsigned jobs)
{
    ValidationReport rep;
    auto push = [&](ValidationIssue::Kind k, const std::string& g, const std::string& m, Element w = {}) {
        rep.issues.push_back({k, g, m, std::move(w)});
    };

    if (d.generators.size() != d.differential.size()) {
        push(ValidationIssue::Kind::Composability, "", "differential table size mismatch");
        return rep;
    }
    std::set<std::string> names;
    for (const auto& g : d.generators) {
        if (!names.insert(g.name).second)
            push(ValidationIssue::Kind::Composability, g.name, "duplicate generator name");
        if (g.left >= d.ring.size() || g.right >= d.ring.size())
            push(ValidationIssue::Kind::Composability, g.name, "idempotent endpoint out of range");
        if (g.action < Rational(0))
            push(ValidationIssue::Kind::Action, g.name, "negative action");
        if (g.kind == GenKind::EUnit) {
            if (!d.grading.same_degree(g.degree, -1))
                push(ValidationIssue::Kind::Degree, g.name, "e-unit generator must have degree -1");
            if (g.left != g.right)
                push(ValidationIssue::Kind::Composability, g.name, "e-unit generator must have equal endpoints");
        }
    }

    for (uint32_t id = 0; id < d.gen_count(); ++id) {
        const Generator& g = d.gen(id);
        const Element& dg = d.differential[id];
        for (const Word& w : dg.words) {
            for (uint32_t l : w.letters)
                if (l >= d.gen_count()) {
                    push(ValidationIssue::Kind::Composability, g.name, "differential references unknown generator id");
                    return rep;
                }
            if (!d.slashed) {
                if (w.empty()) {
                    if (w.unit < 0)
                        push(ValidationIssue::Kind::UnitTerm, g.name, "untagged unit term in unital algebra");
                    else if (static_cast<uint32_t>(w.unit) != g.left || g.left != g.right)
                        push(ValidationIssue::Kind::UnitTerm, g.name,
                             "unit term " + word_to_string(w, d) + " incompatible with endpoints");
                } else {
                    if (!d.word_composable(w))
                        push(ValidationIssue::Kind::Composability, g.name,
                             "non-composable word " + word_to_string(w, d));
                    else if (d.word_left(w) != g.left || d.word_right(w) != g.right)
                        push(ValidationIssue::Kind::Composability, g.name,
                             "word " + word_to_string(w, d) + " has wrong endpoints");
                }
            }
            if (!d.grading.same_degree(d.word_degree(w), g.degree - 1))
                push(ValidationIssue::Kind::Degree, g.name,
                     "word " + word_to_string(w, d) + " does not have degree |g|-1");
            if (d.actions_in_use && !(d.word_action(w) < g.action))
                push(ValidationIssue::Kind::Action, g.name,
                     "word " + word_to_string(w, d) + " does not decrease action");
        }
    }

    std::vector<Element> squares(d.gen_count());
    auto run_range = [&](uint32_t lo, uint32_t hi) {
        for (uint32_t id = lo; id < hi; ++id)
            squares[id] = differentiate(d.differential[id], d);
    };
    if (jobs > 1 && d.gen_count() > 1) {
        std::vector<std::future<void>> futs;
        uint32_t chunk = (d.gen_count() + jobs - 1) / jobs;
        for (uint32_t lo = 0; lo < d.gen_count(); lo += chunk)
            futs.push_back(std::async(std::launch::async, run_range, lo,
                                      std::min(lo + chunk, d.gen_count())));
        for (auto& f : futs)
            f.get();
    } else {
        run_range(0, d.gen_count());
    }
    for (uint32_t id = 0; id < d.gen_count(); ++id)
        if (!squares[id].is_zero())
            push(ValidationIssue::Kind::DSquared, d.gen(id).name,
                 "d^2(g) = " + element_to_string(squares[id], d), squares[id]);
    return rep;
}

/******** k^e morphisms ********/

KeElement evaluate_ke_morphism(const std::vector<KeElement>& eps, const Word& w, const Dga&)
{
    if (w.empty()) {
        if (w.unit < 0)
            throw error("cannot evaluate k^e morphism on the global unit of a slashed algebra");
        return KeElement::pure(static_cast<uint32_t>(w.unit), static_cast<uint32_t>(w.unit));
    }
    KeElement acc = eps.at(w.letters.front());
    for (size_t i = 1; i < w.letters.size(); ++i)
        acc = star(acc, eps.at(w.letters[i]));
    return acc;
}

KeElement evaluate_ke_morphism(const std::vector<KeElement>& eps, const Element& x, const Dga& d)
{
    KeElement acc;
    for (const Word& w : x.words)
        acc = ke_add(acc, evaluate_ke_morphism(eps, w, d));
    return acc;
}

/******** Canonical form ********/

Dga canonical_form(const Dga& d)
{
    std::vector<uint32_t> order(d.gen_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return d.gen(a).name < d.gen(b).name; });
    std::vector<uint32_t> remap(d.gen_count());
    for (uint32_t i = 0; i < order.size(); ++i)
        remap[order[i]] = i;

    Dga out = d;
    out.generators.clear();
    out.differential.clear();
    for (uint32_t id : order)
        out.generators.push_back(d.gen(id));
    for (uint32_t id : order) {
        std::vector<Word> ws;
        for (Word w : d.differential[id].words) {
            for (auto& l : w.letters)
                l = remap[l];
            ws.push_back(std::move(w));
        }
        out.differential.push_back(Element(std::move(ws)));
    }
    return out;
}

bool same_dga(const Dga& a, const Dga& b)
{
    Dga ca = canonical_form(a), cb = canonical_form(b);
    if (ca.ring.labels != cb.ring.labels || !(ca.grading == cb.grading) || ca.slashed != cb.slashed)
        return false;
    if (ca.gen_count() != cb.gen_count())
        return false;
    for (uint32_t i = 0; i < ca.gen_count(); ++i) {
        const Generator& x = ca.gen(i);
        const Generator& y = cb.gen(i);
        if (x.name != y.name || !ca.grading.same_degree(x.degree, y.degree) || x.left != y.left ||
            x.right != y.right || x.kind != y.kind)
            return false;
        if (ca.actions_in_use && cb.actions_in_use && x.action != y.action)
            return false;
        if (!(ca.differential[i] == cb.differential[i]))
            return false;
    }
    return true;
}

/******** Printing ********/

std::string word_to_string(const Word& w, const Dga& d)
{
    if (w.empty()) {
        if (w.unit < 0)
            return "1";
        return "1@" + d.ring.labels.at(static_cast<uint32_t>(w.unit));
    }
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i)
            s += ".";
        s += d.gen(w.letters[i]).name;
    }
    return s;
}

std::string element_to_string(const Element& e, const Dga& d)
{
    if (e.is_zero())
        return "0";
    std::string s;
    for (size_t i = 0; i < e.words.size(); ++i) {
        if (i)
            s += " + ";
        s += word_to_string(e.words[i], d);
    }
    return s;
}

} // namespace cedga
