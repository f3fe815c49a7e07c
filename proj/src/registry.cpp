#include "cedga/registry.hpp"

#include <algorithm>
#include <random>

namespace cedga {

namespace {

uint32_t add_gen(Dga& d, const std::string& name, int64_t degree, uint32_t left, uint32_t right,
                 long long action, GenKind kind = GenKind::Chord)
{
    Generator g;
    g.name = name;
    g.degree = degree;
    g.left = left;
    g.right = right;
    g.action = Rational(action);
    g.kind = kind;
    d.generators.push_back(g);
    d.differential.emplace_back();
    return d.gen_count() - 1;
}

} // namespace

Dga make_unknot()
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    add_gen(d, "a", 1, 0, 0, 1);
    return d;
}

Dga make_trefoil()
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    uint32_t a1 = add_gen(d, "a1", 1, 0, 0, 4);
    uint32_t a2 = add_gen(d, "a2", 1, 0, 0, 4);
    uint32_t b1 = add_gen(d, "b1", 0, 0, 0, 1);
    uint32_t b2 = add_gen(d, "b2", 0, 0, 0, 1);
    uint32_t b3 = add_gen(d, "b3", 0, 0, 0, 1);
    d.differential[a1] = Element({Word::unit_at(0), Word({b1}), Word({b3}), Word({b1, b2, b3})});
    d.differential[a2] = Element({Word::unit_at(0), Word({b1}), Word({b3}), Word({b3, b2, b1})});
    return d;
}

Dga make_hopf_attaching()
{
    Dga d;
    d.ring = IdempotentRing({"s", "t"});
    uint32_t x = add_gen(d, "x", 0, 0, 1, 1);
    uint32_t y = add_gen(d, "y", 0, 1, 0, 1);
    uint32_t c = add_gen(d, "c", 1, 0, 0, 3);
    uint32_t u = add_gen(d, "u", 1, 1, 1, 3);
    d.differential[c] = Element({Word::unit_at(0), Word({x, y})});
    d.differential[u] = Element({Word::unit_at(1), Word({y, x})});
    return d;
}

/******** seeded synthetics ********/

namespace {

struct SynthBuilder {
    std::mt19937_64 rng;
    Dga d;
    long long next_action = 1;

    explicit SynthBuilder(uint64_t seed) : rng(seed) {}

    uint32_t pick(uint32_t n) { return static_cast<uint32_t>(rng() % n); }

    // random composable word in the closed generators, or nullopt
    std::optional<Word> random_closed_word(uint32_t len, const std::vector<uint32_t>& closed)
    {
        if (closed.empty())
            return std::nullopt;
        Word w;
        for (uint32_t l = 0; l < len; ++l) {
            std::vector<uint32_t> fits;
            for (uint32_t id : closed)
                if (w.empty() || d.gen(w.letters.back()).right == d.gen(id).left)
                    fits.push_back(id);
            if (fits.empty())
                return std::nullopt;
            w.letters.push_back(fits[pick(static_cast<uint32_t>(fits.size()))]);
        }
        return w;
    }

    long long max_word_action(const Element& e)
    {
        Rational m(0);
        for (const Word& w : e.words)
            m = std::max(m, d.word_action(w));
        // actions here are integers by construction
        return boost::rational_cast<long long>(m);
    }

    void build(uint32_t n_idem, uint32_t n_gens)
    {
        std::vector<std::string> labels;
        for (uint32_t s = 0; s < n_idem; ++s)
            labels.push_back("s" + std::to_string(s));
        d.ring = IdempotentRing(labels);

        std::vector<uint32_t> closed;
        uint32_t n_closed = std::max<uint32_t>(1, n_gens / 2);
        for (uint32_t k = 0; k < n_closed; ++k) {
            uint32_t left = pick(n_idem), right = pick(n_idem);
            int64_t deg = static_cast<int64_t>(pick(4)) - 1;
            uint32_t id = add_gen(d, "x" + std::to_string(k), deg, left, right, next_action++);
            closed.push_back(id);
        }
        for (uint32_t k = n_closed; k < n_gens; ++k) {
            // differential: either a sum of words in closed letters, or the
            // derivative of a random element (always a cycle)
            Element target;
            if (pick(3) == 0 && d.gen_count() > 0) {
                auto w = random_closed_word(1 + pick(3), closed);
                if (w) {
                    std::vector<uint32_t> all(d.gen_count());
                    for (uint32_t i = 0; i < d.gen_count(); ++i)
                        all[i] = i;
                    auto v = random_closed_word(1 + pick(2), all);
                    if (v)
                        target = differentiate(Element::single(*v), d);
                }
            }
            if (target.is_zero()) {
                uint32_t nwords = 1 + pick(2);
                std::optional<Word> first = random_closed_word(1 + pick(3), closed);
                if (first) {
                    Element e = Element::single(*first);
                    uint32_t l = d.word_left(*first), r = d.word_right(*first);
                    int64_t deg = d.word_degree(*first);
                    if (l == r && deg == 0 && pick(2) == 0)
                        e = add(e, Element::single(Word::unit_at(static_cast<int32_t>(l))));
                    for (uint32_t t = 1; t < nwords; ++t) {
                        auto w = random_closed_word(1 + pick(3), closed);
                        if (w && d.word_left(*w) == l && d.word_right(*w) == r &&
                            d.word_degree(*w) == deg)
                            e = add(e, Element::single(*w));
                    }
                    target = e;
                }
            }
            uint32_t left, right;
            int64_t deg;
            if (target.is_zero()) {
                left = pick(n_idem);
                right = pick(n_idem);
                deg = static_cast<int64_t>(pick(4)) - 1;
            } else {
                const Word& w0 = target.words.front();
                if (w0.empty()) {
                    left = right = static_cast<uint32_t>(w0.unit);
                } else {
                    left = d.word_left(w0);
                    right = d.word_right(w0);
                }
                deg = d.word_degree(w0) + 1;
            }
            long long action = std::max(next_action, max_word_action(target) + 1);
            next_action = action + 1;
            uint32_t id = add_gen(d, "x" + std::to_string(k), deg, left, right, action);
            d.differential[id] = target;
            if (target.is_zero())
                closed.push_back(id);
        }
    }
};

} // namespace

Dga make_synthetic(uint64_t seed)
{
    SynthBuilder b(seed);
    uint32_t n_idem = 1 + static_cast<uint32_t>(b.rng() % 3);
    uint32_t n_gens = 3 + static_cast<uint32_t>(b.rng() % 3);
    b.build(n_idem, n_gens);
    return b.d;
}

Dga make_synthetic_with_pair(uint64_t seed, std::string& a, std::string& b)
{
    SynthBuilder sb(seed);
    uint32_t n_idem = 1 + static_cast<uint32_t>(sb.rng() % 2);
    uint32_t n_gens = 3 + static_cast<uint32_t>(sb.rng() % 2);
    sb.build(n_idem, n_gens);
    Dga d = sb.d;
    // plant the pair: db = 0, da = b; deg(a) != 0 keeps eps(a) forced, so the
    // augmentation sets biject strictly (not only up to homotopy)
    uint32_t left = static_cast<uint32_t>(seed % d.ring.size());
    int64_t bdeg = static_cast<int64_t>(seed % 2);
    long long act_b = sb.next_action++;
    uint32_t ib = add_gen(d, "pb", bdeg, left, left, act_b);
    uint32_t ia = add_gen(d, "pa", bdeg + 1, left, left, act_b + 1);
    sb.next_action = act_b + 2;
    d.differential[ia] = Element::single(Word({ib}));
    // let b feed into another generator's differential: b is closed, so the
    // word bb is a usable cycle summand
    if (seed % 2 == 0) {
        uint32_t ix = add_gen(d, "px", 2 * bdeg + 1, left, left, 2 * act_b + 1);
        sb.next_action = 2 * act_b + 2;
        d.differential[ix] = Element({Word({ib, ib})});
    }
    a = "pa";
    b = "pb";
    return d;
}

std::vector<std::string> registry_names()
{
    return {"unknot", "trefoil", "hopf-attaching", "synthetic-<seed>"};
}

bool is_registry_name(const std::string& name)
{
    if (name == "unknot" || name == "trefoil" || name == "hopf-attaching")
        return true;
    return name.rfind("synthetic-", 0) == 0;
}

Dga registry_example(const std::string& name)
{
    if (name == "unknot")
        return make_unknot();
    if (name == "trefoil")
        return make_trefoil();
    if (name == "hopf-attaching")
        return make_hopf_attaching();
    if (name.rfind("synthetic-", 0) == 0) {
        uint64_t seed = std::stoull(name.substr(10));
        return make_synthetic(seed);
    }
    throw error("unknown registry example: " + name);
}

} // namespace cedga
