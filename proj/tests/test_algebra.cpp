#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cedga/dga.hpp"
#include "cedga/registry.hpp"

#include <random>

using namespace cedga;

namespace {

// The one-crossing Lagrangian projection of the standard unknot has exactly
// two bounded regions, each an admissible disc with one positive corner at a
// and no negative corners. Folding their word contributions over F2 is the
// oracle for the registry differential.
Element unknot_disc_oracle()
{
    std::vector<Word> contributions = {Word::unit_at(0), Word::unit_at(0)};
    return Element(std::move(contributions));
}

Dga two_idem_fixture()
{
    Dga d;
    d.ring = IdempotentRing({"s", "t"});
    Generator x{"x", 0, 0, 1, Rational(1), GenKind::Chord};
    Generator y{"y", 0, 1, 0, Rational(1), GenKind::Chord};
    d.generators = {x, y};
    d.differential = {Element::zero(), Element::zero()};
    return d;
}

} // namespace

TEST_CASE("multiply: concatenation and idempotent orthogonality")
{
    Dga d = two_idem_fixture();
    Element ex = Element::single(Word({0}));
    Element ey = Element::single(Word({1}));
    // right(x) = left(y) = t
    CHECK(multiply(ex, ey, d) == Element::single(Word({0, 1})));
    // right(y) = s != t = left(... x has left s: y then x composable; x then x is not
    CHECK(multiply(ex, ex, d).is_zero());
    // empty words act as local units
    Element unit_s = Element::single(Word::unit_at(0));
    Element unit_t = Element::single(Word::unit_at(1));
    CHECK(multiply(unit_s, ex, d) == ex);
    CHECK(multiply(unit_t, ex, d).is_zero());
    CHECK(multiply(ex, unit_t, d) == ex);
}

TEST_CASE("multiply: slashed algebra expands binomially")
{
    Dga d = two_idem_fixture();
    d.slashed = true;
    Element sum = add(Element::single(Word({0})), Element::single(Word({1})));
    Element sq = multiply(sum, sum, d);
    CHECK(sq.size() == 4);
    CHECK(sq == Element({Word({0, 0}), Word({0, 1}), Word({1, 0}), Word({1, 1})}));
}

TEST_CASE("multiply is associative on random slashed words")
{
    Dga d = two_idem_fixture();
    d.slashed = true;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto rand_el = [&] {
            std::vector<Word> ws;
            uint32_t n = 1 + rng() % 2;
            for (uint32_t i = 0; i < n; ++i) {
                Word w;
                uint32_t len = rng() % 3;
                for (uint32_t l = 0; l < len; ++l)
                    w.letters.push_back(rng() % 2);
                ws.push_back(w);
            }
            return Element(std::move(ws));
        };
        Element a = rand_el(), b = rand_el(), c = rand_el();
        CHECK(multiply(multiply(a, b, d), c, d) == multiply(a, multiply(b, c, d), d));
    }
}

TEST_CASE("multiply is associative with local units in a unital algebra")
{
    Dga d = two_idem_fixture();
    std::mt19937_64 rng(13);
    auto rand_el = [&] {
        std::vector<Word> ws;
        for (uint32_t n = 1 + rng() % 2; n > 0; --n) {
            if (rng() % 4 == 0) {
                ws.push_back(Word::unit_at(static_cast<int32_t>(rng() % 2)));
                continue;
            }
            Word w;
            uint32_t cur = rng() % 2;
            for (uint32_t len = 1 + rng() % 3; len > 0; --len) {
                w.letters.push_back(cur); // generator cur runs cur -> 1-cur
                cur = 1 - cur;
            }
            ws.push_back(w);
        }
        return Element(std::move(ws));
    };
    for (int trial = 0; trial < 100; ++trial) {
        Element a = rand_el(), b = rand_el(), c = rand_el();
        CHECK(multiply(multiply(a, b, d), c, d) == multiply(a, multiply(b, c, d), d));
    }
}

TEST_CASE("differentiate: Leibniz with one nonzero term")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    Generator x{"x", 1, 0, 0, Rational(2), GenKind::Chord};
    Generator y{"y", 0, 0, 0, Rational(1), GenKind::Chord};
    Generator z{"z", 0, 0, 0, Rational(1), GenKind::Chord};
    d.generators = {x, y, z};
    d.differential = {Element::single(Word({2})), Element::zero(), Element::zero()};
    Element xy = Element::single(Word({0, 1}));
    CHECK(differentiate(xy, d) == Element::single(Word({2, 1})));
    CHECK(differentiate(Element::single(Word::unit_at(0)), d).is_zero());
}

TEST_CASE("check_dga: unknot passes, against the disc enumeration oracle")
{
    Dga d = make_unknot();
    CHECK(check_dga(d).ok());
    CHECK(d.differential[0] == unknot_disc_oracle());
    CHECK(unknot_disc_oracle().is_zero()); // the two rigid discs cancel mod 2
}

TEST_CASE("check_dga: registry examples all pass")
{
    CHECK(check_dga(make_trefoil()).ok());
    CHECK(check_dga(make_hopf_attaching()).ok());
    for (uint64_t seed = 0; seed < 25; ++seed) {
        Dga d = make_synthetic(seed);
        ValidationReport rep = check_dga(d);
        INFO("seed ", seed, ": ", rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("check_dga: degree violation is reported")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    Generator x{"x", 1, 0, 0, Rational(1), GenKind::Chord};
    d.generators = {x};
    d.differential = {Element::single(Word({0}))}; // dx = x has wrong degree and action
    ValidationReport rep = check_dga(d);
    CHECK(!rep.ok());
    bool saw_degree = false;
    for (const auto& issue : rep.issues)
        if (issue.kind == ValidationIssue::Kind::Degree)
            saw_degree = true;
    CHECK(saw_degree);
}

TEST_CASE("check_dga: d^2 witness is surfaced")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    Generator x{"x", 2, 0, 0, Rational(3), GenKind::Chord};
    Generator y{"y", 1, 0, 0, Rational(2), GenKind::Chord};
    Generator z{"z", 0, 0, 0, Rational(1), GenKind::Chord};
    d.generators = {x, y, z};
    // dy = z, dx = y: then d^2 x = z != 0
    d.differential = {Element::single(Word({1})), Element::single(Word({2})), Element::zero()};
    ValidationReport rep = check_dga(d);
    REQUIRE(!rep.ok());
    bool saw = false;
    for (const auto& issue : rep.issues)
        if (issue.kind == ValidationIssue::Kind::DSquared && issue.witness == Element::single(Word({2})))
            saw = true;
    CHECK(saw);
}

TEST_CASE("d^2 = 0 on random elements of valid DGAs")
{
    std::mt19937_64 rng(11);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Dga d = make_synthetic(seed);
        REQUIRE(check_dga(d).ok());
        for (int trial = 0; trial < 20; ++trial) {
            // random product of generators, then two derivatives
            Word w;
            uint32_t len = 1 + rng() % 3;
            uint32_t cur = rng() % d.gen_count();
            w.letters.push_back(cur);
            for (uint32_t l = 1; l < len; ++l) {
                bool found = false;
                for (uint32_t id = 0; id < d.gen_count(); ++id)
                    if (d.gen((cur + id) % d.gen_count()).left == d.gen(w.letters.back()).right) {
                        w.letters.push_back((cur + id) % d.gen_count());
                        found = true;
                        break;
                    }
                if (!found)
                    break;
            }
            Element e = Element::single(w);
            CHECK(differentiate(differentiate(e, d), d).is_zero());
        }
    }
}

TEST_CASE("star: the displayed rule and associativity")
{
    KeElement ss = KeElement::pure(0, 0);
    KeElement st = KeElement::pure(0, 1);
    KeElement tt = KeElement::pure(1, 1);
    KeElement ts = KeElement::pure(1, 0);
    CHECK(star(ss, st) == st);              // lambda(s s) = 1
    CHECK(star(st, st).is_zero());          // lambda(t s) = 0
    CHECK(star(ke_add(st, tt), ts) == ke_add(ss, ts)); // bilinearity

    std::mt19937_64 rng(3);
    auto rand_ke = [&] {
        KeElement f;
        std::vector<std::pair<uint32_t, uint32_t>> ps;
        for (uint32_t n = rng() % 3; n > 0; --n)
            ps.push_back({static_cast<uint32_t>(rng() % 2), static_cast<uint32_t>(rng() % 2)});
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        f.pairs = ps;
        return f;
    };
    for (int trial = 0; trial < 100; ++trial) {
        KeElement f = rand_ke(), g = rand_ke(), h = rand_ke();
        CHECK(star(star(f, g), h) == star(f, star(g, h)));
        // the bimodule compatibilities
        for (uint32_t s = 0; s < 2; ++s) {
            CHECK(star(ke_scale_left(s, f), g) == ke_scale_left(s, star(f, g)));
            CHECK(star(f, ke_scale_right(g, s)) == ke_scale_right(star(f, g), s));
            CHECK(star(ke_scale_right(f, s), g) == star(f, ke_scale_left(s, g)));
        }
    }
}

TEST_CASE("evaluate_ke_morphism is multiplicative")
{
    Dga d = two_idem_fixture();
    std::vector<KeElement> eps = {KeElement::pure(0, 1), KeElement::pure(1, 0)};
    Word xy({std::vector<uint32_t>{0, 1}});
    CHECK(evaluate_ke_morphism(eps, Word({0}), d) == KeElement::pure(0, 1));
    CHECK(evaluate_ke_morphism(eps, xy, d) == KeElement::pure(0, 0));
    // mismatched middle idempotents vanish
    std::vector<KeElement> bad = {KeElement::pure(0, 1), KeElement::pure(0, 1)};
    CHECK(evaluate_ke_morphism(bad, xy, d).is_zero());
    // eps(ab) = eps(a) * eps(b) on random composable elements
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto rand_word = [&](uint32_t start) {
            Word w;
            uint32_t cur = start;
            uint32_t len = 1 + rng() % 3;
            for (uint32_t l = 0; l < len; ++l) {
                // letters alternate s->t->s->...
                w.letters.push_back(cur);
                cur = 1 - cur;
            }
            return w;
        };
        Word a = rand_word(rng() % 2);
        uint32_t mid = d.gen(a.letters.back()).right;
        Word b = rand_word(mid);
        Element ea = Element::single(a), eb = Element::single(b);
        KeElement lhs = evaluate_ke_morphism(eps, multiply(ea, eb, d), d);
        KeElement rhs = star(evaluate_ke_morphism(eps, ea, d), evaluate_ke_morphism(eps, eb, d));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("action decrease holds across registry differentials")
{
    for (const char* name : {"unknot", "trefoil", "hopf-attaching"}) {
        Dga d = registry_example(name);
        REQUIRE(d.actions_in_use);
        for (uint32_t g = 0; g < d.gen_count(); ++g)
            for (const Word& w : d.differential[g].words)
                CHECK(d.word_action(w) < d.gen(g).action);
    }
}
