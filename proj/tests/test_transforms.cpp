#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cedga/module.hpp"
#include "cedga/registry.hpp"
#include "cedga/transforms.hpp"

#include <random>

using namespace cedga;

namespace {

Dga mixed_generator_fixture()
{
    Dga d;
    d.ring = IdempotentRing({"s", "t"});
    d.generators = {Generator{"x", 0, 0, 1, Rational(1), GenKind::Chord}};
    d.differential = {Element::zero()};
    return d;
}

Dga rename_as_single_copy(const Dga& d)
{
    Dga out = d;
    std::vector<std::string> labels;
    for (const auto& s : d.ring.labels)
        labels.push_back(copy_label(s, 1));
    out.ring = IdempotentRing(labels);
    for (auto& g : out.generators) {
        g.name = copy_gen_name(g.name, 1, 1);
        g.action = Rational(0);
    }
    out.actions_in_use = false;
    CopyOrdering ord;
    ord.base_labels = d.ring.labels;
    ord.index.assign(d.ring.size(), 1);
    ord.potential.assign(d.ring.size(), 0);
    out.ordering = ord;
    return out;
}

} // namespace

TEST_CASE("morsify: unknot")
{
    Dga plus = morsify(make_unknot());
    REQUIRE(plus.gen_count() == 2);
    uint32_t a = plus.gen_index("a");
    uint32_t e = plus.gen_index("e@s");
    CHECK(plus.gen(e).degree == -1);
    CHECK(plus.gen(e).kind == GenKind::EUnit);
    CHECK(plus.differential[a] == Element({Word({e, a}), Word({a, e})}));
    CHECK(plus.differential[e] == Element::single(Word({e, e})));
    CHECK(!plus.actions_in_use);
    CHECK(check_dga(plus).ok());
}

TEST_CASE("morsify: empty algebra gets one e per idempotent")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    Dga plus = morsify(d);
    REQUIRE(plus.gen_count() == 1);
    uint32_t e = plus.gen_index("e@s");
    CHECK(plus.differential[e] == Element::single(Word({e, e})));
}

TEST_CASE("morsify: mixed generator is twisted on both sides")
{
    Dga plus = morsify(mixed_generator_fixture());
    uint32_t x = plus.gen_index("x");
    uint32_t es = plus.gen_index("e@s");
    uint32_t et = plus.gen_index("e@t");
    CHECK(plus.differential[x] == Element({Word({es, x}), Word({x, et})}));
}

TEST_CASE("morsify: reserved name clash is an error")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    d.generators = {Generator{"e@s", 1, 0, 0, Rational(1), GenKind::Chord}};
    d.differential = {Element::zero()};
    CHECK_THROWS_AS(morsify(d), error);
}

TEST_CASE("omit_idempotents: table survives, flag set, units collapse")
{
    Dga u = omit_idempotents(make_unknot());
    CHECK(u.slashed);
    CHECK(u.differential[u.gen_index("a")].is_zero());

    Dga t = omit_idempotents(make_trefoil());
    uint32_t a1 = t.gen_index("a1");
    bool saw_global_unit = false;
    for (const Word& w : t.differential[a1].words)
        if (w.empty()) {
            CHECK(w.unit == Word::kUnitGlobal);
            saw_global_unit = true;
        }
    CHECK(saw_global_unit);
    CHECK(t.differential[a1].size() == 4);
    CHECK(check_dga(t).ok());
}

TEST_CASE("expand_idempotents: unknot with two copies")
{
    auto [c, tmap] = expand_idempotents(make_unknot(), CopyMap::uniform(make_unknot(), 2));
    CHECK(c.gen_count() == 4);
    for (uint32_t i = 1; i <= 2; ++i)
        for (uint32_t j = 1; j <= 2; ++j)
            CHECK(c.differential[c.gen_index(copy_gen_name("a", i, j))].is_zero());
    CHECK(tmap.is_chain_map());
    CHECK(tmap.images[0].size() == 4); // T(a) = sum of the four copies
}

TEST_CASE("expand_idempotents: unit terms expand diagonally")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    d.generators = {Generator{"x", 1, 0, 0, Rational(1), GenKind::Chord}};
    d.differential = {Element::single(Word::unit_at(0))};
    auto [c, tmap] = expand_idempotents(d, CopyMap::uniform(d, 2));
    CHECK(c.differential[c.gen_index("x@1.1")] ==
          Element::single(Word::unit_at(static_cast<int32_t>(c.ring.index_of("s@1")))));
    CHECK(c.differential[c.gen_index("x@2.2")] ==
          Element::single(Word::unit_at(static_cast<int32_t>(c.ring.index_of("s@2")))));
    CHECK(c.differential[c.gen_index("x@1.2")].is_zero());
    CHECK(c.differential[c.gen_index("x@2.1")].is_zero());
}

TEST_CASE("expand_idempotents: morsified unknot, full intermediate sums")
{
    Dga plus = morsify(make_unknot());
    auto [c, tmap] = expand_idempotents(plus, CopyMap::uniform(plus, 2));
    for (uint32_t i = 1; i <= 2; ++i)
        for (uint32_t j = 1; j <= 2; ++j) {
            Element expect;
            for (uint32_t h = 1; h <= 2; ++h) {
                expect = add(expect,
                             Element::single(Word({c.gen_index(copy_gen_name("e@s", i, h)),
                                                   c.gen_index(copy_gen_name("a", h, j))})));
                expect = add(expect,
                             Element::single(Word({c.gen_index(copy_gen_name("a", i, h)),
                                                   c.gen_index(copy_gen_name("e@s", h, j))})));
            }
            CHECK(c.differential[c.gen_index(copy_gen_name("a", i, j))] == expect);
        }
    CHECK(check_dga(c).ok());
}

TEST_CASE("ordered_quotient: the k = 2 arrow algebra of the unknot")
{
    Dga plus = morsify(make_unknot());
    auto [c, tmap] = expand_idempotents(plus, CopyMap::uniform(plus, 2));
    Dga q = ordered_quotient(c);
    REQUIRE(q.gen_count() == 5);
    uint32_t a11 = q.gen_index("a@1.1"), a12 = q.gen_index("a@1.2");
    uint32_t a21 = q.gen_index("a@2.1"), a22 = q.gen_index("a@2.2");
    uint32_t e12 = q.gen_index("e@s@1.2");
    CHECK(q.differential[a11] == Element::single(Word({e12, a21})));
    CHECK(q.differential[a12] == Element({Word({e12, a22}), Word({a11, e12})}));
    CHECK(q.differential[a21].is_zero());
    CHECK(q.differential[a22] == Element::single(Word({a21, e12})));
    CHECK(q.differential[e12].is_zero());
    CHECK(check_dga(q).ok());
}

TEST_CASE("ordered_quotient: one copy recovers the original table")
{
    Dga base = make_trefoil();
    auto [c, tmap] = expand_idempotents(morsify(base), CopyMap::uniform(base, 1));
    Dga q = ordered_quotient(c);
    CHECK(same_dga(q, rename_as_single_copy(base)));
}

TEST_CASE("ordered_quotient: de@1.3 has the unique intermediate")
{
    Dga plus = morsify(make_unknot());
    auto [c, tmap] = expand_idempotents(plus, CopyMap::uniform(plus, 3));
    Dga q = ordered_quotient(c);
    uint32_t e13 = q.gen_index("e@s@1.3");
    CHECK(q.differential[e13] ==
          Element::single(Word({q.gen_index("e@s@1.2"), q.gen_index("e@s@2.3")})));
}

TEST_CASE("ordered_quotient requires the ordering")
{
    CHECK_THROWS_AS(ordered_quotient(make_unknot()), error);
}

TEST_CASE("quotient and omission of idempotents commute")
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 12; ++trial) {
        Dga base = make_synthetic(rng() % 40);
        Dga plus = morsify(base);
        CopyMap cm = CopyMap::uniform(plus, 1 + trial % 3);
        auto [c, tmap] = expand_idempotents(plus, cm);
        Dga a = omit_idempotents(ordered_quotient(c));
        Dga b = ordered_quotient(omit_idempotents(c));
        CHECK(same_dga(a, b));
    }
}

TEST_CASE("eliminate_pair: basic quotient and the contract error")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    d.generators = {Generator{"a", 1, 0, 0, Rational(2), GenKind::Chord},
                    Generator{"b", 0, 0, 0, Rational(1), GenKind::Chord}};
    d.differential = {Element::single(Word({1})), Element::zero()};
    Dga q = eliminate_pair(d, "a", "b");
    CHECK(q.gen_count() == 0);
    CHECK(q.ring.labels == d.ring.labels);

    // da = b + be: the residual is reported
    Dga bad;
    bad.ring = IdempotentRing({"s"});
    bad.generators = {Generator{"a", 1, 0, 0, Rational(3), GenKind::Chord},
                      Generator{"b", 0, 0, 0, Rational(1), GenKind::Chord},
                      Generator{"e", 1, 0, 0, Rational(1), GenKind::Chord}};
    bad.differential = {Element({Word({1}), Word({1, 2})}), Element::zero(), Element::zero()};
    try {
        eliminate_pair(bad, "a", "b");
        FAIL("expected an error");
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("b.e") != std::string::npos);
    }
}

TEST_CASE("eliminate_pair: words through the ideal are dropped")
{
    std::string a, b;
    Dga d = make_synthetic_with_pair(4, a, b); // even seed: has px with d(px) = bb
    REQUIRE(check_dga(d).ok());
    Dga q = eliminate_pair(d, a, b);
    CHECK(check_dga(q).ok());
    CHECK(q.differential[q.gen_index("px")].is_zero());
}

TEST_CASE("eliminate_pair preserves the augmentation set")
{
    for (uint64_t seed = 0; seed < 8; ++seed) {
        std::string a, b;
        Dga d = omit_idempotents(make_synthetic_with_pair(seed, a, b));
        REQUIRE(check_dga(d).ok());
        Dga q = eliminate_pair(d, a, b);
        auto augs_d = find_augmentations(d);
        auto augs_q = find_augmentations(q);
        CHECK(augs_d.size() == augs_q.size());
        // pullback: extend by zero on a and b, re-validate over the source
        for (const Augmentation& eq : augs_q) {
            Augmentation lifted;
            lifted.form = Augmentation::Form::Scalar;
            lifted.scalar.assign(d.gen_count(), 0);
            for (uint32_t g = 0; g < q.gen_count(); ++g)
                lifted.scalar[d.gen_index(q.gen(g).name)] = eq.scalar[g];
            CHECK(augmentation_valid(d, lifted, false));
        }
    }
}

TEST_CASE("truncate_by_action")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    d.generators = {Generator{"a1", 0, 0, 0, Rational(1), GenKind::Chord},
                    Generator{"a2", 1, 0, 0, Rational(2), GenKind::Chord},
                    Generator{"a3", 1, 0, 0, Rational(3), GenKind::Chord}};
    d.differential = {Element::zero(), Element::single(Word({0})),
                      Element::single(Word({0, 0}))};
    REQUIRE(check_dga(d).ok());
    Dga mid = truncate_by_action(d, Rational(2));
    CHECK(mid.gen_count() == 2);
    CHECK(check_dga(mid).ok());
    CHECK(truncate_by_action(d, Rational(99)).gen_count() == 3);
    CHECK(truncate_by_action(d, Rational(1, 2)).gen_count() == 0);
    Dga no_actions = morsify(d);
    CHECK_THROWS_AS(truncate_by_action(no_actions, Rational(1)), error);

    // fractional actions cut between generators
    d.generators[0].action = Rational(1, 3);
    d.generators[1].action = Rational(1, 2);
    d.generators[2].action = Rational(3, 4);
    REQUIRE(check_dga(d).ok());
    CHECK(truncate_by_action(d, Rational(5, 12)).gen_count() == 1);
    CHECK(truncate_by_action(d, Rational(1, 2)).gen_count() == 2);
}

TEST_CASE("every transform output passes check_dga on synthetic inputs")
{
    for (uint64_t seed = 100; seed < 110; ++seed) {
        Dga d = make_synthetic(seed);
        REQUIRE(check_dga(d).ok());
        Dga plus = morsify(d);
        CHECK(check_dga(plus).ok());
        CHECK(check_dga(omit_idempotents(d)).ok());
        auto [c, tmap] = expand_idempotents(plus, CopyMap::uniform(plus, 2));
        CHECK(check_dga(c).ok());
        CHECK(check_dga(ordered_quotient(c)).ok());
        CHECK(check_dga(truncate_by_action(d, Rational(2))).ok());
    }
}
