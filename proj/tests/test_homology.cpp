#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cedga/chain.hpp"
#include "cedga/registry.hpp"
#include "cedga/resolution.hpp"
#include "cedga/transforms.hpp"
#include "testutil.hpp"

#include <random>

using namespace cedga;

namespace {

ChainComplex two_term(bool identity)
{
    ChainComplex c;
    c.basis = {{"x", 1}, {"y", 0}};
    c.d = Gf2Matrix(2, 2);
    if (identity)
        c.d.set(1, 0);
    return c;
}

ChainComplex point(int64_t deg)
{
    ChainComplex c;
    c.basis = {{"p", deg}};
    c.d = Gf2Matrix(1, 1);
    return c;
}

} // namespace

TEST_CASE("betti: two-term complexes")
{
    PoincarePolynomial acyclic = betti(two_term(true));
    CHECK(acyclic.total() == 0);
    PoincarePolynomial inert = betti(two_term(false));
    CHECK(inert.rank.at(0) == 1);
    CHECK(inert.rank.at(1) == 1);
}

TEST_CASE("betti: Z/2 graded complexes reduce per residue class")
{
    ChainComplex c;
    c.grading = GradingSpec::zmod(2);
    c.basis = {{"x", 1}, {"y", 0}, {"z", 0}};
    c.d = Gf2Matrix(3, 3);
    c.d.set(1, 0); // x -> y within the two residue classes
    c.validate();
    PoincarePolynomial p = betti(c);
    CHECK(p.rank.count(1) == 0);
    CHECK(p.rank.at(0) == 1);
}

TEST_CASE("mapping_cone: identity and zero maps")
{
    ChainComplex a = point(0), b = point(0);
    ChainMap id;
    id.source = &a;
    id.target = &b;
    id.matrix = Gf2Matrix(1, 1);
    id.matrix.set(0, 0);
    CHECK(betti(mapping_cone(id)).total() == 0);

    ChainMap zero;
    zero.source = &a;
    zero.target = &b;
    zero.matrix = Gf2Matrix(1, 1);
    PoincarePolynomial p = betti(mapping_cone(zero));
    CHECK(p.rank.at(0) == 1);
    CHECK(p.rank.at(1) == 1);
}

TEST_CASE("mapping_cone rejects non-chain-maps")
{
    ChainComplex a = two_term(false);
    ChainComplex b = two_term(true);
    ChainMap f;
    f.source = &a;
    f.target = &b;
    f.matrix = Gf2Matrix(2, 2);
    f.matrix.set(0, 0); // x -> x does not commute: d f x = y, f d x = 0
    CHECK_THROWS_AS(mapping_cone(f), error);
}

TEST_CASE("cone composition: identities and zero maps")
{
    ChainComplex a = point(0), b = point(0), c = point(0);
    ChainMap nu, mu;
    nu.source = &a;
    nu.target = &c;
    nu.matrix = Gf2Matrix(1, 1);
    nu.matrix.set(0, 0);
    mu.source = &c;
    mu.target = &b;
    mu.matrix = Gf2Matrix(1, 1);
    mu.matrix.set(0, 0);
    ConeCompositionReport rep = cone_composition_check(nu, mu);
    CHECK(rep.pass);
    CHECK(rep.cone_eta.total() == 0);

    nu.matrix = Gf2Matrix(1, 1);
    mu.matrix = Gf2Matrix(1, 1);
    rep = cone_composition_check(nu, mu);
    CHECK(rep.pass);
    CHECK(rep.cone_composite.total() == 2);
}

TEST_CASE("cone composition: random chain map pairs")
{
    std::mt19937_64 rng(23);
    int nontrivial = 0;
    for (int trial = 0; trial < 40; ++trial) {
        ChainComplex a = testutil::random_complex(rng, 5, -1, 2);
        ChainComplex c = testutil::random_complex(rng, 5, -1, 2);
        ChainComplex b = testutil::random_complex(rng, 5, -1, 2);
        ChainMap nu, mu;
        nu.source = &a;
        nu.target = &c;
        nu.matrix = testutil::random_chain_map(rng, a, c);
        mu.source = &c;
        mu.target = &b;
        mu.matrix = testutil::random_chain_map(rng, c, b);
        if (!nu.matrix.is_zero() || !mu.matrix.is_zero())
            ++nontrivial;
        ConeCompositionReport rep = cone_composition_check(nu, mu);
        INFO(rep.to_string());
        CHECK(rep.pass);
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("Euler characteristic of a cone")
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        ChainComplex a = testutil::random_complex(rng, 6, 0, 3);
        ChainComplex b = testutil::random_complex(rng, 6, 0, 3);
        ChainMap f;
        f.source = &a;
        f.target = &b;
        f.matrix = testutil::random_chain_map(rng, a, b);
        int64_t chi_cone = betti(mapping_cone(f)).euler();
        int64_t expect = betti(b).euler() - betti(a).euler();
        CHECK(chi_cone == expect);
    }
}

TEST_CASE("short resolution: Delta is the hat derivation")
{
    Dga t = make_trefoil();
    ShortResolution res = build_short_resolution(t);
    uint32_t b1 = t.gen_index("b1"), b2 = t.gen_index("b2");
    HatElement d = res.delta(Word({b1, b2}));
    REQUIRE(d.terms.size() == 2);
    CHECK(res.delta(Word::unit_at(0)).is_zero());
    // unknot: d(a^) = 0 and iota(a^) = a (x) 1 + 1 (x) a
    Dga u = make_unknot();
    ShortResolution ru = build_short_resolution(u);
    TriWord ahat{Word::unit_at(0), 0, Word::unit_at(0)};
    CHECK(ru.d_column(ahat).is_zero());
    TensorElement glue = ru.iota(ahat);
    REQUIRE(glue.terms.size() == 2);
    // sorted: the unit-tagged left word comes first
    CHECK(glue.terms[0].left == Word::unit_at(0));
    CHECK(glue.terms[0].right == Word({0}));
    CHECK(glue.terms[1].left == Word({0}));
    CHECK(glue.terms[1].right == Word::unit_at(0));
    CHECK(build_short_resolution(u).d_squared_zero(ahat));
    CHECK_THROWS_AS(build_short_resolution(omit_idempotents(u)), error);
}

TEST_CASE("short resolution: cone differential squares to zero")
{
    std::mt19937_64 rng(31);
    for (uint64_t seed = 0; seed < 6; ++seed) {
        Dga d = make_synthetic(seed);
        ShortResolution res = build_short_resolution(d);
        for (int trial = 0; trial < 10; ++trial) {
            uint32_t hat = static_cast<uint32_t>(rng() % d.gen_count());
            auto side = [&](uint32_t idem, bool left_side) {
                Word w;
                uint32_t want = idem;
                for (uint32_t id = 0; id < d.gen_count(); ++id) {
                    uint32_t g = static_cast<uint32_t>((rng() + id) % d.gen_count());
                    if (left_side ? d.gen(g).right == want : d.gen(g).left == want) {
                        w.letters = {g};
                        return w;
                    }
                }
                w.unit = static_cast<int32_t>(idem);
                return w;
            };
            TriWord t{side(d.gen(hat).left, true), hat, side(d.gen(hat).right, false)};
            CHECK(res.d_squared_zero(t));
        }
    }
}

TEST_CASE("length-graded exactness: unknot dimensions")
{
    ExactnessReport rep = length_graded_exactness(make_unknot(), 4);
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.pass);
    CHECK(rep.rows[2].dim_hat == 2);
    CHECK(rep.rows[2].dim_mid == 3);
    CHECK(rep.rows[2].dim_alg == 1);
    // n = 0: dims (0, #S, #S), mu the multiplication pairing
    CHECK(rep.rows[0].dim_hat == 0);
    CHECK(rep.rows[0].dim_mid == 1);
    CHECK(rep.rows[0].dim_alg == 1);
}

TEST_CASE("length-graded exactness: multi-idempotent, longer words")
{
    ExactnessReport rep = length_graded_exactness(make_hopf_attaching(), 5);
    CHECK(rep.pass);
    CHECK(rep.rows[0].dim_mid == 2); // one s (x) s summand per idempotent
    ExactnessReport trefoil = length_graded_exactness(make_trefoil(), 5);
    CHECK(trefoil.pass);
}

TEST_CASE("length-graded exactness: independent path-incidence rank oracle")
{
    // iota's matrix per word of length n is the incidence of a path with
    // n + 1 vertices; its rank is n, and mu's rank counts distinct words.
    for (const char* name : {"unknot", "trefoil", "hopf-attaching"}) {
        Dga d = registry_example(name);
        ExactnessReport rep = length_graded_exactness(d, 3);
        for (const auto& row : rep.rows) {
            if (row.length == 0)
                continue;
            uint64_t words = row.dim_alg;
            CHECK(row.rank_iota == words * row.length);
            CHECK(row.rank_mu == words);
            CHECK(row.exact);
        }
    }
}

TEST_CASE("length-graded exactness: a two-generator algebra through length 5")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    d.generators = {Generator{"x", 0, 0, 0, Rational(1), GenKind::Chord},
                    Generator{"y", 1, 0, 0, Rational(2), GenKind::Chord}};
    d.differential = {Element::zero(), Element::single(Word({0}))};
    REQUIRE(check_dga(d).ok());
    ExactnessReport rep = length_graded_exactness(d, 5);
    CHECK(rep.pass);
    for (const auto& row : rep.rows)
        if (row.length > 0) {
            // 2^n words of length n; the incidence ranks follow
            uint64_t words = uint64_t(1) << row.length;
            CHECK(row.dim_alg == words);
            CHECK(row.rank_iota == words * row.length);
            CHECK(row.rank_mu == words);
        }
}

TEST_CASE("exactness rejects slashed input")
{
    CHECK_THROWS_AS(length_graded_exactness(omit_idempotents(make_unknot()), 2), error);
}

TEST_CASE("exactness holds on arrow algebras (quotient outputs)")
{
    auto arrow = [](const Dga& base, uint32_t k) {
        auto [c, t] = expand_idempotents(morsify(base), CopyMap::uniform(base, k));
        return ordered_quotient(c);
    };
    CHECK(length_graded_exactness(arrow(make_unknot(), 2), 6).pass);
    CHECK(length_graded_exactness(arrow(make_unknot(), 3), 5).pass);
    CHECK(length_graded_exactness(arrow(make_hopf_attaching(), 2), 5).pass);
    for (uint64_t seed : {1, 3})
        CHECK(length_graded_exactness(arrow(make_synthetic(seed), 2), 4).pass);
}

TEST_CASE("cone of iota at fixed word length has the Betti of A")
{
    // For the unknot d = 0, so the cone differential of the length-n piece is
    // iota itself; exactness makes its homology A_n, one class in degree n.
    Dga u = make_unknot();
    ShortResolution res = build_short_resolution(u);
    for (uint32_t n = 1; n <= 3; ++n) {
        std::vector<Word> words = composable_words(u, n);
        REQUIRE(words.size() == 1);
        ChainComplex src, tgt;
        for (uint32_t l = 1; l <= n; ++l)
            src.basis.push_back({"h" + std::to_string(l), static_cast<int64_t>(n)});
        src.d = Gf2Matrix(n, n);
        for (uint32_t i = 0; i <= n; ++i)
            tgt.basis.push_back({"m" + std::to_string(i), static_cast<int64_t>(n)});
        tgt.d = Gf2Matrix(n + 1, n + 1);
        ChainMap iota_map;
        iota_map.source = &src;
        iota_map.target = &tgt;
        iota_map.matrix = Gf2Matrix(n + 1, n);
        for (uint32_t l = 1; l <= n; ++l) {
            TriWord t;
            t.hat = words[0].letters[l - 1];
            t.left.letters.assign(words[0].letters.begin(), words[0].letters.begin() + (l - 1));
            t.right.letters.assign(words[0].letters.begin() + l, words[0].letters.end());
            if (t.left.empty())
                t.left.unit = 0;
            if (t.right.empty())
                t.right.unit = 0;
            for (const TensorWord& tw : res.iota(t).terms)
                iota_map.matrix.set(static_cast<uint32_t>(tw.left.size()), l - 1);
        }
        PoincarePolynomial p = betti(mapping_cone(iota_map));
        CHECK(p.total() == 1);
        CHECK(p.rank.at(static_cast<int64_t>(n)) == 1);
    }
}
