#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cedga/io.hpp"
#include "cedga/registry.hpp"
#include "cedga/rhom.hpp"
#include "cedga/transforms.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace cedga;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("cedga-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("rationals: p/q strings")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(rational_to_string(Rational(3, 4)) == "3/4");
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK(rational_to_string(parse_rational("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational("zebra"), error);
}

TEST_CASE("dga round trip: registry entries re-parse identically")
{
    for (const char* name : {"unknot", "trefoil", "hopf-attaching"}) {
        Dga d = registry_example(name);
        std::string text = serialize_dga(d);
        Dga back = parse_dga(text);
        CHECK(same_dga(d, back));
        CHECK(serialize_dga(back) == text); // canonical form is a fixed point
        CHECK(check_dga(back).ok());
    }
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Dga d = make_synthetic(seed);
        CHECK(same_dga(d, parse_dga(serialize_dga(d))));
    }
}

TEST_CASE("dga round trip: ordering metadata survives")
{
    Dga base = make_unknot();
    auto [c, tmap] = expand_idempotents(morsify(base), CopyMap::uniform(base, 2));
    Dga back = parse_dga(serialize_dga(c));
    REQUIRE(back.ordering.has_value());
    Dga q1 = ordered_quotient(c);
    Dga q2 = ordered_quotient(back);
    CHECK(same_dga(q1, q2));
}

TEST_CASE("minimal document and failure modes")
{
    Dga empty = parse_dga(R"({"ring": {"idempotents": ["s"]}})");
    CHECK(empty.gen_count() == 0);
    CHECK(check_dga(empty).ok());

    CHECK_THROWS_WITH_AS(parse_dga(R"({"ring": {"idempotents": ["s"]},
        "generators": [{"name":"a","degree":1,"left":"s","right":"s"}],
        "differential": {"a": [["ghost"]]}})"),
                         doctest::Contains("undefined generator"), error);

    CHECK_THROWS_WITH_AS(parse_dga(R"({"ring": {"idempotents": ["s"]},
        "generators": [{"name":"a","degree":1,"left":"nope","right":"s"}]})"),
                         doctest::Contains("unknown idempotent"), error);

    CHECK_THROWS_WITH_AS(parse_dga("{"), doctest::Contains("syntax error"), error);
}

TEST_CASE("malformed documents fail with errors, not crashes")
{
    const char* bad[] = {
        R"({"ring": {"idempotents": []}})",                       // empty ring
        R"({"ring": {"idempotents": ["s", "s"]}})",               // duplicate label
        R"({"ring": {"idempotents": ["s"]}, "grading": {"Zmod": 0}})",
        R"({"ring": {"idempotents": ["s"]}, "generators": [{"name": "a"}]})",
        R"({"ring": {"idempotents": ["s"]},
            "generators": [{"name":"a","degree":1,"left":"s","right":"s","action":"1/0"}]})",
        R"({"ring": {"idempotents": ["s"]}, "differential": {"ghost": [[]]}})",
        R"({"ring": {"idempotents": ["s"]},
            "generators": [{"name":"a","degree":1,"left":"s","right":"s"}],
            "differential": {"a": [{"nope": 1}]}})",
        R"([1, 2, 3])",
    };
    for (const char* doc : bad)
        CHECK_THROWS_AS(parse_dga(doc), std::exception);

    Dga u = make_unknot();
    CHECK_THROWS_AS(parse_module(R"({"basis": [{"label": "v", "degree": 0}],
        "d": [[5, 0]]})", u), error);
}

TEST_CASE("Zmod grading round trips")
{
    Dga d;
    d.ring = IdempotentRing({"s"});
    d.grading = GradingSpec::zmod(4);
    d.generators = {Generator{"x", 3, 0, 0, Rational(1), GenKind::Chord}};
    d.differential = {Element::zero()};
    Dga back = parse_dga(serialize_dga(d));
    CHECK(back.grading == GradingSpec::zmod(4));
    CHECK(same_dga(d, back));
}

TEST_CASE("actions are optional and gate the action checks")
{
    Dga d = parse_dga(R"({"ring": {"idempotents": ["s"]},
        "generators": [{"name":"a","degree":1,"left":"s","right":"s"}]})");
    CHECK(!d.actions_in_use);
    Dga with = parse_dga(R"({"ring": {"idempotents": ["s"]},
        "generators": [{"name":"a","degree":1,"left":"s","right":"s","action":"1/2"}]})");
    CHECK(with.actions_in_use);
    CHECK(with.gen(0).action == Rational(1, 2));
}

TEST_CASE("complex and module round trips")
{
    ChainComplex c;
    c.basis = {{"x", 1}, {"y", 0}};
    c.d = Gf2Matrix(2, 2);
    c.d.set(1, 0);
    ChainComplex back = parse_complex(serialize_complex(c));
    CHECK(back.dim() == 2);
    CHECK(back.d.get(1, 0));
    CHECK(betti(back).total() == 0);

    Dga u = make_unknot();
    DgModule v;
    v.over = u;
    v.basis = {{"v", 0, 0}, {"w", 0, 1}};
    v.d = Gf2Matrix(2, 2);
    v.d.set(0, 1);
    v.act.assign(1, Gf2Matrix(2, 2));
    v.validate();
    DgModule vback = parse_module(serialize_module(v), u);
    CHECK(vback.dim() == 2);
    CHECK(vback.d.get(0, 1));
}

TEST_CASE("augmentation round trip")
{
    Dga t = omit_idempotents(make_trefoil());
    auto augs = find_augmentations(t);
    REQUIRE(augs.size() == 5);
    for (const auto& eps : augs) {
        Augmentation back = parse_augmentation(serialize_augmentation(t, eps), t);
        CHECK(back.scalar == eps.scalar);
    }
}

TEST_CASE("capspec files resolve the base reference")
{
    TempDir tmp;
    save_dga(make_trefoil(), tmp.file("trefoil.json"));
    std::ofstream spec(tmp.file("cap.json"));
    spec << R"({"base": "trefoil.json", "counts": {"s": 2}, "potentials": {"s": [1, 0]}})";
    spec.close();
    CapSpec cs = load_capspec(tmp.file("cap.json"));
    CHECK(same_dga(cs.base, make_trefoil()));
    CHECK(cs.copies.count("s") == 2);
    CHECK(cs.copies.potential("s", 1) == 1);
    CHECK(cs.copies.potential("s", 2) == 0);
}

TEST_CASE("golden file: the canonical unknot document is frozen")
{
    // guards the wire format: canonical serialization must not drift
    const std::string golden = R"({
  "differential": {},
  "generators": [
    {
      "action": "1",
      "degree": 1,
      "kind": "chord",
      "left": "s",
      "name": "a",
      "right": "s"
    }
  ],
  "grading": "Z",
  "ring": {
    "idempotents": [
      "s"
    ]
  },
  "slashed": false
}
)";
    CHECK(serialize_dga(make_unknot()) == golden);
    CHECK(same_dga(parse_dga(golden), make_unknot()));
}

TEST_CASE("transform outputs written to disk re-validate bit-identically")
{
    TempDir tmp;
    Dga base = make_hopf_attaching();
    auto [c, tmap] = expand_idempotents(morsify(base), CopyMap::uniform(base, 2));
    Dga q = ordered_quotient(c);
    for (const Dga* d : {&base, &c, &q}) {
        std::string path = tmp.file("out.json");
        save_dga(*d, path);
        Dga back = load_dga(path);
        CHECK(same_dga(*d, back));
        std::string again = serialize_dga(back);
        CHECK(again == serialize_dga(*d));
    }
}
