#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace cedga {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rational = boost::rational<long long>;

/******** Grading ********/

// Degrees live in Z or in a cyclic group Z/n (n >= 1).
struct GradingSpec {
    enum class Kind { Z, Zmod } kind = Kind::Z;
    int64_t modulus = 0; // only for Zmod

    static GradingSpec z() { return {}; }
    static GradingSpec zmod(int64_t n);

    int64_t normalize(int64_t d) const;
    bool same_degree(int64_t a, int64_t b) const { return normalize(a) == normalize(b); }
    bool operator==(const GradingSpec&) const = default;
};

/******** Idempotent rings and k_S (x) k_S ********/

struct IdempotentRing {
    std::vector<std::string> labels;

    IdempotentRing() = default;
    explicit IdempotentRing(std::vector<std::string> l);

    uint32_t size() const { return static_cast<uint32_t>(labels.size()); }
    uint32_t index_of(const std::string& label) const; // throws on unknown label
    bool operator==(const IdempotentRing&) const = default;
};

// An F2 element of k_S (x) k_S: a set of ordered idempotent pairs.
struct KeElement {
    std::vector<std::pair<uint32_t, uint32_t>> pairs; // sorted, distinct

    static KeElement zero() { return {}; }
    static KeElement pure(uint32_t s, uint32_t t) { return {{{s, t}}}; }
    bool is_zero() const { return pairs.empty(); }
    bool operator==(const KeElement&) const = default;
};

KeElement ke_add(const KeElement& a, const KeElement& b);
// The product (s (x) s') * (t (x) t') = lambda(s't) s (x) t', extended bilinearly.
KeElement star(const KeElement& f, const KeElement& g);
// Idempotent scaling in the first / second slot (filters pairs).
KeElement ke_scale_left(uint32_t s, const KeElement& f);
KeElement ke_scale_right(const KeElement& f, uint32_t s);

/******** Generators, words, elements ********/

enum class GenKind : uint8_t { Chord, DoublePoint, EUnit, Auxiliary };

std::string to_string(GenKind k);
GenKind gen_kind_from_string(const std::string& s);

struct Generator {
    std::string name;
    int64_t degree = 0;
    uint32_t left = 0;  // s_-
    uint32_t right = 0; // s_+
    Rational action = Rational(0);
    GenKind kind = GenKind::Chord;
};

// A composable word in generator ids. The empty word carries the idempotent
// of the unit summand it lives in; unit == kUnitGlobal in slashed algebras
// where the constant term is the global 1.
struct Word {
    static constexpr int32_t kUnitGlobal = -1;

    std::vector<uint32_t> letters;
    int32_t unit = kUnitGlobal; // meaningful only when letters is empty

    Word() = default;
    explicit Word(std::vector<uint32_t> ls) : letters(std::move(ls)) {}
    static Word unit_at(int32_t s) { Word w; w.unit = s; return w; }

    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    auto operator<=>(const Word&) const = default;
};

// F2 linear combination of words: a sorted, deduplicated set.
struct Element {
    std::vector<Word> words;

    Element() = default;
    explicit Element(std::vector<Word> ws);
    static Element zero() { return {}; }
    static Element single(Word w) { return Element{{std::move(w)}}; }

    bool is_zero() const { return words.empty(); }
    size_t size() const { return words.size(); }
    bool operator==(const Element&) const = default;
};

Element add(const Element& a, const Element& b); // symmetric difference

/******** The DGA ********/

// Copy bookkeeping attached by expand_idempotents: per target idempotent the
// base idempotent, the 1-based copy index and the Maslov potential offset.
struct CopyOrdering {
    std::vector<std::string> base_labels;
    std::vector<uint32_t> index;
    std::vector<int64_t> potential;
    bool operator==(const CopyOrdering&) const = default;
};

struct ValidationIssue {
    enum class Kind { Composability, Degree, Action, UnitTerm, DSquared } kind;
    std::string generator;
    std::string message;
    Element witness; // for DSquared: the nonzero residual
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

struct Dga {
    IdempotentRing ring;
    GradingSpec grading;
    bool slashed = false;        // composability waived, coefficients collapsed to F2
    bool actions_in_use = true;
    std::vector<Generator> generators;
    std::vector<Element> differential; // indexed like generators
    std::optional<CopyOrdering> ordering;

    uint32_t gen_count() const { return static_cast<uint32_t>(generators.size()); }
    uint32_t gen_index(const std::string& name) const; // throws on unknown
    const Generator& gen(uint32_t id) const { return generators[id]; }

    int64_t word_degree(const Word& w) const;
    Rational word_action(const Word& w) const;
    // endpoints of a word; unit words use their tag (global unit has none)
    uint32_t word_left(const Word& w) const;
    uint32_t word_right(const Word& w) const;
    bool word_composable(const Word& w) const;
};

// Structural equality after canonical renumbering (sort generators by name).
Dga canonical_form(const Dga& d);
bool same_dga(const Dga& a, const Dga& b);

/******** Operations ********/

Word concat(const Word& u, const Word& v); // raw concatenation of letters
Element multiply(const Element& a, const Element& b, const Dga& d);
Element multiply(const Word& u, const Word& v, const Dga& d);
Element differentiate(const Element& a, const Dga& d);
// jobs > 1 runs the d^2 computations in a parallel map over generators
ValidationReport check_dga(const Dga& d, unsigned jobs = 1);

// Extension of a bimodule map eps: C -> k_S^e to words and elements,
// eps(x1...xn) = eps(x1) * ... * eps(xn), eps(empty@s) = s (x) s.
KeElement evaluate_ke_morphism(const std::vector<KeElement>& eps, const Word& w, const Dga& d);
KeElement evaluate_ke_morphism(const std::vector<KeElement>& eps, const Element& x, const Dga& d);

std::string word_to_string(const Word& w, const Dga& d);
std::string element_to_string(const Element& e, const Dga& d);

} // namespace cedga
