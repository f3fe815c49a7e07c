#pragma once

#include "cedga/dga.hpp"
#include "cedga/gf2.hpp"

#include <string>
#include <vector>

namespace cedga {

/******** the short resolution S = Cone(iota) ********/

// Basis element a c^ b of A (x) C (x) A: two words around a hatted letter.
struct TriWord {
    Word left;
    uint32_t hat = 0;
    Word right;
    auto operator<=>(const TriWord&) const = default;
};

// F2 sum of triwords.
struct HatElement {
    std::vector<TriWord> terms;

    HatElement() = default;
    explicit HatElement(std::vector<TriWord> ts);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const HatElement&) const = default;
};

HatElement hat_add(const HatElement& a, const HatElement& b);

// Basis element u (x) v of A (x) A.
struct TensorWord {
    Word left;
    Word right;
    auto operator<=>(const TensorWord&) const = default;
};

struct TensorElement {
    std::vector<TensorWord> terms;

    TensorElement() = default;
    explicit TensorElement(std::vector<TensorWord> ts);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const TensorElement&) const = default;
};

TensorElement tensor_add(const TensorElement& a, const TensorElement& b);

struct ShortResolution {
    Dga over;

    // Delta is the derivation with Delta(c) = c^ and Delta(s) = 0.
    HatElement delta(const Word& w) const;
    HatElement delta(const Element& e) const;

    // multiplication of the free bimodule by algebra elements
    HatElement mul_left(const Element& a, const HatElement& t) const;
    HatElement mul_right(const HatElement& t, const Element& b) const;

    // hatted-column differential D(a c^ b) = (da) c^ b + a (hat dc) b + a c^ (db)
    HatElement d_column(const TriWord& t) const;
    // the cone gluing iota(a c^ b) = ac (x) b + a (x) cb
    TensorElement iota(const TriWord& t) const;
    // Kunneth differential on A (x) A
    TensorElement d_tensor(const TensorWord& t) const;
    // m on the A (x) A column is the multiplication, 0 on the hatted column
    Element mult(const TensorWord& t) const;

    // cone differential squared on a basis triword (must vanish)
    bool d_squared_zero(const TriWord& t) const;
};

ShortResolution build_short_resolution(const Dga& d);

/******** word-length-graded exactness of 0 -> ACA -> AA -> A -> 0 ********/

struct ExactnessLengthRow {
    uint32_t length = 0;
    uint64_t dim_hat = 0;   // (A (x) C (x) A)_n
    uint64_t dim_mid = 0;   // (A (x) A)_n
    uint64_t dim_alg = 0;   // A_n
    uint64_t rank_iota = 0;
    uint64_t rank_mu = 0;
    bool exact = false;
};

struct ExactnessReport {
    std::vector<ExactnessLengthRow> rows;
    bool pass = false;
    std::string to_string() const;
};

ExactnessReport length_graded_exactness(const Dga& d, uint32_t max_len);
ExactnessLengthRow exactness_at_length(const Dga& d, uint32_t n);

// all composable words of the given exact length (unit-tagged empties when n=0)
std::vector<Word> composable_words(const Dga& d, uint32_t n);

} // namespace cedga
