#pragma once

#include <cstdint>
#include <vector>

namespace cedga {

/******** GF(2) sparse linear algebra ********/

// A row is a sorted vector of column indices with coefficient 1.
using Gf2Row = std::vector<uint32_t>;

// row addition over GF(2) = symmetric difference of index sets
Gf2Row gf2_add(const Gf2Row& a, const Gf2Row& b);

// Sparse GF(2) matrix, row major. Rows need not be sorted on input to the
// mutating helpers below; the reduction sorts as it goes.
struct Gf2Matrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<Gf2Row> row;

    Gf2Matrix() = default;
    Gf2Matrix(uint32_t r, uint32_t c) : rows(r), cols(c), row(r) {}

    void set(uint32_t r, uint32_t c);
    bool get(uint32_t r, uint32_t c) const;
    std::vector<uint8_t> apply_dense(const std::vector<uint8_t>& v) const; // y = M v
    Gf2Matrix transpose() const;
    Gf2Matrix compose(const Gf2Matrix& rhs) const; // this * rhs
    bool is_zero() const;
};

// Row echelon rank with deterministic lowest-index pivoting.
uint32_t gf2_rank(const Gf2Matrix& m);

// Basis of the right kernel {v : M v = 0}, each vector a sorted index set.
std::vector<Gf2Row> gf2_nullspace(const Gf2Matrix& m);

// Solve M x = b; returns false when inconsistent.
bool gf2_solve(const Gf2Matrix& m, const std::vector<uint8_t>& b, std::vector<uint8_t>& x);

} // namespace cedga
