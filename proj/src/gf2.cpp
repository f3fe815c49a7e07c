#include "cedga/gf2.hpp"

#include <algorithm>
#include <iterator>
#include <map>

namespace cedga {

Gf2Row gf2_add(const Gf2Row& a, const Gf2Row& b)
{
    Gf2Row out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void Gf2Matrix::set(uint32_t r, uint32_t c)
{
    auto& v = row[r];
    auto it = std::lower_bound(v.begin(), v.end(), c);
    if (it != v.end() && *it == c)
        v.erase(it);
    else
        v.insert(it, c);
}

bool Gf2Matrix::get(uint32_t r, uint32_t c) const
{
    const auto& v = row[r];
    return std::binary_search(v.begin(), v.end(), c);
}

std::vector<uint8_t> Gf2Matrix::apply_dense(const std::vector<uint8_t>& v) const
{
    std::vector<uint8_t> out(rows, 0);
    for (uint32_t r = 0; r < rows; ++r) {
        uint8_t s = 0;
        for (uint32_t c : row[r])
            s ^= v[c];
        out[r] = s;
    }
    return out;
}

Gf2Matrix Gf2Matrix::transpose() const
{
    Gf2Matrix t(cols, rows);
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c : row[r])
            t.row[c].push_back(r);
    for (auto& v : t.row)
        std::sort(v.begin(), v.end());
    return t;
}

Gf2Matrix Gf2Matrix::compose(const Gf2Matrix& rhs) const
{
    // (this * rhs): rows of this, cols of rhs
    Gf2Matrix out(rows, rhs.cols);
    for (uint32_t r = 0; r < rows; ++r) {
        Gf2Row acc;
        for (uint32_t k : row[r])
            acc = gf2_add(acc, rhs.row[k]);
        out.row[r] = std::move(acc);
    }
    return out;
}

bool Gf2Matrix::is_zero() const
{
    for (const auto& v : row)
        if (!v.empty())
            return false;
    return true;
}

namespace {

// Eliminate rows in place; returns pivot column -> reduced row.
std::map<uint32_t, Gf2Row> echelon(std::vector<Gf2Row> rows)
{
    std::map<uint32_t, Gf2Row> pivots;
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        while (!r.empty()) {
            auto it = pivots.find(r.front());
            if (it == pivots.end())
                break;
            r = gf2_add(r, it->second);
        }
        if (!r.empty()) {
            uint32_t p = r.front();
            pivots.emplace(p, std::move(r));
        }
    }
    return pivots;
}

} // namespace

uint32_t gf2_rank(const Gf2Matrix& m)
{
    return static_cast<uint32_t>(echelon(m.row).size());
}

std::vector<Gf2Row> gf2_nullspace(const Gf2Matrix& m)
{
    // Column echelon on the transpose: track combinations.
    std::map<uint32_t, std::pair<Gf2Row, Gf2Row>> pivots; // pivot row idx -> (column, combo)
    std::vector<Gf2Row> kernel;
    Gf2Matrix t = m.transpose(); // rows of t = columns of m
    for (uint32_t c = 0; c < t.rows; ++c) {
        Gf2Row col = t.row[c];
        Gf2Row combo = {c};
        while (!col.empty()) {
            auto it = pivots.find(col.front());
            if (it == pivots.end())
                break;
            col = gf2_add(col, it->second.first);
            combo = gf2_add(combo, it->second.second);
        }
        if (col.empty())
            kernel.push_back(std::move(combo));
        else {
            uint32_t p = col.front();
            pivots.emplace(p, std::make_pair(std::move(col), std::move(combo)));
        }
    }
    return kernel;
}

bool gf2_solve(const Gf2Matrix& m, const std::vector<uint8_t>& b, std::vector<uint8_t>& x)
{
    // Gaussian elimination on [A | b] via columns of A.
    std::map<uint32_t, std::pair<Gf2Row, Gf2Row>> pivots; // pivot -> (column, combo)
    Gf2Matrix t = m.transpose();
    Gf2Row rhs;
    for (uint32_t r = 0; r < m.rows; ++r)
        if (b[r])
            rhs.push_back(r);
    for (uint32_t c = 0; c < t.rows; ++c) {
        Gf2Row col = t.row[c];
        Gf2Row combo = {c};
        while (!col.empty()) {
            auto it = pivots.find(col.front());
            if (it == pivots.end())
                break;
            col = gf2_add(col, it->second.first);
            combo = gf2_add(combo, it->second.second);
        }
        if (!col.empty()) {
            uint32_t p = col.front();
            pivots.emplace(p, std::make_pair(std::move(col), std::move(combo)));
        }
    }
    Gf2Row sol;
    while (!rhs.empty()) {
        auto it = pivots.find(rhs.front());
        if (it == pivots.end())
            return false;
        rhs = gf2_add(rhs, it->second.first);
        sol = gf2_add(sol, it->second.second);
    }
    x.assign(m.cols, 0);
    for (uint32_t c : sol)
        x[c] ^= 1;
    return true;
}

} // namespace cedga
