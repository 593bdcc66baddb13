#pragma once

// Dense Gaussian elimination over an exact field F.
// F needs is_zero(), inverse(), operator*, operator-=.

#include <cstddef>
#include <optional>
#include <vector>

namespace qhh {

template <class F>
using Matrix = std::vector<std::vector<F>>;

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(Matrix<F>& rows)
{
    std::vector<std::size_t> pivots;
    if (rows.empty())
        return pivots;
    std::size_t ncols = rows[0].size(), r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero())
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        F inv = rows[r][c].inverse();
        for (std::size_t j = c; j < ncols; ++j)
            if (!rows[r][j].is_zero())
                rows[r][j] = rows[r][j] * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero())
                continue;
            F f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (!rows[r][j].is_zero())
                    rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> rows)
{
    return row_reduce(rows).size();
}

// Is v in the span of the given vectors (all of equal length)?
template <class F>
bool in_span(const Matrix<F>& vecs, const std::vector<F>& v)
{
    Matrix<F> a = vecs;
    std::size_t r0 = row_reduce(a).size();
    a.push_back(v);
    return row_reduce(a).size() == r0;
}

} // namespace qhh
