#pragma once
// Exact rank / kernel / image / solve over an arbitrary field scalar.
//
// Matrices are Eigen dense (small, user-facing) or Eigen sparse (everything
// internal). Elimination is our own: Eigen's factorizations assume magnitude
// pivoting. The reduced row echelon form is unique, so every basis produced
// here is canonical and reproducible regardless of pivot heuristics.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "koszul/fields.hpp"

namespace koszul {

template <class K>
using DMat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using SpMat = Eigen::SparseMatrix<K>;
template <class K>
using Triplet = Eigen::Triplet<K>;

template <class K>
SpMat<K> sp_from_triplets(int rows, int cols, std::vector<Triplet<K>>& ts) {
    SpMat<K> m(rows, cols);
    m.setFromTriplets(ts.begin(), ts.end());
    m.prune([](int, int, const K& v) { return !v.is_zero(); });
    return m;
}

template <class K>
SpMat<K> sp_from_dense(const DMat<K>& d) {
    std::vector<Triplet<K>> ts;
    for (int j = 0; j < d.cols(); ++j)
        for (int i = 0; i < d.rows(); ++i)
            if (!d(i, j).is_zero()) ts.emplace_back(i, j, d(i, j));
    return sp_from_triplets<K>(static_cast<int>(d.rows()), static_cast<int>(d.cols()), ts);
}

template <class K>
DMat<K> sp_to_dense(const SpMat<K>& m, const K& zero) {
    DMat<K> d(m.rows(), m.cols());
    d.setConstant(zero);
    for (int o = 0; o < m.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(m, o); it; ++it)
            d(it.row(), it.col()) = it.value();
    return d;
}

template <class K>
bool sp_equal(const SpMat<K>& a, const SpMat<K>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    SpMat<K> d = a - b;
    for (int o = 0; o < d.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(d, o); it; ++it)
            if (!it.value().is_zero()) return false;
    return true;
}

template <class K>
bool sp_is_zero(const SpMat<K>& a) {
    for (int o = 0; o < a.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(a, o); it; ++it)
            if (!it.value().is_zero()) return false;
    return true;
}

template <class K>
SpMat<K> sp_scale(const SpMat<K>& a, const K& s) {
    std::vector<Triplet<K>> ts;
    for (int o = 0; o < a.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(a, o); it; ++it) {
            K v = it.value() * s;
            if (!v.is_zero()) ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), v);
        }
    return sp_from_triplets<K>(static_cast<int>(a.rows()), static_cast<int>(a.cols()), ts);
}

template <class K>
SpMat<K> sp_transpose(const SpMat<K>& a) {
    SpMat<K> t = a.transpose();
    return t;
}

template <class K>
SpMat<K> sp_id(int n, const K& one) {
    std::vector<Triplet<K>> ts;
    ts.reserve(n);
    for (int i = 0; i < n; ++i) ts.emplace_back(i, i, one);
    return sp_from_triplets<K>(n, n, ts);
}

/******** sparse row echelon ********/

template <class K>
using SRow = std::vector<std::pair<int, K>>;  // sorted by column

namespace detail {

template <class K>
SRow<K> row_axpy(const SRow<K>& r, const SRow<K>& pivot, const K& coef) {
    // r + coef * pivot, merged
    SRow<K> out;
    out.reserve(r.size() + pivot.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || pivot[j].first < r[i].first) {
            K v = pivot[j].second * coef;
            if (!v.is_zero()) out.emplace_back(pivot[j].first, v);
            ++j;
        } else {
            K v = r[i].second + pivot[j].second * coef;
            if (!v.is_zero()) out.emplace_back(r[i].first, v);
            ++i; ++j;
        }
    }
    return out;
}

}  // namespace detail

template <class K>
struct Echelon {
    int cols = 0;
    int rank = 0;
    std::vector<int> pivot_cols;          // ascending
    std::vector<SRow<K>> rows;            // reduced rows, rows[k] has pivot pivot_cols[k], value 1
    std::map<int, int> col_to_row;
    bool is_pivot(int c) const { return col_to_row.count(c) != 0; }
};

template <class K>
Echelon<K> echelon_form(const SpMat<K>& m) {
    const int R = static_cast<int>(m.rows()), C = static_cast<int>(m.cols());
    // gather rows
    std::vector<SRow<K>> rows(R);
    for (int o = 0; o < m.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(m, o); it; ++it)
            if (!it.value().is_zero())
                rows[it.row()].emplace_back(static_cast<int>(it.col()), it.value());
    for (auto& r : rows) std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });

    std::vector<std::vector<int>> bucket(C);  // by leading column
    for (int i = 0; i < R; ++i)
        if (!rows[i].empty()) bucket[rows[i].front().first].push_back(i);

    Echelon<K> e;
    e.cols = C;
    std::vector<int> pivot_row_ids;
    for (int c = 0; c < C; ++c) {
        auto& cand = bucket[c];
        if (cand.empty()) continue;
        // smallest row wins on ties; fewest nonzeros first to limit fill
        int best = cand[0];
        for (int id : cand)
            if (rows[id].size() < rows[best].size() || (rows[id].size() == rows[best].size() && id < best))
                best = id;
        // normalize
        K inv = rows[best].front().second.inv();
        for (auto& [col, v] : rows[best]) v = v * inv;
        // eliminate from the other candidates
        for (int id : cand) {
            if (id == best) continue;
            K coef = -rows[id].front().second;
            rows[id] = detail::row_axpy(rows[id], rows[best], coef);
            if (!rows[id].empty()) bucket[rows[id].front().first].push_back(id);
        }
        cand.clear();
        pivot_row_ids.push_back(best);
        e.pivot_cols.push_back(c);
    }
    e.rank = static_cast<int>(e.pivot_cols.size());
    // back-substitution for the reduced form
    e.rows.resize(e.rank);
    for (int k = e.rank - 1; k >= 0; --k) {
        SRow<K> r = rows[pivot_row_ids[k]];
        for (int l = e.rank - 1; l > k; --l) {
            int pc = e.pivot_cols[l];
            auto it = std::lower_bound(r.begin(), r.end(), pc,
                                       [](const std::pair<int, K>& a, int c) { return a.first < c; });
            if (it != r.end() && it->first == pc) {
                K coef = -it->second;
                r = detail::row_axpy(r, e.rows[l], coef);
            }
        }
        e.rows[k] = std::move(r);
    }
    for (int k = 0; k < e.rank; ++k) e.col_to_row[e.pivot_cols[k]] = k;
    return e;
}

template <class K>
int rank_of(const SpMat<K>& m) { return echelon_form(m).rank; }

/// canonical kernel basis: one column per free column, unit there
template <class K>
SpMat<K> kernel_basis(const SpMat<K>& m) {
    Echelon<K> e = echelon_form(m);
    const int C = e.cols;
    std::vector<Triplet<K>> ts;
    int out = 0;
    for (int f = 0; f < C; ++f) {
        if (e.is_pivot(f)) continue;
        ts.emplace_back(f, out, K(1));
        for (int k = 0; k < e.rank; ++k) {
            const SRow<K>& r = e.rows[k];
            auto it = std::lower_bound(r.begin(), r.end(), f,
                                       [](const std::pair<int, K>& a, int c) { return a.first < c; });
            if (it != r.end() && it->first == f)
                ts.emplace_back(e.pivot_cols[k], out, -it->second);
        }
        ++out;
    }
    return sp_from_triplets<K>(C, out, ts);
}

/// pivot columns of m itself: a canonical basis of the column space
template <class K>
SpMat<K> image_basis(const SpMat<K>& m) {
    Echelon<K> e = echelon_form(m);
    std::vector<Triplet<K>> ts;
    std::map<int, int> keep;  // col -> output index
    for (size_t k = 0; k < e.pivot_cols.size(); ++k) keep[e.pivot_cols[k]] = static_cast<int>(k);
    for (int o = 0; o < m.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(m, o); it; ++it) {
            auto f = keep.find(static_cast<int>(it.col()));
            if (f != keep.end() && !it.value().is_zero())
                ts.emplace_back(static_cast<int>(it.row()), f->second, it.value());
        }
    return sp_from_triplets<K>(static_cast<int>(m.rows()), e.rank, ts);
}

/// solve m * x = b column-wise, free variables set to zero; nullopt if any
/// column is unsolvable
template <class K>
std::optional<SpMat<K>> solve(const SpMat<K>& m, const SpMat<K>& b) {
    if (m.rows() != b.rows()) throw std::invalid_argument("solve: row counts differ");
    const int C = static_cast<int>(m.cols()), W = static_cast<int>(b.cols());
    // eliminate the augmented matrix [m | b]
    std::vector<Triplet<K>> ts;
    for (int o = 0; o < m.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(m, o); it; ++it)
            ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int o = 0; o < b.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(b, o); it; ++it)
            ts.emplace_back(static_cast<int>(it.row()), C + static_cast<int>(it.col()), it.value());
    SpMat<K> aug = sp_from_triplets<K>(static_cast<int>(m.rows()), C + W, ts);
    Echelon<K> e = echelon_form(aug);
    for (int pc : e.pivot_cols)
        if (pc >= C) return std::nullopt;
    std::vector<Triplet<K>> xs;
    for (int k = 0; k < e.rank; ++k)
        for (const auto& [col, v] : e.rows[k])
            if (col >= C) xs.emplace_back(e.pivot_cols[k], col - C, v);
    return sp_from_triplets<K>(C, W, xs);
}

/******** dense wrappers (the user-facing matrix API) ********/

template <class K>
struct RankKernelImage {
    int rank;
    DMat<K> kernel;
    DMat<K> image;
};

template <class K>
RankKernelImage<K> rank_kernel_image(const DMat<K>& m, const K& zero) {
    SpMat<K> s = sp_from_dense(m);
    return {rank_of(s), sp_to_dense(kernel_basis(s), zero), sp_to_dense(image_basis(s), zero)};
}

template <class K>
std::optional<DMat<K>> solve_dense(const DMat<K>& m, const DMat<K>& b, const K& zero) {
    auto x = solve(sp_from_dense(m), sp_from_dense(b));
    if (!x) return std::nullopt;
    return sp_to_dense(*x, zero);
}

/// horizontal concatenation
template <class K>
SpMat<K> sp_hcat(const SpMat<K>& a, const SpMat<K>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    std::vector<Triplet<K>> ts;
    for (int o = 0; o < a.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(a, o); it; ++it)
            ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int o = 0; o < b.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(b, o); it; ++it)
            ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()) + static_cast<int>(a.cols()), it.value());
    return sp_from_triplets<K>(static_cast<int>(a.rows()), static_cast<int>(a.cols() + b.cols()), ts);
}

}  // namespace koszul
