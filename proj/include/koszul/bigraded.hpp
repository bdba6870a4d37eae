#pragma once
// Bigraded complexes with internal-degree-preserving differentials.
// Differentials have bidegree (1,0): they raise the cohomological index i and
// fix the internal index j, so every computation restricts losslessly to a
// window of internal degrees.

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

struct Bidegree {
    int i = 0;  // cohomological
    int j = 0;  // internal
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    Bidegree operator+(const Bidegree& o) const { return {i + o.i, j + o.j}; }
    Bidegree operator-(const Bidegree& o) const { return {i - o.i, j - o.j}; }
};

inline std::string to_string(Bidegree b) {
    return "(" + std::to_string(b.i) + "," + std::to_string(b.j) + ")";
}

struct Window {
    int lo = 0, hi = 0;  // internal degree bounds, inclusive
    Window() = default;
    Window(int l, int h) : lo(l), hi(h) {
        if (l > h) throw std::invalid_argument("window: j_min > j_max");
    }
    bool contains(int j) const { return lo <= j && j <= hi; }
};

struct WindowError : std::runtime_error {
    Window required;
    WindowError(const std::string& what, Window req)
        : std::runtime_error(what + " (required window [" + std::to_string(req.lo) + "," +
                             std::to_string(req.hi) + "])"),
          required(req) {}
};

template <class K>
struct BigradedComplex {
    std::map<Bidegree, int> dims;
    std::map<Bidegree, SpMat<K>> diff;  // block at b maps b -> b + (1,0)

    int dim_at(Bidegree b) const {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    SpMat<K> diff_at(Bidegree b) const {
        auto it = diff.find(b);
        if (it != diff.end()) return it->second;
        return SpMat<K>(dim_at({b.i + 1, b.j}), dim_at(b));
    }
    void set_dim(Bidegree b, int d) {
        if (d > 0) dims[b] = d;
    }
    void set_diff(Bidegree b, SpMat<K> m) {
        if (!sp_is_zero(m)) diff[b] = std::move(m);
    }

    std::set<int> internal_degrees() const {
        std::set<int> js;
        for (auto& [b, d] : dims) js.insert(b.j);
        return js;
    }
    // cohomological support at internal degree j
    std::vector<int> column(int j) const {
        std::vector<int> is;
        for (auto& [b, d] : dims)
            if (b.j == j) is.push_back(b.i);
        return is;
    }

    void check(std::optional<Window> w = std::nullopt) const {
        for (auto& [b, m] : diff) {
            if (w && !w->contains(b.j)) continue;
            if (m.rows() != dim_at({b.i + 1, b.j}) || m.cols() != dim_at(b))
                throw std::runtime_error("complex: block shape mismatch at " + to_string(b));
            SpMat<K> next = diff_at({b.i + 1, b.j});
            if (!sp_is_zero(SpMat<K>(next * m)))
                throw std::runtime_error("complex: d^2 != 0 at " + to_string(b));
        }
    }
};

template <class K>
struct ComplexMap {
    const BigradedComplex<K>* src = nullptr;
    const BigradedComplex<K>* tgt = nullptr;
    std::map<Bidegree, SpMat<K>> blocks;

    SpMat<K> block_at(Bidegree b) const {
        auto it = blocks.find(b);
        if (it != blocks.end()) return it->second;
        return SpMat<K>(tgt->dim_at(b), src->dim_at(b));
    }
    void check(std::optional<Window> w = std::nullopt) const {
        for (auto& [b, m] : blocks)
            if (m.rows() != tgt->dim_at(b) || m.cols() != src->dim_at(b))
                throw std::runtime_error("map: block shape mismatch at " + to_string(b));
        std::set<Bidegree> where;
        for (auto& [b, m] : blocks) where.insert(b);
        for (auto& [b, m] : src->diff) where.insert(b);
        for (Bidegree b : where) {
            if (w && !w->contains(b.j)) continue;
            Bidegree b1{b.i + 1, b.j};
            SpMat<K> lhs = tgt->diff_at(b) * block_at(b);
            SpMat<K> rhs = block_at(b1) * src->diff_at(b);
            if (!sp_equal(SpMat<K>(lhs), SpMat<K>(rhs)))
                throw std::runtime_error("map: does not commute with d at " + to_string(b));
        }
    }
};

/******** cohomology ********/

template <class K>
struct CohomologyTable {
    std::map<Bidegree, int> dims;
    std::map<Bidegree, SpMat<K>> reps;  // optional cycle representatives (columns)

    int dim_at(Bidegree b) const {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    bool same_dims(const CohomologyTable& o) const { return dims == o.dims; }
};

// classes at one bidegree with enough data to compute induced maps
template <class K>
struct HSlice {
    int space_dim = 0;
    SpMat<K> reps;        // space_dim x h, cycle representatives
    SpMat<K> boundaries;  // space_dim x r, image basis of the previous block
    int h() const { return static_cast<int>(reps.cols()); }

    // coordinates of cycle columns z in H: solve [reps | boundaries] c = z
    SpMat<K> coords(const SpMat<K>& z) const {
        if (z.cols() == 0 || reps.cols() + boundaries.cols() == 0)
            return SpMat<K>(h(), static_cast<int>(z.cols()));
        auto sol = solve(sp_hcat(reps, boundaries), z);
        if (!sol) throw std::runtime_error("cohomology coords: vector is not a cycle mod boundaries");
        std::vector<Triplet<K>> ts;
        for (int o = 0; o < sol->outerSize(); ++o)
            for (typename SpMat<K>::InnerIterator it(*sol, o); it; ++it)
                if (it.row() < h()) ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
        return sp_from_triplets<K>(h(), static_cast<int>(z.cols()), ts);
    }
};

template <class K>
HSlice<K> cohomology_at(const BigradedComplex<K>& c, Bidegree b) {
    HSlice<K> s;
    s.space_dim = c.dim_at(b);
    SpMat<K> d = c.diff_at(b);
    SpMat<K> dprev = c.diff_at({b.i - 1, b.j});
    SpMat<K> ker = kernel_basis(d);
    s.boundaries = image_basis(dprev);
    // choose kernel columns independent modulo the boundaries, greedily in
    // canonical order; the original columns are kept as representatives
    std::vector<Triplet<K>> ts;
    int out = 0;
    std::vector<SRow<K>> span;  // echelon of already-spanned vectors, leads normalized
    auto reduce_vec = [&](SRow<K> v) {
        for (auto& r : span) {
            if (v.empty()) break;
            int lead = r.front().first;
            auto it = std::lower_bound(v.begin(), v.end(), lead,
                                       [](const std::pair<int, K>& a, int cc) { return a.first < cc; });
            if (it != v.end() && it->first == lead) {
                K coef = -it->second;
                v = detail::row_axpy(v, r, coef);
            }
        }
        return v;
    };
    auto insert_vec = [&](SRow<K> v) {
        v = reduce_vec(std::move(v));
        if (v.empty()) return false;
        K inv = v.front().second.inv();
        for (auto& [c2, x] : v) x = x * inv;
        // keep rows ordered by leading entry
        auto pos = std::lower_bound(span.begin(), span.end(), v.front().first,
                                    [](const SRow<K>& r, int lead) { return r.front().first < lead; });
        span.insert(pos, std::move(v));
        return true;
    };
    for (int o = 0; o < s.boundaries.outerSize(); ++o) {
        SRow<K> v;
        for (typename SpMat<K>::InnerIterator it(s.boundaries, o); it; ++it)
            v.emplace_back(static_cast<int>(it.row()), it.value());
        insert_vec(std::move(v));
    }
    for (int k = 0; k < ker.cols(); ++k) {
        SRow<K> v;
        for (typename SpMat<K>::InnerIterator it(ker, k); it; ++it)
            v.emplace_back(static_cast<int>(it.row()), it.value());
        if (insert_vec(v)) {
            for (auto& [r2, x] : v) ts.emplace_back(r2, out, x);
            ++out;
        }
    }
    s.reps = sp_from_triplets<K>(s.space_dim, out, ts);
    return s;
}

template <class K>
CohomologyTable<K> cohomology(const BigradedComplex<K>& c, Window w, bool want_reps = false) {
    CohomologyTable<K> t;
    for (auto& [b, dim] : c.dims) {
        if (!w.contains(b.j)) continue;
        HSlice<K> s = cohomology_at(c, b);
        if (s.h() > 0) {
            t.dims[b] = s.h();
            if (want_reps) t.reps[b] = s.reps;
        }
    }
    return t;
}

/******** shift, twist, cone ********/

// dims'(i,j) = dims(i+n, j); differential picks up (-1)^n
template <class K>
BigradedComplex<K> shift(const BigradedComplex<K>& c, int n) {
    BigradedComplex<K> out;
    for (auto& [b, d] : c.dims) out.dims[{b.i - n, b.j}] = d;
    for (auto& [b, m] : c.diff) {
        SpMat<K> mm = (n % 2 == 0) ? m : sp_scale(m, K(-1));
        out.diff[{b.i - n, b.j}] = std::move(mm);
    }
    return out;
}

// dims'(i,j) = dims(i, j-m)
template <class K>
BigradedComplex<K> twist(const BigradedComplex<K>& c, int m) {
    BigradedComplex<K> out;
    for (auto& [b, d] : c.dims) out.dims[{b.i, b.j + m}] = d;
    for (auto& [b, mat] : c.diff) out.diff[{b.i, b.j + m}] = mat;
    return out;
}

// standard mapping cone: cone(f) = src[1] (+) tgt,
// d(m, n) = (-d_src m, f m + d_tgt n)
template <class K>
BigradedComplex<K> cone(const ComplexMap<K>& f) {
    BigradedComplex<K> out;
    std::set<Bidegree> where;
    for (auto& [b, d] : f.src->dims) where.insert({b.i - 1, b.j});
    for (auto& [b, d] : f.tgt->dims) where.insert(b);
    for (Bidegree b : where) {
        int ds = f.src->dim_at({b.i + 1, b.j});
        int dt = f.tgt->dim_at(b);
        if (ds + dt > 0) out.dims[b] = ds + dt;
    }
    for (Bidegree b : where) {
        Bidegree b1{b.i + 1, b.j};
        int ds = f.src->dim_at(b1), dt = f.tgt->dim_at(b);
        int es = f.src->dim_at({b.i + 2, b.j}), et = f.tgt->dim_at(b1);
        if ((ds + dt) == 0 || (es + et) == 0) continue;
        std::vector<Triplet<K>> ts;
        SpMat<K> a = f.src->diff_at(b1);  // ds -> es
        for (int o = 0; o < a.outerSize(); ++o)
            for (typename SpMat<K>::InnerIterator it(a, o); it; ++it)
                ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), -it.value());
        SpMat<K> fb = f.block_at(b1);  // ds -> et
        for (int o = 0; o < fb.outerSize(); ++o)
            for (typename SpMat<K>::InnerIterator it(fb, o); it; ++it)
                ts.emplace_back(es + static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
        SpMat<K> dtm = f.tgt->diff_at(b);  // dt -> et
        for (int o = 0; o < dtm.outerSize(); ++o)
            for (typename SpMat<K>::InnerIterator it(dtm, o); it; ++it)
                ts.emplace_back(es + static_cast<int>(it.row()), ds + static_cast<int>(it.col()), it.value());
        out.set_diff(b, sp_from_triplets<K>(es + et, ds + dt, ts));
    }
    return out;
}

/// true iff f induces isomorphisms on cohomology at every bidegree with j in w
template <class K>
bool is_quasi_iso(const ComplexMap<K>& f, Window w) {
    std::set<Bidegree> where;
    for (auto& [b, d] : f.src->dims)
        if (w.contains(b.j)) where.insert(b);
    for (auto& [b, d] : f.tgt->dims)
        if (w.contains(b.j)) where.insert(b);
    for (Bidegree b : where) {
        HSlice<K> hs = cohomology_at(*f.src, b);
        HSlice<K> ht = cohomology_at(*f.tgt, b);
        if (hs.h() != ht.h()) return false;
        if (hs.h() == 0) continue;
        SpMat<K> mapped = f.block_at(b) * hs.reps;
        SpMat<K> co = ht.coords(SpMat<K>(mapped));
        if (rank_of(co) != ht.h()) return false;
    }
    return true;
}

/// sorted (i, j, dim) triples, zero entries omitted
template <class K>
std::vector<std::tuple<int, int, int>> hilbert(const CohomologyTable<K>& t) {
    std::vector<std::tuple<int, int, int>> out;
    for (auto& [b, d] : t.dims)
        if (d > 0) out.emplace_back(b.i, b.j, d);
    return out;
}

template <class K>
long euler_characteristic(const std::map<Bidegree, int>& dims, int j) {
    long chi = 0;
    for (auto& [b, d] : dims)
        if (b.j == j) chi += (b.i % 2 == 0) ? d : -d;
    return chi;
}

}  // namespace koszul
