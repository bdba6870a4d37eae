#pragma once
// Generator complexes and the free graded-commutative dg-algebras on them.
//
// A generator complex holds free components V^i (internal degree +2 or -2)
// with differential matrices V^i -> V^{i+1}. Sym of a (possibly shifted)
// generator complex is presented by its generators: monomial bases per
// bidegree are enumerated on demand and memoized, products carry the Koszul
// sign, and the differential is the graded Leibniz extension of the
// generator images.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "koszul/bigraded.hpp"

namespace koszul {

template <class K>
struct GeneratorComplex {
    std::map<int, int> ranks;          // degree -> rank (entries may be zero)
    std::map<int, DMat<K>> diffs;      // degree i -> matrix V^i -> V^{i+1}
    int internal_degree = 2;           // +2 for X-like, -2 for Y-like

    int rank_at(int i) const {
        auto it = ranks.find(i);
        return it == ranks.end() ? 0 : it->second;
    }
    DMat<K> diff_at(int i, const K& zero) const {
        auto it = diffs.find(i);
        if (it != diffs.end()) return it->second;
        DMat<K> z(rank_at(i + 1), rank_at(i));
        z.setConstant(zero);
        return z;
    }

    void check(const K& zero) const {
        for (auto& [i, m] : diffs) {
            if (m.rows() != rank_at(i + 1) || m.cols() != rank_at(i))
                throw std::invalid_argument("generator complex: diff shape at degree " + std::to_string(i));
        }
        for (auto& [i, m] : diffs) {
            DMat<K> next = diff_at(i + 1, zero);
            if (next.rows() == 0 || m.cols() == 0) continue;
            DMat<K> comp = next * m;
            for (int a = 0; a < comp.rows(); ++a)
                for (int b = 0; b < comp.cols(); ++b)
                    if (!comp(a, b).is_zero())
                        throw std::invalid_argument("generator complex: d^2 != 0 at degree " + std::to_string(i));
        }
    }
};

/// Y = X^dual[-1]: component Y^i = (V^{1-i})^dual in internal degree -2,
/// with d_Y(y)(v) = (-1)^{|y|} y(d_X(v)); in matrices d_Y at degree i is
/// (-1)^i times the transpose of the X differential V^{-i} -> V^{1-i}.
template <class K>
GeneratorComplex<K> build_Y(const GeneratorComplex<K>& X, const K& zero) {
    if (X.internal_degree != 2) throw std::invalid_argument("build_Y: X must have internal degree 2");
    X.check(zero);
    GeneratorComplex<K> Y;
    Y.internal_degree = -2;
    for (auto& [i, r] : X.ranks) Y.ranks[1 - i] = r;
    for (auto& [deg, m] : X.diffs) {
        // d_X^deg : V^deg -> V^{deg+1}; pairs with d_Y at degree i = -deg
        int i = -deg;
        DMat<K> t = m.transpose();
        if (i % 2 != 0)
            for (int a = 0; a < t.rows(); ++a)
                for (int b = 0; b < t.cols(); ++b) t(a, b) = -t(a, b);
        if (t.rows() > 0 && t.cols() > 0) Y.diffs[i] = std::move(t);
    }
    Y.check(zero);
    return Y;
}

/******** monomials ********/

// exponent vector over the algebra's generators; odd exponents are 0/1
using Monomial = std::vector<std::uint16_t>;

template <class K>
using AlgElem = std::map<Monomial, K>;  // finite scalar combination

template <class K>
void elem_add(AlgElem<K>& a, const Monomial& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = a.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

/******** the algebra ********/

template <class K>
class SymDgAlgebra {
public:
    struct Gen {
        std::string label;
        int c = 0;        // cohomological degree
        int t = 0;        // internal degree
        bool odd = false;
        int comp = 0;     // originating complex degree
        int idx = 0;      // index within the component
    };

    std::vector<Gen> gens;
    std::vector<std::vector<std::pair<int, K>>> gen_diff;  // image of each generator
    K zero_;

    SymDgAlgebra() = default;

    int num_gens() const { return static_cast<int>(gens.size()); }
    const K& zero() const { return zero_; }

    Bidegree mono_bidegree(const Monomial& m) const {
        Bidegree b{0, 0};
        for (int g = 0; g < num_gens(); ++g) {
            b.i += m[g] * gens[g].c;
            b.j += m[g] * gens[g].t;
        }
        return b;
    }
    int mono_cdeg(const Monomial& m) const { return mono_bidegree(m).i; }
    bool mono_is_unit(const Monomial& m) const {
        for (auto e : m)
            if (e) return false;
        return true;
    }
    Monomial unit() const { return Monomial(gens.size(), 0); }
    Monomial gen_mono(int g) const {
        Monomial m = unit();
        m[g] = 1;
        return m;
    }

    /// internal degrees reachable by monomials: {0, t_step, 2 t_step, ...}
    int t_step() const {
        for (auto& g : gens) return g.t;
        return 0;
    }
    /// largest weight w with all even gens: infinite unless every generator
    /// is odd; returns -1 for unbounded
    int max_weight() const {
        int odd_count = 0;
        for (auto& g : gens) {
            if (!g.odd) return -1;
            ++odd_count;
        }
        return odd_count;
    }
    bool internal_support_bounded() const { return max_weight() >= 0; }

    /// monomial basis at a bidegree (deterministic order, memoized)
    const std::vector<Monomial>& basis(Bidegree b) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = basis_.find(b);
            if (it != basis_.end()) return it->second;
        }
        std::vector<Monomial> out = enumerate(b);
        std::lock_guard<std::mutex> lock(mu_);
        return basis_.emplace(b, std::move(out)).first->second;
    }
    int dim(Bidegree b) const { return static_cast<int>(basis(b).size()); }
    int index_of(Bidegree b, const Monomial& m) const {
        const auto& bs = basis(b);
        auto it = std::lower_bound(bs.begin(), bs.end(), m);
        if (it == bs.end() || *it != m) throw std::runtime_error("monomial not in basis");
        return static_cast<int>(it - bs.begin());
    }

    /// normal-ordered product of monomials: zero (nullopt) or +-monomial
    std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) const {
        Monomial out = a;
        int sign = 1;
        // count of odd generators of a with index > g, for each odd g of b
        for (int g = 0; g < num_gens(); ++g) {
            if (!b[g]) continue;
            if (gens[g].odd) {
                if (a[g]) return std::nullopt;  // odd square
                int crossings = 0;
                for (int h = g + 1; h < num_gens(); ++h)
                    if (gens[h].odd && a[h]) ++crossings;
                if (crossings % 2) sign = -sign;
                out[g] = 1;
            } else {
                out[g] = static_cast<std::uint16_t>(out[g] + b[g]);
            }
        }
        return std::make_pair(std::move(out), sign);
    }

    AlgElem<K> elem_mul(const AlgElem<K>& a, const AlgElem<K>& b) const {
        AlgElem<K> out;
        for (auto& [ma, ca] : a)
            for (auto& [mb, cb] : b) {
                auto p = multiply(ma, mb);
                if (!p) continue;
                K c = ca * cb;
                if (p->second < 0) c = -c;
                elem_add(out, p->first, c);
            }
        return out;
    }

    /// graded Leibniz differential of a monomial
    AlgElem<K> diff_mono(const Monomial& m) const {
        AlgElem<K> out;
        int sign_so_far = 1;  // (-1)^{sum of degrees of factors to the left}
        for (int g = 0; g < num_gens(); ++g) {
            int e = m[g];
            if (e == 0) continue;
            if (!gen_diff[g].empty()) {
                // m = A . g^e . B ; term: e * (-1)^{|A|} A . d(g) . g^{e-1} . B
                Monomial rest = m;
                rest[g] = static_cast<std::uint16_t>(e - 1);
                for (auto& [h, coef] : gen_diff[g]) {
                    // A.h.g^{e-1}.B = +-(A.g^{e-1}.B).h ; multiply() computes
                    // the right product, correct by the odd factors h crossed
                    auto p = multiply(rest, gen_mono(h));
                    if (!p) continue;
                    int sgn = sign_so_far * p->second;
                    if (gens[h].odd) {
                        int passed = 0;  // odd factors strictly after g
                        for (int h2 = g + 1; h2 < num_gens(); ++h2)
                            if (gens[h2].odd && rest[h2]) ++passed;
                        if (passed % 2) sgn = -sgn;
                    }
                    K c = coef * K(static_cast<long>(e));
                    if (sgn < 0) c = -c;
                    elem_add(out, p->first, c);
                }
            }
            if ((e * gens[g].c) % 2 != 0) sign_so_far = -sign_so_far;
        }
        return out;
    }

    AlgElem<K> diff_elem(const AlgElem<K>& a) const {
        AlgElem<K> out;
        for (auto& [m, c] : a)
            for (auto& [m2, c2] : diff_mono(m)) elem_add(out, m2, K(c * c2));
        return out;
    }

    /// differential block: basis(b) -> basis(b + (1,0))
    const SpMat<K>& diff_block(Bidegree b) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = dblock_.find(b);
            if (it != dblock_.end()) return it->second;
        }
        const auto& src = basis(b);
        Bidegree b1{b.i + 1, b.j};
        std::vector<Triplet<K>> ts;
        for (int col = 0; col < static_cast<int>(src.size()); ++col)
            for (auto& [m, c] : diff_mono(src[col]))
                ts.emplace_back(index_of(b1, m), col, c);
        SpMat<K> out = sp_from_triplets<K>(dim(b1), static_cast<int>(src.size()), ts);
        std::lock_guard<std::mutex> lock(mu_);
        return dblock_.emplace(b, std::move(out)).first->second;
    }

    /// left multiplication by generator g: basis(b) -> basis(b + deg(g))
    const SpMat<K>& lmul_block(int g, Bidegree b) const {
        auto key = std::make_pair(g, b);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = lblock_.find(key);
            if (it != lblock_.end()) return it->second;
        }
        const auto& src = basis(b);
        Bidegree b1{b.i + gens[g].c, b.j + gens[g].t};
        std::vector<Triplet<K>> ts;
        K one = unit_scalar();
        for (int col = 0; col < static_cast<int>(src.size()); ++col) {
            auto p = multiply(gen_mono(g), src[col]);
            if (!p) continue;
            K c = one;
            if (p->second < 0) c = -c;
            ts.emplace_back(index_of(b1, p->first), col, c);
        }
        SpMat<K> out = sp_from_triplets<K>(dim(b1), static_cast<int>(src.size()), ts);
        std::lock_guard<std::mutex> lock(mu_);
        return lblock_.emplace(key, std::move(out)).first->second;
    }

    /// right multiplication by generator g: basis(b) -> basis(b + deg(g))
    const SpMat<K>& rmul_block(int g, Bidegree b) const {
        auto key = std::make_pair(g, b);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = rblock_.find(key);
            if (it != rblock_.end()) return it->second;
        }
        const auto& src = basis(b);
        Bidegree b1{b.i + gens[g].c, b.j + gens[g].t};
        std::vector<Triplet<K>> ts;
        K one = unit_scalar();
        for (int col = 0; col < static_cast<int>(src.size()); ++col) {
            auto p = multiply(src[col], gen_mono(g));
            if (!p) continue;
            K c = one;
            if (p->second < 0) c = -c;
            ts.emplace_back(index_of(b1, p->first), col, c);
        }
        SpMat<K> out = sp_from_triplets<K>(dim(b1), static_cast<int>(src.size()), ts);
        std::lock_guard<std::mutex> lock(mu_);
        return rblock_.emplace(key, std::move(out)).first->second;
    }

    K unit_scalar() const { return zero_ + K(1); }  // bound 1

    /// the algebra viewed as a bigraded complex on a window
    BigradedComplex<K> as_complex(Window w) const {
        BigradedComplex<K> c;
        int step = t_step();
        if (step == 0) {
            if (w.contains(0)) c.dims[{0, 0}] = 1;
            return c;
        }
        for (int j = w.lo; j <= w.hi; ++j) {
            if (j % 2 != 0) continue;
            if (step > 0 && j < 0) continue;
            if (step < 0 && j > 0) continue;
            // cohomological range at internal degree j: weight and degrees
            int w_abs = std::abs(j) / 2;
            if (internal_support_bounded() && w_abs > max_weight()) continue;
            int cmin = 0, cmax = 0;
            for (auto& g : gens) {
                cmin = std::min(cmin, g.c);
                cmax = std::max(cmax, g.c);
            }
            int lo_i = std::min(cmin * w_abs, cmax * w_abs);
            int hi_i = std::max(cmin * w_abs, cmax * w_abs);
            for (int i = lo_i; i <= hi_i; ++i) {
                int d = dim({i, j});
                if (d > 0) c.dims[{i, j}] = d;
            }
        }
        for (auto& [b, d] : c.dims) {
            SpMat<K> m = diff_block(b);
            if (!sp_is_zero(m)) c.diff[b] = m;
        }
        return c;
    }

private:
    mutable std::mutex mu_;
    mutable std::map<Bidegree, std::vector<Monomial>> basis_;
    mutable std::map<Bidegree, SpMat<K>> dblock_;
    mutable std::map<std::pair<int, Bidegree>, SpMat<K>> lblock_;
    mutable std::map<std::pair<int, Bidegree>, SpMat<K>> rblock_;

    std::vector<Monomial> enumerate(Bidegree b) const {
        std::vector<Monomial> out;
        if (num_gens() == 0) {
            if (b.i == 0 && b.j == 0) out.push_back(unit());
            return out;
        }
        int step = t_step();
        if (b.j % step != 0) return out;
        int weight = b.j / step;
        if (weight < 0) return out;
        Monomial cur = unit();
        rec(out, cur, 0, weight, b.i);
        std::sort(out.begin(), out.end());
        return out;
    }

    void rec(std::vector<Monomial>& out, Monomial& cur, int g, int weight_left, int c_left) const {
        if (g == num_gens()) {
            if (weight_left == 0 && c_left == 0) out.push_back(cur);
            return;
        }
        // prune: achievable cohomological degree range with remaining gens
        int cmin = 0, cmax = 0;
        for (int h = g; h < num_gens(); ++h) {
            cmin = std::min(cmin, gens[h].c);
            cmax = std::max(cmax, gens[h].c);
        }
        if (c_left < cmin * weight_left || c_left > cmax * weight_left) return;
        int emax = gens[g].odd ? 1 : weight_left;
        for (int e = 0; e <= emax; ++e) {
            cur[g] = static_cast<std::uint16_t>(e);
            rec(out, cur, g + 1, weight_left - e, c_left - e * gens[g].c);
        }
        cur[g] = 0;
    }
};

/// Sym of G[shift]: a generator in complex degree i lands in cohomological
/// degree i - shift; generator differentials pick up (-1)^shift.
template <class K>
std::shared_ptr<SymDgAlgebra<K>> build_algebra(const GeneratorComplex<K>& G, int shift, const K& zero,
                                               const std::string& prefix) {
    auto A = std::make_shared<SymDgAlgebra<K>>();
    A->zero_ = zero;
    std::map<std::pair<int, int>, int> pos;  // (complex degree, idx) -> gen index
    for (auto& [i, r] : G.ranks) {
        for (int k = 0; k < r; ++k) {
            typename SymDgAlgebra<K>::Gen g;
            g.comp = i;
            g.idx = k;
            g.c = i - shift;
            g.t = G.internal_degree;
            g.odd = ((g.c % 2) + 2) % 2 == 1;
            g.label = prefix + "(" + std::to_string(i) + "," + std::to_string(k) + ")";
            pos[{i, k}] = A->num_gens();
            A->gens.push_back(std::move(g));
        }
    }
    A->gen_diff.resize(A->gens.size());
    bool flip = ((shift % 2) + 2) % 2 == 1;
    for (auto& [i, m] : G.diffs) {
        for (int k = 0; k < m.cols(); ++k) {
            auto src = pos.find({i, k});
            if (src == pos.end()) continue;
            for (int l = 0; l < m.rows(); ++l) {
                K c = m(l, k);
                if (c.is_zero()) continue;
                if (flip) c = -c;
                A->gen_diff[src->second].emplace_back(pos.at({i + 1, l}), c);
            }
        }
    }
    return A;
}

/// generator table: (label, bidegree) pairs plus generator images, used to
/// check that two constructions agree
template <class K>
std::vector<std::tuple<std::string, int, int>> generator_table(const SymDgAlgebra<K>& A) {
    std::vector<std::tuple<std::string, int, int>> out;
    for (auto& g : A.gens) out.emplace_back(g.label, g.c, g.t);
    return out;
}

/// the regrading xi: a monomial at S-bidegree (c,t) appears in R at (c+t, t);
/// on generators (1,-2) -> (-1,-2) and (2,-2) -> (0,-2)
inline Bidegree xi_map(Bidegree b) { return {b.i + b.j, b.j}; }
inline Bidegree xi_unmap(Bidegree b) { return {b.i - b.j, b.j}; }

template <class K>
std::shared_ptr<SymDgAlgebra<K>> regrade_xi(const SymDgAlgebra<K>& S) {
    auto R = std::make_shared<SymDgAlgebra<K>>();
    R->zero_ = S.zero_;
    R->gens = S.gens;
    R->gen_diff = S.gen_diff;
    for (auto& g : R->gens) {
        Bidegree nb = xi_map({g.c, g.t});
        g.c = nb.i;
        g.t = nb.j;
        g.odd = ((g.c % 2) + 2) % 2 == 1;
    }
    return R;
}

/******** algebra morphisms ********/

template <class K>
struct AlgebraMorphism {
    std::shared_ptr<const SymDgAlgebra<K>> src, tgt;
    std::vector<std::vector<std::pair<int, K>>> gen_images;

    bool is_identity_shape() const {
        if (src->num_gens() != tgt->num_gens()) return false;
        for (int g = 0; g < src->num_gens(); ++g) {
            if (gen_images[g].size() != 1) return false;
            auto& [h, c] = gen_images[g][0];
            if (h != g || !(c == src->unit_scalar())) return false;
        }
        return true;
    }

    AlgElem<K> apply_gen(int g) const {
        AlgElem<K> e;
        for (auto& [h, c] : gen_images[g]) elem_add(e, tgt->gen_mono(h), c);
        return e;
    }

    AlgElem<K> apply(const Monomial& m) const {
        AlgElem<K> acc;
        acc[tgt->unit()] = tgt->unit_scalar();
        for (int g = 0; g < src->num_gens(); ++g)
            for (int e = 0; e < m[g]; ++e) acc = tgt->elem_mul(acc, apply_gen(g));
        return acc;
    }

    AlgElem<K> apply(const AlgElem<K>& a) const {
        AlgElem<K> out;
        for (auto& [m, c] : a)
            for (auto& [m2, c2] : apply(m)) elem_add(out, m2, K(c * c2));
        return out;
    }

    /// bidegree preservation and commutation with the generator differentials
    void check() const {
        for (int g = 0; g < src->num_gens(); ++g) {
            Bidegree bg{src->gens[g].c, src->gens[g].t};
            for (auto& [h, c] : gen_images[g])
                if (Bidegree{tgt->gens[h].c, tgt->gens[h].t} != bg)
                    throw std::invalid_argument("algebra morphism: bidegree mismatch on " + src->gens[g].label);
            AlgElem<K> lhs;  // Phi(d g)
            for (auto& [h, c] : src->gen_diff[g])
                for (auto& [m2, c2] : apply_gen(h)) elem_add(lhs, m2, K(c * c2));
            AlgElem<K> rhs = tgt->diff_elem(apply_gen(g));  // d Phi(g)
            if (lhs != rhs)
                throw std::invalid_argument("algebra morphism: does not commute with d on " + src->gens[g].label);
        }
    }
};

/// Sym functoriality: a chain map of generator complexes (component matrices
/// f_i : V'^i -> V^i) induces an algebra morphism
template <class K>
AlgebraMorphism<K> sym_morphism(const std::map<int, DMat<K>>& comps,
                                std::shared_ptr<const SymDgAlgebra<K>> src,
                                std::shared_ptr<const SymDgAlgebra<K>> tgt) {
    AlgebraMorphism<K> phi;
    phi.src = src;
    phi.tgt = tgt;
    phi.gen_images.resize(src->num_gens());
    std::map<std::pair<int, int>, int> tpos;
    for (int h = 0; h < tgt->num_gens(); ++h) tpos[{tgt->gens[h].comp, tgt->gens[h].idx}] = h;
    for (int g = 0; g < src->num_gens(); ++g) {
        int i = src->gens[g].comp, k = src->gens[g].idx;
        auto it = comps.find(i);
        if (it == comps.end()) continue;
        const DMat<K>& f = it->second;
        if (k >= f.cols()) throw std::invalid_argument("sym_morphism: component shape");
        for (int l = 0; l < f.rows(); ++l)
            if (!f(l, k).is_zero()) phi.gen_images[g].emplace_back(tpos.at({i, l}), f(l, k));
    }
    phi.check();
    return phi;
}

}  // namespace koszul
