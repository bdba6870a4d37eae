#pragma once
// Dg-modules over a free graded-commutative dg-algebra, presented by one
// action block per algebra generator. Generators determine the full action;
// the dg-module axioms are checkable per bidegree and `validate` reports
// every violation with its witness.
//
// Modules carry their materialized internal window [jlo, jhi] together with
// exact support bounds (nullopt = unbounded on that side). Computations that
// would need slices outside the materialized window throw WindowError.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/symdg.hpp"

namespace koszul {

template <class K>
struct DgModule {
    std::shared_ptr<const SymDgAlgebra<K>> alg;
    BigradedComplex<K> under;
    std::vector<std::map<Bidegree, SpMat<K>>> act;  // one map per generator
    int jlo = 0, jhi = 0;                           // materialized window
    std::optional<int> sup_lo, sup_hi;              // exact support bounds if finite

    int dim_at(Bidegree b) const { return under.dim_at(b); }
    SpMat<K> diff_at(Bidegree b) const { return under.diff_at(b); }
    SpMat<K> act_at(int g, Bidegree b) const {
        auto it = act[g].find(b);
        if (it != act[g].end()) return it->second;
        Bidegree tb = b + Bidegree{alg->gens[g].c, alg->gens[g].t};
        return SpMat<K>(dim_at(tb), dim_at(b));
    }
    void set_act(int g, Bidegree b, SpMat<K> m) {
        if (!sp_is_zero(m)) act[g][b] = std::move(m);
    }
    bool mod_minus() const { return sup_hi.has_value(); }
    bool mod_plus() const { return sup_lo.has_value(); }

    void require_window(Window w, const std::string& who) const {
        int need_lo = sup_lo ? std::max(*sup_lo, w.lo) : w.lo;
        int need_hi = sup_hi ? std::min(*sup_hi, w.hi) : w.hi;
        if (need_lo > need_hi) return;
        if (need_lo < jlo || need_hi > jhi)
            throw WindowError(who + ": module not materialized on the required window",
                              Window(std::min(need_lo, jlo), std::max(need_hi, jhi)));
    }

    /// action of a monomial: compose generator blocks, first factor outermost
    SpMat<K> mono_action(const Monomial& m, Bidegree b) const {
        // expand to a flat generator list in normal order
        std::vector<int> factors;
        for (int g = 0; g < alg->num_gens(); ++g)
            for (int e = 0; e < m[g]; ++e) factors.push_back(g);
        Bidegree cur = b;
        SpMat<K> acc = sp_id(dim_at(b), alg->unit_scalar());
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            acc = SpMat<K>(act_at(*it, cur) * acc);
            cur = cur + Bidegree{alg->gens[*it].c, alg->gens[*it].t};
        }
        return acc;
    }
    /// action of an algebra element, as a block basis(b) -> basis(b + deg)
    SpMat<K> elem_action(const AlgElem<K>& e, Bidegree b, Bidegree edeg) const {
        Bidegree tb = b + edeg;
        SpMat<K> acc(dim_at(tb), dim_at(b));
        for (auto& [m, c] : e) {
            if (alg->mono_bidegree(m) != edeg) throw std::invalid_argument("elem_action: inhomogeneous element");
            acc = acc + sp_scale(mono_action(m, b), c);
        }
        return acc;
    }
};

template <class K>
struct DgModuleMap {
    const DgModule<K>* src = nullptr;
    const DgModule<K>* tgt = nullptr;
    std::map<Bidegree, SpMat<K>> blocks;

    SpMat<K> block_at(Bidegree b) const {
        auto it = blocks.find(b);
        if (it != blocks.end()) return it->second;
        return SpMat<K>(tgt->dim_at(b), src->dim_at(b));
    }
    ComplexMap<K> as_complex_map() const {
        ComplexMap<K> f;
        f.src = &src->under;
        f.tgt = &tgt->under;
        f.blocks = blocks;
        return f;
    }
};

struct DualizingData {
    // over a field: a rank-one free module placed at (0,0); for base change a
    // chosen nonzero functional k' -> k trivializes it, recorded for reports
    std::string basis_label = "omega";
    std::vector<std::string> lambda;  // nonzero functional coefficients, if any
};

/******** validation ********/

template <class K>
std::vector<std::string> validate(const DgModule<K>& M, std::optional<Window> w = std::nullopt) {
    std::vector<std::string> bad;
    const auto& A = *M.alg;
    int lo = w ? w->lo : M.jlo, hi = w ? w->hi : M.jhi;
    auto inside = [&](Bidegree b) { return b.j >= lo && b.j <= hi; };

    // finite support per internal degree is structural (maps are finite);
    // shapes first
    for (auto& [b, m] : M.under.diff)
        if (m.rows() != M.dim_at({b.i + 1, b.j}) || m.cols() != M.dim_at(b))
            bad.push_back("diff shape at " + to_string(b));
    for (int g = 0; g < A.num_gens(); ++g)
        for (auto& [b, m] : M.act[g]) {
            Bidegree tb = b + Bidegree{A.gens[g].c, A.gens[g].t};
            if (m.rows() != M.dim_at(tb) || m.cols() != M.dim_at(b))
                bad.push_back("action shape for " + A.gens[g].label + " at " + to_string(b));
        }
    if (!bad.empty()) return bad;

    // d^2 = 0
    for (auto& [b, m] : M.under.diff) {
        if (!inside(b)) continue;
        if (!sp_is_zero(SpMat<K>(M.diff_at({b.i + 1, b.j}) * m)))
            bad.push_back("d^2 != 0 at " + to_string(b));
    }
    // per generator: Leibniz  d rho_g - (-1)^{|g|} rho_g d = rho_{d g}
    std::set<Bidegree> sites;
    for (auto& [b, d] : M.under.dims) sites.insert(b);
    for (Bidegree b : sites) {
        if (!inside(b)) continue;
        for (int g = 0; g < A.num_gens(); ++g) {
            Bidegree gb{A.gens[g].c, A.gens[g].t};
            if (!inside(b + gb)) continue;
            SpMat<K> lhs = M.diff_at(b + gb) * M.act_at(g, b);
            SpMat<K> rho_d = M.act_at(g, {b.i + 1, b.j}) * M.diff_at(b);
            if (A.gens[g].c % 2 != 0) rho_d = sp_scale(rho_d, K(-1));
            SpMat<K> rhs(M.dim_at(b + gb + Bidegree{1, 0}), M.dim_at(b));
            for (auto& [h, c] : A.gen_diff[g]) rhs = rhs + sp_scale(M.act_at(h, b), c);
            if (!sp_equal(SpMat<K>(SpMat<K>(lhs) - SpMat<K>(rho_d)), SpMat<K>(rhs)))
                bad.push_back("Leibniz fails for " + A.gens[g].label + " at " + to_string(b));
        }
        // graded commutation and odd squares
        for (int g = 0; g < A.num_gens(); ++g)
            for (int h = g; h < A.num_gens(); ++h) {
                Bidegree gb{A.gens[g].c, A.gens[g].t}, hb{A.gens[h].c, A.gens[h].t};
                if (!inside(b + gb) || !inside(b + hb) || !inside(b + gb + hb)) continue;
                SpMat<K> gh = SpMat<K>(M.act_at(g, b + hb) * M.act_at(h, b));
                if (g == h) {
                    if (A.gens[g].odd && !sp_is_zero(gh))
                        bad.push_back("odd square acts nonzero for " + A.gens[g].label + " at " + to_string(b));
                    continue;
                }
                SpMat<K> hg = SpMat<K>(M.act_at(h, b + gb) * M.act_at(g, b));
                if (A.gens[g].odd && A.gens[h].odd) hg = sp_scale(hg, K(-1));
                if (!sp_equal(gh, hg))
                    bad.push_back("commutation fails for " + A.gens[g].label + "," + A.gens[h].label + " at " +
                                  to_string(b));
            }
    }
    return bad;
}

template <class K>
std::vector<std::string> validate_map(const DgModuleMap<K>& f, std::optional<Window> w = std::nullopt) {
    std::vector<std::string> bad;
    const auto& A = *f.src->alg;
    int lo = w ? w->lo : std::max(f.src->jlo, f.tgt->jlo);
    int hi = w ? w->hi : std::min(f.src->jhi, f.tgt->jhi);
    auto inside = [&](Bidegree b) { return b.j >= lo && b.j <= hi; };
    std::set<Bidegree> sites;
    for (auto& [b, d] : f.src->under.dims) sites.insert(b);
    for (auto& [b, m] : f.blocks) sites.insert(b);
    for (Bidegree b : sites) {
        if (!inside(b)) continue;
        SpMat<K> lhs = SpMat<K>(f.tgt->diff_at(b) * f.block_at(b));
        SpMat<K> rhs = SpMat<K>(f.block_at({b.i + 1, b.j}) * f.src->diff_at(b));
        if (!sp_equal(lhs, rhs)) bad.push_back("map fails to commute with d at " + to_string(b));
        for (int g = 0; g < A.num_gens(); ++g) {
            Bidegree gb{A.gens[g].c, A.gens[g].t};
            if (!inside(b + gb)) continue;
            SpMat<K> l2 = SpMat<K>(f.tgt->act_at(g, b) * f.block_at(b));
            SpMat<K> r2 = SpMat<K>(f.block_at(b + gb) * f.src->act_at(g, b));
            if (!sp_equal(l2, r2))
                bad.push_back("map fails to commute with " + A.gens[g].label + " at " + to_string(b));
        }
    }
    return bad;
}

/******** semifree presentations ********/

// free module on generators e_s with a triangular twist d(e_s) given by
// algebra coefficients against earlier generators; materializable on any
// window
template <class K>
struct SemifreePresentation {
    std::shared_ptr<const SymDgAlgebra<K>> alg;
    std::vector<Bidegree> gen_bid;
    // d(e_s) = sum_{s'} coeff[s][s'] . e_{s'}, coeff homogeneous of bidegree
    // gen_bid[s] + (1,0) - gen_bid[s']
    std::vector<std::map<int, AlgElem<K>>> twist;

    int num_gens() const { return static_cast<int>(gen_bid.size()); }

    DgModule<K> materialize(Window w) const;

    /// d^2 = 0 on generators, checked symbolically
    void check() const {
        for (int s = 0; s < num_gens(); ++s) {
            std::map<int, AlgElem<K>> acc;  // coefficient of e_{s''} in d(d e_s)
            for (auto& [s1, a] : twist[s]) {
                // d(a e_{s1}) = d(a) e_{s1} + (-1)^{|a|} a d(e_{s1})
                AlgElem<K> da = alg->diff_elem(a);
                for (auto& [m, c] : da) elem_add(acc[s1], m, c);
                int adeg = gen_bid[s].i + 1 - gen_bid[s1].i;
                bool neg = ((adeg % 2) + 2) % 2 == 1;
                auto it2 = twist[s1];
                for (auto& [s2, b] : it2) {
                    AlgElem<K> ab = alg->elem_mul(a, b);
                    for (auto& [m, c] : ab) elem_add(acc[s2], m, neg ? K(-c) : c);
                }
            }
            for (auto& [s2, e] : acc)
                if (!e.empty()) throw std::runtime_error("semifree presentation: d^2 != 0");
        }
    }
};

// basis layout of a free module slice: pairs (generator s, monomial index)
template <class K>
struct FreeLayout {
    struct Piece {
        int gen;
        Bidegree mono_bid;
        int dim;
        int offset;
    };
    std::map<Bidegree, std::vector<Piece>> pieces;
    std::map<Bidegree, int> dims;
    int dim_at(Bidegree b) const {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    const Piece* find(Bidegree b, int gen) const {
        auto it = pieces.find(b);
        if (it == pieces.end()) return nullptr;
        for (auto& p : it->second)
            if (p.gen == gen) return &p;
        return nullptr;
    }
};

template <class K>
FreeLayout<K> free_layout(const SymDgAlgebra<K>& A, const std::vector<Bidegree>& gens, Window w,
                          std::optional<Window> cohom_window = std::nullopt) {
    FreeLayout<K> L;
    // collect candidate bidegrees: for each generator and each algebra
    // bidegree in range, one piece
    int step = A.t_step();
    for (int s = 0; s < static_cast<int>(gens.size()); ++s) {
        Bidegree g = gens[s];
        if (step == 0) {
            if (w.contains(g.j)) {
                auto& v = L.pieces[g];
                v.push_back({s, {0, 0}, 1, 0});
            }
            continue;
        }
        for (int j = w.lo; j <= w.hi; ++j) {
            int tj = j - g.j;
            if (tj % step != 0 || tj / step < 0) continue;
            int wt = tj / step;
            if (A.internal_support_bounded() && wt > A.max_weight()) continue;
            int cmin = 0, cmax = 0;
            for (auto& gg : A.gens) {
                cmin = std::min(cmin, gg.c);
                cmax = std::max(cmax, gg.c);
            }
            for (int ci = std::min(cmin * wt, cmax * wt); ci <= std::max(cmin * wt, cmax * wt); ++ci) {
                int d = A.dim({ci, tj});
                if (d == 0) continue;
                Bidegree out{g.i + ci, j};
                if (cohom_window && (out.i < cohom_window->lo || out.i > cohom_window->hi)) continue;
                auto& v = L.pieces[out];
                v.push_back({s, {ci, tj}, d, 0});
            }
        }
    }
    for (auto& [b, v] : L.pieces) {
        // deterministic order: by generator index then monomial bidegree
        std::sort(v.begin(), v.end(), [](auto& a, auto& b2) {
            if (a.gen != b2.gen) return a.gen < b2.gen;
            return a.mono_bid < b2.mono_bid;
        });
        int off = 0;
        for (auto& p : v) {
            p.offset = off;
            off += p.dim;
        }
        L.dims[b] = off;
    }
    return L;
}

template <class K>
DgModule<K> SemifreePresentation<K>::materialize(Window w) const {
    const auto& A = *alg;
    DgModule<K> M;
    M.alg = alg;
    M.jlo = w.lo;
    M.jhi = w.hi;
    FreeLayout<K> L = free_layout(A, gen_bid, w);
    M.under.dims = L.dims;
    // support bounds: generators sit at finite bidegrees; on the algebra's
    // cone side the module continues beyond any window
    int step = A.t_step();
    std::optional<int> glo, ghi;
    for (auto& g : gen_bid) {
        glo = glo ? std::min(*glo, g.j) : g.j;
        ghi = ghi ? std::max(*ghi, g.j) : g.j;
    }
    if (step >= 0) {
        M.sup_lo = glo.value_or(0);
        if (A.internal_support_bounded() && ghi) M.sup_hi = *ghi + A.max_weight() * step;
        if (step == 0 && ghi) M.sup_hi = *ghi;
    } else {
        M.sup_hi = ghi.value_or(0);
        if (A.internal_support_bounded() && glo) M.sup_lo = *glo + A.max_weight() * step;
    }
    M.act.resize(A.num_gens());

    for (auto& [b, ps] : L.pieces) {
        Bidegree b1{b.i + 1, b.j};
        std::vector<Triplet<K>> dts;
        for (auto& p : ps) {
            // d(mu e_s) = d_A(mu) e_s + (-1)^{|mu|} mu . d(e_s)
            const auto& mons = A.basis(p.mono_bid);
            const SpMat<K>& dblk = A.diff_block(p.mono_bid);
            const auto* q = L.find(b1, p.gen);
            if (q) {
                for (int o = 0; o < dblk.outerSize(); ++o)
                    for (typename SpMat<K>::InnerIterator it(dblk, o); it; ++it)
                        dts.emplace_back(q->offset + static_cast<int>(it.row()), p.offset + static_cast<int>(it.col()),
                                         it.value());
            }
            const auto& tw = twist[p.gen];
            if (!tw.empty()) {
                bool neg = ((p.mono_bid.i % 2) + 2) % 2 == 1;
                for (int col = 0; col < static_cast<int>(mons.size()); ++col) {
                    for (auto& [s2, a] : tw) {
                        AlgElem<K> me;
                        me[mons[col]] = A.unit_scalar();
                        AlgElem<K> prod = A.elem_mul(me, a);
                        for (auto& [m2, c2] : prod) {
                            // lands in the piece (s2, deg m2) of b1 when inside
                            const auto* q2 = L.find(b1, s2);
                            if (!q2) continue;
                            Bidegree mb2 = A.mono_bidegree(m2);
                            K c = neg ? K(-c2) : c2;
                            dts.emplace_back(q2->offset + A.index_of(mb2, m2), p.offset + col, c);
                        }
                    }
                }
            }
        }
        M.under.set_diff(b, sp_from_triplets<K>(L.dim_at(b1), L.dim_at(b), dts));

        for (int g = 0; g < A.num_gens(); ++g) {
            Bidegree gb{A.gens[g].c, A.gens[g].t};
            Bidegree tb = b + gb;
            if (tb.j < w.lo || tb.j > w.hi) continue;
            std::vector<Triplet<K>> ats;
            for (auto& p : ps) {
                const SpMat<K>& lm = A.lmul_block(g, p.mono_bid);
                const auto* q = L.find(tb, p.gen);
                if (!q) continue;
                for (int o = 0; o < lm.outerSize(); ++o)
                    for (typename SpMat<K>::InnerIterator it(lm, o); it; ++it)
                        ats.emplace_back(q->offset + static_cast<int>(it.row()), p.offset + static_cast<int>(it.col()),
                                         it.value());
            }
            M.set_act(g, b, sp_from_triplets<K>(L.dim_at(tb), L.dim_at(b), ats));
        }
    }
    return M;
}

/******** constructors ********/

template <class K>
DgModule<K> free_module(std::shared_ptr<const SymDgAlgebra<K>> A, const std::vector<Bidegree>& gens, Window w) {
    SemifreePresentation<K> P;
    P.alg = A;
    P.gen_bid = gens;
    P.twist.resize(gens.size());
    return P.materialize(w);
}

template <class K>
DgModule<K> trivial_module(std::shared_ptr<const SymDgAlgebra<K>> A, const std::map<Bidegree, int>& dims,
                           const std::map<Bidegree, SpMat<K>>& diff = {}) {
    DgModule<K> M;
    M.alg = A;
    M.under.dims = dims;
    M.under.diff = diff;
    M.act.resize(A->num_gens());
    int lo = 0, hi = 0;
    bool first = true;
    for (auto& [b, d] : dims) {
        lo = first ? b.j : std::min(lo, b.j);
        hi = first ? b.j : std::max(hi, b.j);
        first = false;
    }
    M.jlo = lo;
    M.jhi = hi;
    M.sup_lo = lo;
    M.sup_hi = hi;
    return M;
}

/******** dualize ********/

// D_Omega with Omega = k at (0,0):
//   dims'(i,j) = dims(-i,-j)
//   d'(phi) = -(-1)^{|phi|} phi . d      => block = -(-1)^i d(-i-1,-j)^T
//   (g phi)(m) = (-1)^{|g||phi|} phi(gm) => block = (-1)^{|g| i} rho_g(-i-a,-j-b)^T
template <class K>
DgModule<K> dualize(const DgModule<K>& M, Window w, const DualizingData& = {}) {
    M.require_window(Window(-w.hi, -w.lo), "dualize");
    const auto& A = *M.alg;
    DgModule<K> D;
    D.alg = M.alg;
    D.act.resize(A.num_gens());
    D.jlo = w.lo;
    D.jhi = w.hi;
    if (M.sup_lo) D.sup_hi = -*M.sup_lo;
    if (M.sup_hi) D.sup_lo = -*M.sup_hi;
    for (auto& [b, d] : M.under.dims) {
        Bidegree db{-b.i, -b.j};
        if (db.j >= w.lo && db.j <= w.hi) D.under.dims[db] = d;
    }
    for (auto& [b, d] : D.under.dims) {
        // d' at b comes from d_M at (-b.i - 1, -b.j)
        Bidegree src{-b.i - 1, -b.j};
        SpMat<K> m = M.diff_at(src);
        if (sp_is_zero(m)) continue;
        SpMat<K> t = sp_transpose(m);
        bool neg = (((b.i % 2) + 2) % 2 == 0);  // -(-1)^i : negative for even i
        if (neg) t = sp_scale(t, K(-1));
        D.under.set_diff(b, std::move(t));
    }
    for (int g = 0; g < A.num_gens(); ++g) {
        Bidegree gb{A.gens[g].c, A.gens[g].t};
        for (auto& [b, d] : D.under.dims) {
            Bidegree tb = b + gb;
            if (D.under.dims.find(tb) == D.under.dims.end()) continue;
            SpMat<K> m = M.act_at(g, Bidegree{-tb.i, -tb.j});
            if (sp_is_zero(m)) continue;
            SpMat<K> t = sp_transpose(m);
            if ((A.gens[g].c % 2 != 0) && (b.i % 2 != 0)) t = sp_scale(t, K(-1));
            D.set_act(g, b, std::move(t));
        }
    }
    return D;
}

/// canonical map M -> D(D(M)): blockwise (-1)^i times the identity
template <class K>
DgModuleMap<K> double_dual_map(const DgModule<K>& M, const DgModule<K>& DD, Window w) {
    DgModuleMap<K> f;
    f.src = &M;
    f.tgt = &DD;
    for (auto& [b, d] : M.under.dims) {
        if (!w.contains(b.j)) continue;
        if (DD.dim_at(b) != d) throw std::runtime_error("double dual: dimension mismatch at " + to_string(b));
        SpMat<K> m = sp_id(d, M.alg->unit_scalar());
        if (b.i % 2 != 0) m = sp_scale(m, K(-1));
        f.blocks[b] = std::move(m);
    }
    return f;
}

/******** scalar restriction and extension ********/

template <class K>
DgModule<K> restrict_scalars(const AlgebraMorphism<K>& phi, const DgModule<K>& M) {
    if (phi.tgt.get() != M.alg.get()) throw std::invalid_argument("restrict_scalars: algebra mismatch");
    DgModule<K> R;
    R.alg = phi.src;
    R.under = M.under;
    R.jlo = M.jlo;
    R.jhi = M.jhi;
    R.sup_lo = M.sup_lo;
    R.sup_hi = M.sup_hi;
    R.act.resize(phi.src->num_gens());
    for (int g = 0; g < phi.src->num_gens(); ++g) {
        for (auto& [b, d] : M.under.dims) {
            Bidegree gb{phi.src->gens[g].c, phi.src->gens[g].t};
            Bidegree tb = b + gb;
            if (M.under.dims.find(tb) == M.under.dims.end()) continue;
            SpMat<K> acc(M.dim_at(tb), d);
            for (auto& [h, c] : phi.gen_images[g]) acc = acc + sp_scale(M.act_at(h, b), c);
            R.set_act(g, b, std::move(acc));
        }
    }
    return R;
}

/// extension of scalars along phi applied to a semifree presentation:
/// generators persist, twists map through phi
template <class K>
SemifreePresentation<K> extend_scalars(const AlgebraMorphism<K>& phi, const SemifreePresentation<K>& P) {
    if (phi.src.get() != P.alg.get()) throw std::invalid_argument("extend_scalars: algebra mismatch");
    SemifreePresentation<K> Q;
    Q.alg = phi.tgt;
    Q.gen_bid = P.gen_bid;
    Q.twist.resize(P.num_gens());
    for (int s = 0; s < P.num_gens(); ++s)
        for (auto& [s2, a] : P.twist[s]) {
            AlgElem<K> img = phi.apply(a);
            if (!img.empty()) Q.twist[s][s2] = std::move(img);
        }
    Q.check();
    return Q;
}

/******** semifree resolution ********/

template <class K>
struct Resolution {
    SemifreePresentation<K> pres;
    DgModule<K> P;
    DgModuleMap<K> p;  // quasi-isomorphism P -> M on the window
    // pointers must be re-bound once P and M have their final addresses
    void bind(const DgModule<K>& M) {
        p.src = &P;
        p.tgt = &M;
    }
};

template <class K>
Resolution<K> semifree_resolution(const DgModule<K>& M, Window w) {
    const auto& A = *M.alg;
    int step = A.t_step();
    if (step == 0) throw std::invalid_argument("semifree_resolution: algebra has no generators to build cones");
    for (auto& g : A.gens)
        if (g.c > 0)
            throw std::invalid_argument("semifree_resolution: positive cohomological generator degrees not supported");
    // direction: generators move internal degree by `step`; resolve from the
    // support edge towards the far end of the window
    bool ascending = step > 0;
    if (ascending && !M.sup_lo)
        throw std::invalid_argument("semifree_resolution: input must be bounded below (Mod_+ side)");
    if (!ascending && !M.sup_hi)
        throw std::invalid_argument("semifree_resolution: input must be bounded above (Mod_- side)");
    int edge = ascending ? std::min(*M.sup_lo, w.lo) : std::max(*M.sup_hi, w.hi);
    int far = ascending ? w.hi : w.lo;
    Window work = ascending ? Window(edge, far) : Window(far, edge);
    M.require_window(work, "semifree_resolution");

    SemifreePresentation<K> pres;
    pres.alg = M.alg;
    std::vector<SpMat<K>> pgen;  // p(e_s) as a column vector in M's slice at gen_bid[s]

    DgModule<K> P;  // rebuilt after each batch of generators
    auto rebuild = [&]() { P = pres.materialize(work); };
    rebuild();

    // p(mu e_s) = rho^M_mu(p(e_s)), recomputed from pgen as generators arrive
    auto compute_p_block = [&](Bidegree b) -> SpMat<K> {
        FreeLayout<K> L = free_layout(A, pres.gen_bid, work);
        SpMat<K> out(M.dim_at(b), P.dim_at(b));
        auto itp = L.pieces.find(b);
        if (itp == L.pieces.end()) return out;
        std::vector<Triplet<K>> ts;
        for (auto& piece : itp->second) {
            const auto& mons = A.basis(piece.mono_bid);
            for (int col = 0; col < piece.dim; ++col) {
                SpMat<K> ract = M.mono_action(mons[col], pres.gen_bid[piece.gen]);
                SpMat<K> v = SpMat<K>(ract * pgen[piece.gen]);
                for (int o = 0; o < v.outerSize(); ++o)
                    for (typename SpMat<K>::InnerIterator it(v, o); it; ++it)
                        ts.emplace_back(static_cast<int>(it.row()), piece.offset + col, it.value());
            }
        }
        return sp_from_triplets<K>(M.dim_at(b), P.dim_at(b), ts);
    };

    int jcur = edge;
    const int max_kill_depth = 400;
    while (ascending ? jcur <= far : jcur >= far) {
        // i-range at this internal degree
        std::vector<int> is;
        for (auto& [b, d] : M.under.dims)
            if (b.j == jcur) is.push_back(b.i);
        for (auto& [b, d] : P.under.dims)
            if (b.j == jcur) is.push_back(b.i);
        int imax = is.empty() ? 0 : *std::max_element(is.begin(), is.end());
        int imin = is.empty() ? 1 : *std::min_element(is.begin(), is.end());
        int depth = 0;
        for (int i = imax; i >= imin - 1; --i) {
            if (++depth > max_kill_depth) throw std::runtime_error("semifree_resolution: did not terminate");
            Bidegree b{i, jcur};
            HSlice<K> hm = cohomology_at(M.under, b);
            HSlice<K> hp = cohomology_at(P.under, b);
            SpMat<K> pb = compute_p_block(b);
            // induced map on cohomology
            SpMat<K> mapped = SpMat<K>(pb * hp.reps);
            SpMat<K> co = hm.h() > 0 ? hm.coords(mapped) : SpMat<K>(0, mapped.cols());
            // (a) surjectivity: classes of M not in the image
            if (hm.h() > 0) {
                Echelon<K> e = echelon_form(co);
                if (e.rank < hm.h()) {
                    // choose standard basis classes completing the image:
                    // greedily take H-basis vectors independent from im(co)
                    std::vector<SRow<K>> span;
                    auto insert_vec = [&](SRow<K> v) {
                        for (auto& r : span) {
                            if (v.empty()) break;
                            auto it = std::lower_bound(v.begin(), v.end(), r.front().first,
                                                       [](const std::pair<int, K>& a2, int cc) { return a2.first < cc; });
                            if (it != v.end() && it->first == r.front().first) {
                                K coef = -it->second;
                                v = detail::row_axpy(v, r, coef);
                            }
                        }
                        if (v.empty()) return false;
                        K inv = v.front().second.inv();
                        for (auto& [cc, x] : v) x = x * inv;
                        auto pos = std::lower_bound(span.begin(), span.end(), v.front().first,
                                                    [](const SRow<K>& r2, int lead) { return r2.front().first < lead; });
                        span.insert(pos, std::move(v));
                        return true;
                    };
                    for (int k = 0; k < co.cols(); ++k) {
                        SRow<K> v;
                        for (typename SpMat<K>::InnerIterator it(co, k); it; ++it)
                            v.emplace_back(static_cast<int>(it.row()), it.value());
                        insert_vec(std::move(v));
                    }
                    for (int k = 0; k < hm.h(); ++k) {
                        SRow<K> v{{k, A.unit_scalar()}};
                        if (!insert_vec(v)) continue;
                        // new generator at b mapping to representative k
                        pres.gen_bid.push_back(b);
                        pres.twist.emplace_back();
                        std::vector<Triplet<K>> ts;
                        for (typename SpMat<K>::InnerIterator it(hm.reps, k); it; ++it)
                            ts.emplace_back(static_cast<int>(it.row()), 0, it.value());
                        pgen.push_back(sp_from_triplets<K>(M.dim_at(b), 1, ts));
                    }
                    rebuild();
                    hp = cohomology_at(P.under, b);
                    pb = compute_p_block(b);
                    mapped = SpMat<K>(pb * hp.reps);
                    co = hm.coords(mapped);
                }
            }
            // (b) injectivity: kernel classes of the induced map die via new
            // generators one degree lower
            if (hp.h() > 0) {
                SpMat<K> kerco = co.cols() > 0 ? kernel_basis(co) : sp_id(hp.h(), A.unit_scalar());
                if (kerco.cols() > 0) {
                    SpMat<K> zcycles = SpMat<K>(hp.reps * kerco);  // cycles in P at b
                    // p(z) is a boundary in M: find u with d_M u = p(z)
                    SpMat<K> pz = SpMat<K>(pb * zcycles);
                    auto u = solve(M.diff_at({b.i - 1, b.j}), pz);
                    if (!u) throw std::runtime_error("semifree_resolution: internal: kernel class not a boundary");
                    FreeLayout<K> L = free_layout(A, pres.gen_bid, work);
                    auto itp = L.pieces.find(b);
                    for (int k = 0; k < zcycles.cols(); ++k) {
                        Bidegree nb{b.i - 1, b.j};
                        pres.gen_bid.push_back(nb);
                        pres.twist.emplace_back();
                        auto& tw = pres.twist.back();
                        // express column k of zcycles as sum of (monomial, gen)
                        for (typename SpMat<K>::InnerIterator it(zcycles, k); it; ++it) {
                            int row = static_cast<int>(it.row());
                            // locate the piece containing this row
                            const typename FreeLayout<K>::Piece* pc = nullptr;
                            for (auto& cand : itp->second)
                                if (row >= cand.offset && row < cand.offset + cand.dim) pc = &cand;
                            if (!pc) throw std::runtime_error("semifree_resolution: layout lookup failed");
                            const auto& mons = A.basis(pc->mono_bid);
                            elem_add(tw[pc->gen], mons[row - pc->offset], it.value());
                        }
                        std::vector<Triplet<K>> ts;
                        for (typename SpMat<K>::InnerIterator it(*u, k); it; ++it)
                            ts.emplace_back(static_cast<int>(it.row()), 0, it.value());
                        pgen.push_back(sp_from_triplets<K>(M.dim_at(nb), 1, ts));
                    }
                    rebuild();
                    if (b.i - 1 < imin) imin = b.i - 1;  // keep descending
                }
            }
            // extend the sweep if new generators pushed the support down
            for (auto& [bb, dd] : P.under.dims)
                if (bb.j == jcur && bb.i < imin) imin = bb.i;
        }
        jcur += ascending ? 1 : -1;
    }

    pres.check();
    Resolution<K> R;
    R.pres = pres;
    rebuild();
    for (auto& [b, d] : P.under.dims) {
        SpMat<K> blk = compute_p_block(b);
        if (!sp_is_zero(blk)) R.p.blocks[b] = std::move(blk);
    }
    R.P = std::move(P);
    return R;
}

/******** shifts, twists, cones of modules ********/

template <class K>
DgModule<K> module_shift(const DgModule<K>& M, int n) {
    DgModule<K> out;
    out.alg = M.alg;
    out.under = shift(M.under, n);
    out.jlo = M.jlo;
    out.jhi = M.jhi;
    out.sup_lo = M.sup_lo;
    out.sup_hi = M.sup_hi;
    out.act.resize(M.alg->num_gens());
    for (int g = 0; g < M.alg->num_gens(); ++g) {
        bool neg = (M.alg->gens[g].c % 2 != 0) && (n % 2 != 0);
        for (auto& [b, m] : M.act[g]) {
            SpMat<K> mm = neg ? sp_scale(m, K(-1)) : m;
            out.act[g][{b.i - n, b.j}] = std::move(mm);
        }
    }
    return out;
}

template <class K>
DgModule<K> module_twist(const DgModule<K>& M, int t) {
    DgModule<K> out;
    out.alg = M.alg;
    out.under = twist(M.under, t);
    out.jlo = M.jlo + t;
    out.jhi = M.jhi + t;
    out.sup_lo = M.sup_lo ? std::optional<int>(*M.sup_lo + t) : std::nullopt;
    out.sup_hi = M.sup_hi ? std::optional<int>(*M.sup_hi + t) : std::nullopt;
    out.act.resize(M.alg->num_gens());
    for (int g = 0; g < M.alg->num_gens(); ++g)
        for (auto& [b, m] : M.act[g]) out.act[g][{b.i, b.j + t}] = m;
    return out;
}

template <class K>
DgModule<K> module_cone(const DgModuleMap<K>& f) {
    const DgModule<K>& S = *f.src;
    const DgModule<K>& T = *f.tgt;
    if (S.alg.get() != T.alg.get()) throw std::invalid_argument("cone: algebra mismatch");
    DgModule<K> C;
    C.alg = S.alg;
    ComplexMap<K> cf = f.as_complex_map();
    C.under = cone(cf);
    C.jlo = std::max(S.jlo, T.jlo);
    C.jhi = std::min(S.jhi, T.jhi);
    C.sup_lo = (S.sup_lo && T.sup_lo) ? std::optional<int>(std::min(*S.sup_lo, *T.sup_lo)) : std::nullopt;
    C.sup_hi = (S.sup_hi && T.sup_hi) ? std::optional<int>(std::max(*S.sup_hi, *T.sup_hi)) : std::nullopt;
    C.act.resize(C.alg->num_gens());
    for (int g = 0; g < C.alg->num_gens(); ++g) {
        Bidegree gb{C.alg->gens[g].c, C.alg->gens[g].t};
        bool neg = C.alg->gens[g].odd;
        for (auto& [b, d] : C.under.dims) {
            Bidegree tb = b + gb;
            if (C.under.dims.find(tb) == C.under.dims.end()) continue;
            int ds = S.dim_at({b.i + 1, b.j});
            int es = S.dim_at({tb.i + 1, tb.j});
            std::vector<Triplet<K>> ts;
            SpMat<K> sa = S.act_at(g, {b.i + 1, b.j});
            for (int o = 0; o < sa.outerSize(); ++o)
                for (typename SpMat<K>::InnerIterator it(sa, o); it; ++it)
                    ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                    neg ? K(-it.value()) : it.value());
            SpMat<K> ta = T.act_at(g, b);
            for (int o = 0; o < ta.outerSize(); ++o)
                for (typename SpMat<K>::InnerIterator it(ta, o); it; ++it)
                    ts.emplace_back(es + static_cast<int>(it.row()), ds + static_cast<int>(it.col()), it.value());
            C.set_act(g, b, sp_from_triplets<K>(C.dim_at(tb), C.dim_at(b), ts));
        }
    }
    return C;
}

/******** window generation ********/

/// do the cohomology classes with j in gen_w generate everything on test_w
/// under the maps induced by cycle generators of the algebra?
template <class K>
bool window_generation_check(const DgModule<K>& M, Window gen_w, Window test_w) {
    if (gen_w.lo < test_w.lo || gen_w.hi > test_w.hi)
        throw std::invalid_argument("window_generation_check: test window must contain gen window");
    M.require_window(test_w, "window_generation_check");
    const auto& A = *M.alg;
    std::map<Bidegree, HSlice<K>> H;
    for (auto& [b, d] : M.under.dims)
        if (test_w.contains(b.j)) H[b] = cohomology_at(M.under, b);
    // spans per bidegree as column matrices of H-coordinates
    std::map<Bidegree, std::vector<SRow<K>>> span;  // echelon rows
    auto add_coord_vec = [&](Bidegree b, SRow<K> v) {
        auto& rows = span[b];
        for (auto& r : rows) {
            if (v.empty()) break;
            auto it = std::lower_bound(v.begin(), v.end(), r.front().first,
                                       [](const std::pair<int, K>& a, int cc) { return a.first < cc; });
            if (it != v.end() && it->first == r.front().first) v = detail::row_axpy(v, r, K(-it->second));
        }
        if (v.empty()) return false;
        K inv = v.front().second.inv();
        for (auto& [cc, x] : v) x = x * inv;
        auto pos = std::lower_bound(rows.begin(), rows.end(), v.front().first,
                                    [](const SRow<K>& r, int lead) { return r.front().first < lead; });
        rows.insert(pos, std::move(v));
        return true;
    };
    // seed: all classes with internal degree in gen_w
    for (auto& [b, h] : H) {
        if (!gen_w.contains(b.j) || h.h() == 0) continue;
        for (int k = 0; k < h.h(); ++k) add_coord_vec(b, {{k, A.unit_scalar()}});
    }
    // saturate under cycle generators
    bool changed = true;
    while (changed) {
        changed = false;
        for (int g = 0; g < A.num_gens(); ++g) {
            if (!A.gen_diff[g].empty()) continue;  // only cycles act on cohomology
            Bidegree gb{A.gens[g].c, A.gens[g].t};
            for (auto& [b, rows] : span) {
                Bidegree tb = b + gb;
                auto it = H.find(tb);
                if (it == H.end() || it->second.h() == 0) continue;
                auto& hsrc = H.at(b);
                for (auto& r : rows) {
                    // class coords -> cycle -> acted -> coords
                    std::vector<Triplet<K>> ts;
                    for (auto& [row, val] : r) ts.emplace_back(row, 0, val);
                    SpMat<K> coord = sp_from_triplets<K>(hsrc.h(), 1, ts);
                    SpMat<K> cyc = SpMat<K>(hsrc.reps * coord);
                    SpMat<K> img = SpMat<K>(M.act_at(g, b) * cyc);
                    SpMat<K> co = it->second.coords(img);
                    SRow<K> v;
                    for (typename SpMat<K>::InnerIterator it2(co, 0); it2; ++it2)
                        v.emplace_back(static_cast<int>(it2.row()), it2.value());
                    if (add_coord_vec(tb, std::move(v))) changed = true;
                }
            }
        }
    }
    for (auto& [b, h] : H) {
        if (h.h() == 0) continue;
        auto it = span.find(b);
        int have = it == span.end() ? 0 : static_cast<int>(it->second.size());
        if (have < h.h()) return false;
    }
    return true;
}

}  // namespace koszul
