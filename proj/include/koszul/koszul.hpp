#pragma once
// The linear Koszul duality functors between dg-modules over T = Sym(X) and
// S = Sym(Y), Y = X^dual[-1], together with the generalized Koszul complexes,
// the adjunction unit/counit, and the contravariant compositions K and kappa.
//
// A(M) = S (x) M with the tensor differential plus the local Koszul term
//   d2(s (x) m) = (-1)^{|s|} sum_a  s x_a^* (x) x_a m ,
// B(N) = T^dual (x) N with
//   d2(phi (x) n) = -(-1)^{|phi|} sum_a  phi(x_a . -) (x) x_a^* n .
// The relative minus sign between the two Koszul terms makes the adjunction
// unit and counit chain maps for the dual-differential convention
// d(phi) = -(-1)^{|phi|} phi . d used by the duality functor; it conjugates
// to the sign-free convention bidegree-wise and changes no cohomology.

#include <map>
#include <memory>
#include <vector>

#include "koszul/dgmod.hpp"

namespace koszul {

template <class K>
struct KoszulContext {
    GeneratorComplex<K> X, Y;
    std::shared_ptr<const SymDgAlgebra<K>> T, S, R;
    std::vector<int> dual_gen;  // T-generator index -> S-generator index of its dual
    K zero;

    const K& z() const { return zero; }
};

template <class K>
KoszulContext<K> make_context(const GeneratorComplex<K>& X, const K& zero) {
    KoszulContext<K> ctx;
    ctx.zero = zero;
    ctx.X = X;
    ctx.X.check(zero);
    ctx.Y = build_Y(X, zero);
    ctx.T = build_algebra(ctx.X, 0, zero, "x");
    ctx.S = build_algebra(ctx.Y, 0, zero, "y");
    ctx.R = build_algebra(ctx.Y, 2, zero, "y");
    ctx.dual_gen.resize(ctx.T->num_gens(), -1);
    for (int a = 0; a < ctx.T->num_gens(); ++a) {
        int comp = ctx.T->gens[a].comp, idx = ctx.T->gens[a].idx;
        for (int s = 0; s < ctx.S->num_gens(); ++s)
            if (ctx.S->gens[s].comp == 1 - comp && ctx.S->gens[s].idx == idx) ctx.dual_gen[a] = s;
        if (ctx.dual_gen[a] < 0) throw std::runtime_error("context: dual generator missing");
    }
    return ctx;
}

/******** tensor layouts ********/

struct TensorPiece {
    Bidegree L, R;
    int dimL = 0, dimR = 0, offset = 0;
};

struct TensorLayout {
    std::map<Bidegree, std::vector<TensorPiece>> pieces;
    std::map<Bidegree, int> dims;
    int dim_at(Bidegree b) const {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    const TensorPiece* find(Bidegree out, Bidegree L) const {
        auto it = pieces.find(out);
        if (it == pieces.end()) return nullptr;
        for (auto& p : it->second)
            if (p.L == L) return &p;
        return nullptr;
    }
};

inline TensorLayout build_tensor_layout(const std::map<Bidegree, int>& left, const std::map<Bidegree, int>& right,
                                        Window w) {
    TensorLayout L;
    for (auto& [bl, dl] : left)
        for (auto& [br, dr] : right) {
            Bidegree out = bl + br;
            if (!w.contains(out.j)) continue;
            L.pieces[out].push_back({bl, br, dl, dr, 0});
        }
    for (auto& [b, v] : L.pieces) {
        std::sort(v.begin(), v.end(), [](const TensorPiece& a, const TensorPiece& b2) { return a.L < b2.L; });
        int off = 0;
        for (auto& p : v) {
            p.offset = off;
            off += p.dimL * p.dimR;
        }
        L.dims[b] = off;
    }
    return L;
}

template <class K>
struct TensorModule {
    DgModule<K> mod;
    TensorLayout lay;
};

namespace detail {

// out(Q(a', b), P(a, b)) += BL(a', a) for all b, scaled by sgn
template <class K>
void add_left_kron(std::vector<Triplet<K>>& ts, const TensorPiece& P, const TensorPiece& Q, const SpMat<K>& BL,
                   int sgn) {
    for (int o = 0; o < BL.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(BL, o); it; ++it) {
            K v = sgn < 0 ? K(-it.value()) : it.value();
            for (int b = 0; b < P.dimR; ++b)
                ts.emplace_back(Q.offset + static_cast<int>(it.row()) * Q.dimR + b,
                                P.offset + static_cast<int>(it.col()) * P.dimR + b, v);
        }
}

// out(Q(a, b'), P(a, b)) += BR(b', b) for all a, scaled by sgn
template <class K>
void add_right_kron(std::vector<Triplet<K>>& ts, const TensorPiece& P, const TensorPiece& Q, const SpMat<K>& BR,
                    int sgn) {
    for (int o = 0; o < BR.outerSize(); ++o)
        for (typename SpMat<K>::InnerIterator it(BR, o); it; ++it) {
            K v = sgn < 0 ? K(-it.value()) : it.value();
            for (int a = 0; a < P.dimL; ++a)
                ts.emplace_back(Q.offset + a * Q.dimR + static_cast<int>(it.row()),
                                P.offset + a * P.dimR + static_cast<int>(it.col()), v);
        }
}

// out(Q(a', b'), P(a, b)) += BL(a', a) BR(b', b), scaled by sgn
template <class K>
void add_kron(std::vector<Triplet<K>>& ts, const TensorPiece& P, const TensorPiece& Q, const SpMat<K>& BL,
              const SpMat<K>& BR, int sgn) {
    for (int ol = 0; ol < BL.outerSize(); ++ol)
        for (typename SpMat<K>::InnerIterator itl(BL, ol); itl; ++itl)
            for (int orr = 0; orr < BR.outerSize(); ++orr)
                for (typename SpMat<K>::InnerIterator itr(BR, orr); itr; ++itr) {
                    K v = itl.value() * itr.value();
                    if (sgn < 0) v = -v;
                    ts.emplace_back(Q.offset + static_cast<int>(itl.row()) * Q.dimR + static_cast<int>(itr.row()),
                                    P.offset + static_cast<int>(itl.col()) * P.dimR + static_cast<int>(itr.col()), v);
                }
}

inline int parity(int x) { return ((x % 2) + 2) % 2; }

}  // namespace detail

/******** the functor A ********/

// dims of the algebra A over internal degrees [tlo, 0], as a map
template <class K>
std::map<Bidegree, int> algebra_dims(const SymDgAlgebra<K>& A, int tlo, int thi) {
    std::map<Bidegree, int> out;
    int step = A.t_step();
    if (step == 0 || A.num_gens() == 0) {
        if (tlo <= 0 && 0 <= thi) out[{0, 0}] = 1;
        return out;
    }
    int cmin = 0, cmax = 0;
    for (auto& g : A.gens) {
        cmin = std::min(cmin, g.c);
        cmax = std::max(cmax, g.c);
    }
    for (int t = tlo; t <= thi; ++t) {
        if (t % step != 0 || t / step < 0) continue;
        int wt = t / step;
        if (A.internal_support_bounded() && wt > A.max_weight()) continue;
        for (int c = std::min(cmin * wt, cmax * wt); c <= std::max(cmin * wt, cmax * wt); ++c) {
            int d = A.dim({c, t});
            if (d > 0) out[{c, t}] = d;
        }
    }
    return out;
}

/// A(M) = S (x) M for M a T-module with internal degrees bounded above
template <class K>
TensorModule<K> functor_A(const KoszulContext<K>& ctx, const DgModule<K>& M, Window w) {
    const auto& S = *ctx.S;
    const auto& T = *ctx.T;
    if (M.alg.get() != ctx.T.get()) throw std::invalid_argument("functor_A: module is not over T");
    int hiM;
    if (M.sup_hi) hiM = *M.sup_hi;
    else if (S.internal_support_bounded()) hiM = w.hi + 2 * S.max_weight();
    else throw std::invalid_argument("functor_A: input has unbounded-above internal degrees");
    int loM = w.lo;
    if (hiM >= loM) M.require_window(Window(loM, hiM), "functor_A");

    std::map<Bidegree, int> left = algebra_dims(S, w.lo - hiM, 0);
    std::map<Bidegree, int> right;
    for (auto& [b, d] : M.under.dims)
        if (b.j >= loM && b.j <= hiM) right[b] = d;

    TensorModule<K> out;
    out.lay = build_tensor_layout(left, right, w);
    out.mod.alg = ctx.S;
    out.mod.act.resize(S.num_gens());
    out.mod.under.dims = out.lay.dims;
    out.mod.jlo = w.lo;
    out.mod.jhi = w.hi;
    out.mod.sup_hi = M.sup_hi;
    if (M.sup_lo && S.internal_support_bounded()) out.mod.sup_lo = *M.sup_lo - 2 * S.max_weight();

    for (auto& [b, ps] : out.lay.pieces) {
        Bidegree b1{b.i + 1, b.j};
        std::vector<Triplet<K>> dts;
        for (auto& P : ps) {
            // d1 = d_S (x) 1 + (-1)^{|s|} 1 (x) d_M
            if (const auto* Q = out.lay.find(b1, {P.L.i + 1, P.L.j}))
                detail::add_left_kron(dts, P, *Q, S.diff_block(P.L), +1);
            if (const auto* Q = out.lay.find(b1, P.L))
                detail::add_right_kron(dts, P, *Q, M.diff_at(P.R), detail::parity(P.L.i) ? -1 : +1);
            // d2 = (-1)^{|s|} sum_a (s x_a^*) (x) (x_a m)
            for (int a = 0; a < T.num_gens(); ++a) {
                int sa = ctx.dual_gen[a];
                Bidegree La{P.L.i + S.gens[sa].c, P.L.j + S.gens[sa].t};
                if (const auto* Q = out.lay.find(b1, La)) {
                    const SpMat<K>& rm = S.rmul_block(sa, P.L);
                    SpMat<K> am = M.act_at(a, P.R);
                    if (!sp_is_zero(rm) && !sp_is_zero(am))
                        detail::add_kron(dts, P, *Q, rm, am, detail::parity(P.L.i) ? -1 : +1);
                }
            }
        }
        out.mod.under.set_diff(b, sp_from_triplets<K>(out.lay.dim_at(b1), out.lay.dim_at(b), dts));
        // S acts by left multiplication on the left factor
        for (int g = 0; g < S.num_gens(); ++g) {
            Bidegree gb{S.gens[g].c, S.gens[g].t};
            Bidegree tb = b + gb;
            std::vector<Triplet<K>> ats;
            for (auto& P : ps)
                if (const auto* Q = out.lay.find(tb, {P.L.i + gb.i, P.L.j + gb.j}))
                    detail::add_left_kron(ats, P, *Q, S.lmul_block(g, P.L), +1);
            out.mod.set_act(g, b, sp_from_triplets<K>(out.lay.dim_at(tb), out.lay.dim_at(b), ats));
        }
    }
    return out;
}

/******** the functor B ********/

template <class K>
struct BOut {
    DgModule<K> mod;
    TensorLayout lay;
    DgModule<K> TD;  // the materialized T-dual used as the left factor
};

/// B(N) = T^dual (x) N for N an S-module with internal degrees bounded above
template <class K>
BOut<K> functor_B(const KoszulContext<K>& ctx, const DgModule<K>& N, Window w) {
    const auto& S = *ctx.S;
    const auto& T = *ctx.T;
    if (N.alg.get() != ctx.S.get()) throw std::invalid_argument("functor_B: module is not over S");
    int hiN;
    if (N.sup_hi) hiN = *N.sup_hi;
    else if (T.internal_support_bounded()) hiN = w.hi + 2 * T.max_weight();
    else throw std::invalid_argument("functor_B: input has unbounded-above internal degrees");
    int loN = w.lo;
    if (hiN >= loN) N.require_window(Window(loN, hiN), "functor_B");

    BOut<K> out;
    // T^dual materialized on [w.lo - hiN, 0]
    int tdlo = std::min(w.lo - hiN, 0);
    auto freeT = free_module<K>(ctx.T, {{0, 0}}, Window(0, -tdlo));
    out.TD = dualize(freeT, Window(tdlo, 0));

    std::map<Bidegree, int> left = out.TD.under.dims;
    std::map<Bidegree, int> right;
    for (auto& [b, d] : N.under.dims)
        if (b.j >= loN && b.j <= hiN) right[b] = d;

    out.lay = build_tensor_layout(left, right, w);
    out.mod.alg = ctx.T;
    out.mod.act.resize(T.num_gens());
    out.mod.under.dims = out.lay.dims;
    out.mod.jlo = w.lo;
    out.mod.jhi = w.hi;
    out.mod.sup_hi = N.sup_hi;
    if (N.sup_lo && T.internal_support_bounded()) out.mod.sup_lo = *N.sup_lo - 2 * T.max_weight();

    for (auto& [b, ps] : out.lay.pieces) {
        Bidegree b1{b.i + 1, b.j};
        std::vector<Triplet<K>> dts;
        for (auto& P : ps) {
            // d1 = d_{T^dual} (x) 1 + (-1)^{|phi|} 1 (x) d_N
            if (const auto* Q = out.lay.find(b1, {P.L.i + 1, P.L.j}))
                detail::add_left_kron(dts, P, *Q, out.TD.diff_at(P.L), +1);
            if (const auto* Q = out.lay.find(b1, P.L))
                detail::add_right_kron(dts, P, *Q, N.diff_at(P.R), detail::parity(P.L.i) ? -1 : +1);
            // d2 = -(-1)^{|phi|} sum_a phi(x_a . -) (x) (x_a^* n) ;
            // phi . L_{x_a} = (-1)^{c_a |phi|} rho^{TD}_{x_a}(phi)
            for (int a = 0; a < T.num_gens(); ++a) {
                int sa = ctx.dual_gen[a];
                Bidegree La{P.L.i + T.gens[a].c, P.L.j + T.gens[a].t};
                if (const auto* Q = out.lay.find(b1, La)) {
                    SpMat<K> lm = out.TD.act_at(a, P.L);
                    SpMat<K> an = N.act_at(sa, P.R);
                    if (sp_is_zero(lm) || sp_is_zero(an)) continue;
                    int sgn = -1;
                    if (detail::parity(P.L.i)) sgn = -sgn;
                    if (detail::parity(T.gens[a].c * P.L.i)) sgn = -sgn;
                    detail::add_kron(dts, P, *Q, lm, an, sgn);
                }
            }
        }
        out.mod.under.set_diff(b, sp_from_triplets<K>(out.lay.dim_at(b1), out.lay.dim_at(b), dts));
        // T acts through the T^dual factor
        for (int g = 0; g < T.num_gens(); ++g) {
            Bidegree gb{T.gens[g].c, T.gens[g].t};
            Bidegree tb = b + gb;
            std::vector<Triplet<K>> ats;
            for (auto& P : ps)
                if (const auto* Q = out.lay.find(tb, {P.L.i + gb.i, P.L.j + gb.j}))
                    detail::add_left_kron(ats, P, *Q, out.TD.act_at(g, P.L), +1);
            out.mod.set_act(g, b, sp_from_triplets<K>(out.lay.dim_at(tb), out.lay.dim_at(b), ats));
        }
    }
    return out;
}

/******** Koszul complexes with their (co)augmentations ********/

template <class K>
struct AugmentedModule {
    DgModule<K> mod;
    DgModule<K> unit_obj;  // trivial k
    DgModuleMap<K> aug;    // K1 -> k  or  k -> K2
    bool to_unit = true;
    // pointers must be re-bound once the struct has its final address
    void bind() {
        aug.src = to_unit ? &mod : &unit_obj;
        aug.tgt = to_unit ? &unit_obj : &mod;
    }
};

template <class K>
AugmentedModule<K> koszul_K1(const KoszulContext<K>& ctx, Window w) {
    auto freeT = free_module<K>(ctx.T, {{0, 0}}, Window(0, -std::min(w.lo, 0)));
    auto TD = dualize(freeT, Window(std::min(w.lo, 0), 0));
    auto A = functor_A(ctx, TD, w);
    AugmentedModule<K> out;
    out.mod = std::move(A.mod);
    out.unit_obj = trivial_module<K>(ctx.S, {{{0, 0}, 1}});
    out.aug.blocks.clear();
    if (w.contains(0)) {
        const auto* P = A.lay.find({0, 0}, {0, 0});
        if (P) {
            std::vector<Triplet<K>> ts;
            ts.emplace_back(0, P->offset, ctx.S->unit_scalar());
            out.aug.blocks[{0, 0}] = sp_from_triplets<K>(1, A.lay.dim_at({0, 0}), ts);
        }
    }
    return out;
}

template <class K>
AugmentedModule<K> koszul_K2(const KoszulContext<K>& ctx, Window w) {
    auto freeS = free_module<K>(ctx.S, {{0, 0}}, Window(std::min(w.lo, 0), 0));
    auto B = functor_B(ctx, freeS, w);
    AugmentedModule<K> out;
    out.to_unit = false;
    out.mod = std::move(B.mod);
    out.unit_obj = trivial_module<K>(ctx.T, {{{0, 0}, 1}});
    out.aug.blocks.clear();
    if (w.contains(0)) {
        const auto* P = B.lay.find({0, 0}, {0, 0});
        if (P) {
            std::vector<Triplet<K>> ts;
            ts.emplace_back(P->offset, 0, ctx.T->unit_scalar());
            out.aug.blocks[{0, 0}] = sp_from_triplets<K>(B.lay.dim_at({0, 0}), 1, ts);
        }
    }
    return out;
}

/******** adjunction unit and counit ********/

template <class K>
struct UnitData {
    TensorModule<K> AM;
    BOut<K> BAM;
    DgModuleMap<K> eta;  // M -> B(A(M)), blocks on the window
    void bind(const DgModule<K>& M) {
        eta.src = &M;
        eta.tgt = &BAM.mod;
    }
};

/// unit M -> BA(M):  m |-> sum_mu (-1)^{|mu|} mu^* (x) (1 (x) mu m)
template <class K>
UnitData<K> unit_map(const KoszulContext<K>& ctx, const DgModule<K>& M, Window w) {
    if (!M.sup_hi) throw std::invalid_argument("unit: input must be in Mod_-");
    int hiM = *M.sup_hi;
    UnitData<K> out;
    out.AM = functor_A(ctx, M, Window(w.lo, hiM >= w.lo ? hiM : w.lo));
    out.BAM = functor_B(ctx, out.AM.mod, w);
    const auto& T = *ctx.T;

    std::map<Bidegree, std::vector<Triplet<K>>> blocks;
    auto tdims = algebra_dims(T, 0, 2 * (hiM - w.lo) > 0 ? 2 * (hiM - w.lo) : 0);
    // cap by bounded T support
    for (auto& [b, d] : M.under.dims) {
        if (!w.contains(b.j)) continue;
        auto& ts = blocks[b];
        for (auto& [tb, td] : tdims) {
            if (tb.j > hiM - b.j) continue;
            Bidegree Ltd{-tb.i, -tb.j};
            const TensorPiece* PL = out.BAM.lay.find(b, Ltd);
            if (!PL) continue;
            Bidegree mb = b + tb;  // where mu m lives
            const TensorPiece* P2 = out.AM.lay.find(mb, {0, 0});
            if (!P2) continue;
            const auto& mons = T.basis(tb);
            int sgn = detail::parity(tb.i) ? -1 : 1;
            for (int a = 0; a < static_cast<int>(mons.size()); ++a) {
                SpMat<K> act = M.mono_action(mons[a], b);
                for (int o = 0; o < act.outerSize(); ++o)
                    for (typename SpMat<K>::InnerIterator it(act, o); it; ++it) {
                        K v = sgn < 0 ? K(-it.value()) : it.value();
                        ts.emplace_back(PL->offset + a * PL->dimR + P2->offset + static_cast<int>(it.row()),
                                        static_cast<int>(it.col()), v);
                    }
            }
        }
    }
    for (auto& [b, ts] : blocks) {
        SpMat<K> blk = sp_from_triplets<K>(out.BAM.lay.dim_at(b), M.dim_at(b), ts);
        if (!sp_is_zero(blk)) out.eta.blocks[b] = std::move(blk);
    }
    return out;
}

template <class K>
struct CounitData {
    BOut<K> BN;
    TensorModule<K> ABN;
    DgModuleMap<K> eps;  // AB(N) -> N
    void bind(const DgModule<K>& N) {
        eps.src = &ABN.mod;
        eps.tgt = &N;
    }
};

/// counit AB(N) -> N:  s (x) phi (x) n |-> phi(1) . s n
template <class K>
CounitData<K> counit_map(const KoszulContext<K>& ctx, const DgModule<K>& N, Window w) {
    if (!N.sup_hi) throw std::invalid_argument("counit: input must be in Mod_-");
    int hiN = *N.sup_hi;
    CounitData<K> out;
    out.BN = functor_B(ctx, N, Window(w.lo, hiN >= w.lo ? hiN : w.lo));
    out.ABN = functor_A(ctx, out.BN.mod, w);
    const auto& S = *ctx.S;

    std::map<Bidegree, std::vector<Triplet<K>>> blocks;
    for (auto& [b, ps] : out.ABN.lay.pieces) {
        if (!w.contains(b.j)) continue;
        auto& ts = blocks[b];
        for (auto& P : ps) {
            // P.L = sigma bidegree; P.R = BN bidegree; inside BN the piece
            // with L_TD = (0,0) holds 1^* (x) n with n at P.R
            const TensorPiece* P2 = out.BN.lay.find(P.R, {0, 0});
            if (!P2) continue;
            const auto& sigmas = S.basis(P.L);
            for (int a = 0; a < static_cast<int>(sigmas.size()); ++a) {
                SpMat<K> act = N.mono_action(sigmas[a], P.R);  // N(P.R) -> N(b)
                for (int o = 0; o < act.outerSize(); ++o)
                    for (typename SpMat<K>::InnerIterator it(act, o); it; ++it)
                        ts.emplace_back(static_cast<int>(it.row()),
                                        P.offset + a * P.dimR + P2->offset + static_cast<int>(it.col()), it.value());
            }
        }
    }
    for (auto& [b, ts] : blocks) {
        SpMat<K> blk = sp_from_triplets<K>(N.dim_at(b), out.ABN.lay.dim_at(b), ts);
        if (!sp_is_zero(blk)) out.eps.blocks[b] = std::move(blk);
    }
    return out;
}

/******** contravariant dualities ********/

/// K_Omega(M) = A(D_Omega(M)) for M in Mod_+ with finite slices
template <class K>
TensorModule<K> K_Omega(const KoszulContext<K>& ctx, const DgModule<K>& M, Window w,
                        const DualizingData& om = {}) {
    if (!M.sup_lo) throw std::invalid_argument("K_Omega: input must be bounded below (Mod_+)");
    int dhi = -*M.sup_lo;
    Window dw(std::min(w.lo, dhi), dhi);
    DgModule<K> D = dualize(M, dw, om);
    return functor_A(ctx, D, w);
}

/// regrade an S-module along xi into an R-module (blocks carried verbatim)
template <class K>
DgModule<K> regrade_module(const DgModule<K>& NS, std::shared_ptr<const SymDgAlgebra<K>> R) {
    DgModule<K> out;
    out.alg = R;
    out.act.resize(R->num_gens());
    out.jlo = NS.jlo;
    out.jhi = NS.jhi;
    out.sup_lo = NS.sup_lo;
    out.sup_hi = NS.sup_hi;
    for (auto& [b, d] : NS.under.dims) out.under.dims[xi_map(b)] = d;
    for (auto& [b, m] : NS.under.diff) out.under.diff[xi_map(b)] = m;
    for (int g = 0; g < R->num_gens(); ++g)
        for (auto& [b, m] : NS.act[g]) out.act[g][xi_map(b)] = m;
    return out;
}

template <class K>
DgModule<K> unregrade_module(const DgModule<K>& NR, std::shared_ptr<const SymDgAlgebra<K>> S) {
    DgModule<K> out;
    out.alg = S;
    out.act.resize(S->num_gens());
    out.jlo = NR.jlo;
    out.jhi = NR.jhi;
    out.sup_lo = NR.sup_lo;
    out.sup_hi = NR.sup_hi;
    for (auto& [b, d] : NR.under.dims) out.under.dims[xi_unmap(b)] = d;
    for (auto& [b, m] : NR.under.diff) out.under.diff[xi_unmap(b)] = m;
    for (int g = 0; g < S->num_gens(); ++g)
        for (auto& [b, m] : NR.act[g]) out.act[g][xi_unmap(b)] = m;
    return out;
}

/// kappa(M) = xi(K_Omega(M)), an R-module
template <class K>
DgModule<K> kappa(const KoszulContext<K>& ctx, const DgModule<K>& M, Window w, const DualizingData& om = {}) {
    TensorModule<K> KM = K_Omega(ctx, M, w, om);
    return regrade_module(KM.mod, ctx.R);
}

/// kappa^{-1}(N) = D_Omega(B(xi^{-1}(N))) for N over R in Mod_-
template <class K>
DgModule<K> kappa_inv(const KoszulContext<K>& ctx, const DgModule<K>& N, Window w, const DualizingData& om = {}) {
    DgModule<K> NS = unregrade_module(N, ctx.S);
    Window bw(-w.hi, -w.lo);
    BOut<K> B = functor_B(ctx, NS, bw);
    return dualize(B.mod, w, om);
}

/// cohomology table of a module on a window
template <class K>
CohomologyTable<K> module_cohomology(const DgModule<K>& M, Window w, bool reps = false) {
    M.require_window(w, "cohomology");
    return cohomology(M.under, w, reps);
}

}  // namespace koszul
