#pragma once
// Derived intersections of linear subbundles over a point, the independent
// Tor oracle, morphism functors induced by bundle maps, and base change
// along finite field extensions.
//
// For subbundles F1, F2 of E the generator complex is
//   X = ( F1^perp -> F2^dual )   in degrees -1, 0,
// the differential restricting a functional that kills F1 to F2. Its Sym is
// the function dg-algebra of the derived intersection; cohomology tables are
// cross-checked against a classical Koszul-resolution Tor computation that
// shares nothing with the Sym machinery beyond exact linear algebra.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "koszul/koszul.hpp"

namespace koszul {

/******** subbundle setups ********/

template <class K>
struct SubbundleSetup {
    int dim_E = 0;
    DMat<K> F1, F2;  // columns span the subspaces
    K zero;

    void check() const {
        if (F1.rows() != dim_E || F2.rows() != dim_E)
            throw std::invalid_argument("setup: basis rows must equal dim_E");
        if (rank_of(sp_from_dense(F1)) != F1.cols() || rank_of(sp_from_dense(F2)) != F2.cols())
            throw std::invalid_argument("setup: basis columns must be independent");
    }
};

template <class K>
DMat<K> zeros(int rows, int cols, const K& zero) {
    DMat<K> m(rows, cols);
    m.setConstant(zero);
    return m;
}

/// basis of F^perp = { xi in E^dual : xi|_F = 0 }, namely ker(F^T)
template <class K>
DMat<K> orthogonal_basis(const DMat<K>& F, const K& zero) {
    DMat<K> Ft = F.transpose();
    return sp_to_dense(kernel_basis(sp_from_dense(Ft)), zero);
}

/// X = (F1^perp -> F2^dual), differential = restriction of functionals
template <class K>
GeneratorComplex<K> build_X_lkd(const SubbundleSetup<K>& s) {
    s.check();
    GeneratorComplex<K> X;
    DMat<K> Kperp = orthogonal_basis(s.F1, s.zero);
    X.ranks[-1] = static_cast<int>(Kperp.cols());
    X.ranks[0] = static_cast<int>(s.F2.cols());
    if (Kperp.cols() > 0 && s.F2.cols() > 0) {
        DMat<K> rest = s.F2.transpose() * Kperp;  // (dim F2) x (dim F1^perp)
        bool nz = false;
        for (int i = 0; i < rest.rows(); ++i)
            for (int j = 0; j < rest.cols(); ++j)
                if (!rest(i, j).is_zero()) nz = true;
        if (nz) X.diffs[-1] = std::move(rest);
    }
    X.check(s.zero);
    return X;
}

template <class K>
SubbundleSetup<K> dual_setup(const SubbundleSetup<K>& s) {
    s.check();
    SubbundleSetup<K> d;
    d.dim_E = s.dim_E;
    d.zero = s.zero;
    d.F1 = orthogonal_basis(s.F1, s.zero);
    d.F2 = orthogonal_basis(s.F2, s.zero);
    return d;
}

template <class K>
CohomologyTable<K> derived_intersection_cohomology(const SubbundleSetup<K>& s, Window w) {
    auto X = build_X_lkd(s);
    auto T = build_algebra(X, 0, s.zero, "x");
    return cohomology(T->as_complex(w), w);
}

/******** the independent Tor oracle ********/

namespace torr {

// exponent vectors of total degree m in r variables, lexicographic
inline void monomials_rec(std::vector<std::vector<int>>& out, std::vector<int>& cur, int v, int left) {
    if (v + 1 == static_cast<int>(cur.size())) {
        cur[v] = left;
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= left; ++e) {
        cur[v] = e;
        monomials_rec(out, cur, v + 1, left - e);
    }
}
inline std::vector<std::vector<int>> monomials(int r, int m) {
    std::vector<std::vector<int>> out;
    if (r == 0) {
        if (m == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(r, 0);
    monomials_rec(out, cur, 0, m);
    return out;
}

inline std::vector<std::vector<int>> subsets(int c, int i) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == i) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < c; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace torr

/// graded Tor of the two structure sheaves via the classical Koszul
/// resolution of O_{F1} over Sym(E^dual), tensored down to O_{F2}
template <class K>
CohomologyTable<K> tor_oracle(const SubbundleSetup<K>& s, Window w) {
    s.check();
    DMat<K> Kperp = orthogonal_basis(s.F1, s.zero);
    int c = static_cast<int>(Kperp.cols());
    int r = static_cast<int>(s.F2.cols());
    // ell(v, t): coefficient of the v-th F2 coordinate in xi_t |_{F2}
    DMat<K> ell = r > 0 && c > 0 ? DMat<K>(s.F2.transpose() * Kperp) : zeros(r, c, s.zero);

    BigradedComplex<K> C;
    std::map<std::pair<int, int>, std::vector<std::vector<int>>> mono_cache;
    auto monos = [&](int m) -> const std::vector<std::vector<int>>& {
        auto key = std::make_pair(r, m);
        auto it = mono_cache.find(key);
        if (it == mono_cache.end()) it = mono_cache.emplace(key, torr::monomials(r, m)).first;
        return it->second;
    };
    std::map<int, std::vector<std::vector<int>>> sub_cache;
    auto subs = [&](int i) -> const std::vector<std::vector<int>>& {
        auto it = sub_cache.find(i);
        if (it == sub_cache.end()) it = sub_cache.emplace(i, torr::subsets(c, i)).first;
        return it->second;
    };

    for (int j = std::max(0, w.lo); j <= w.hi; ++j) {
        if (j % 2 != 0) continue;
        for (int i = 0; i <= c; ++i) {
            int m = (j - 2 * i) / 2;
            if (j - 2 * i < 0 || (j - 2 * i) % 2 != 0) continue;
            int d = static_cast<int>(subs(i).size() * monos(m).size());
            if (d > 0) C.dims[{-i, j}] = d;
        }
    }
    for (auto& [b, d] : C.dims) {
        int i = -b.i;
        int m = (b.j - 2 * i) / 2;
        if (i == 0) continue;
        Bidegree tb{b.i + 1, b.j};
        if (C.dims.find(tb) == C.dims.end()) continue;
        const auto& S = subs(i);
        const auto& Sm = subs(i - 1);
        const auto& Mo = monos(m);
        const auto& Mo1 = monos(m + 1);
        std::map<std::vector<int>, int> sub_idx, mono_idx;
        for (int k = 0; k < static_cast<int>(Sm.size()); ++k) sub_idx[Sm[k]] = k;
        for (int k = 0; k < static_cast<int>(Mo1.size()); ++k) mono_idx[Mo1[k]] = k;
        std::vector<Triplet<K>> ts;
        for (int a = 0; a < static_cast<int>(S.size()); ++a)
            for (int bcol = 0; bcol < static_cast<int>(Mo.size()); ++bcol) {
                for (int t = 0; t < i; ++t) {
                    int sgen = S[a][t];
                    std::vector<int> rest;
                    for (int u = 0; u < i; ++u)
                        if (u != t) rest.push_back(S[a][u]);
                    int row_sub = sub_idx.at(rest);
                    for (int v = 0; v < r; ++v) {
                        if (ell(v, sgen).is_zero()) continue;
                        std::vector<int> mono = Mo[bcol];
                        mono[v] += 1;
                        int row = row_sub * static_cast<int>(Mo1.size()) + mono_idx.at(mono);
                        K val = ell(v, sgen);
                        if (t % 2 != 0) val = -val;
                        ts.emplace_back(row, a * static_cast<int>(Mo.size()) + bcol, val);
                    }
                }
            }
        C.set_diff(b, sp_from_triplets<K>(C.dims.at(tb), d, ts));
    }
    C.check();
    return cohomology(C, w);
}

/******** morphisms of setups ********/

template <class K>
struct BundleMorphismSetup {
    SubbundleSetup<K> src, tgt;  // (E, F1, F2) and (E', F1', F2')
    DMat<K> phi;                 // E -> E'

    void check() const {
        src.check();
        tgt.check();
        if (phi.rows() != tgt.dim_E || phi.cols() != src.dim_E)
            throw std::invalid_argument("morphism: phi shape");
        // phi(F_i) inside F_i'
        for (int which = 0; which < 2; ++which) {
            const DMat<K>& F = which == 0 ? src.F1 : src.F2;
            const DMat<K>& Fp = which == 0 ? tgt.F1 : tgt.F2;
            if (F.cols() == 0) continue;
            DMat<K> img = phi * F;
            if (!solve_dense(Fp, img, src.zero).has_value())
                throw std::invalid_argument(which == 0 ? "morphism: phi(F1) not inside F1'"
                                                       : "morphism: phi(F2) not inside F2'");
        }
    }
};

template <class K>
struct MorphismFunctors {
    KoszulContext<K> ctx_src;  // for (E, F1, F2)
    KoszulContext<K> ctx_tgt;  // for (E', F1', F2')
    AlgebraMorphism<K> Phi;    // T' -> T
    AlgebraMorphism<K> Psi;    // R -> R'
};

template <class K>
MorphismFunctors<K> phi_functors(const BundleMorphismSetup<K>& b) {
    b.check();
    MorphismFunctors<K> out;
    out.ctx_src = make_context(build_X_lkd(b.src), b.src.zero);
    out.ctx_tgt = make_context(build_X_lkd(b.tgt), b.tgt.zero);

    DMat<K> Ksrc = orthogonal_basis(b.src.F1, b.src.zero);
    DMat<K> Ktgt = orthogonal_basis(b.tgt.F1, b.tgt.zero);
    // f_{-1}: F1'^perp -> F1^perp, xi' |-> xi' . phi
    DMat<K> pullback = b.phi.transpose() * Ktgt;
    DMat<K> f_m1;
    if (Ksrc.cols() > 0 && Ktgt.cols() > 0) {
        auto sol = solve_dense(Ksrc, pullback, b.src.zero);
        if (!sol) throw std::invalid_argument("morphism: psi(F1'^perp) not inside F1^perp");
        f_m1 = *sol;
    } else {
        f_m1 = zeros(static_cast<int>(Ksrc.cols()), static_cast<int>(Ktgt.cols()), b.src.zero);
    }
    // f_0: F2'^dual -> F2^dual = (phi|_{F2}: F2 -> F2')^T
    DMat<K> f_0;
    if (b.src.F2.cols() > 0 && b.tgt.F2.cols() > 0) {
        auto phi2 = solve_dense(b.tgt.F2, DMat<K>(b.phi * b.src.F2), b.src.zero);
        if (!phi2) throw std::invalid_argument("morphism: phi(F2) not inside F2'");
        f_0 = phi2->transpose();
    } else {
        f_0 = zeros(static_cast<int>(b.src.F2.cols()), static_cast<int>(b.tgt.F2.cols()), b.src.zero);
    }

    std::map<int, DMat<K>> comps;
    if (f_m1.size() > 0) comps[-1] = f_m1;
    if (f_0.size() > 0) comps[0] = f_0;
    out.Phi = sym_morphism<K>(comps, out.ctx_tgt.T, out.ctx_src.T);

    // Y-side: g_i = (f_{1-i})^T gives the chain map Y -> Y', so R -> R'
    std::map<int, DMat<K>> compsY;
    if (f_0.size() > 0) compsY[1] = DMat<K>(f_0.transpose());
    if (f_m1.size() > 0) compsY[2] = DMat<K>(f_m1.transpose());
    out.Psi = sym_morphism<K>(compsY, out.ctx_src.R, out.ctx_tgt.R);
    return out;
}

/******** morphism compatibility (Prop. on kd and morphisms) ********/

template <class K>
struct CompatReport {
    std::string name;
    bool pass = false;
    std::map<Bidegree, int> lhs, rhs;
    std::vector<std::string> notes;
};

/// identity (i): extension along Psi of kappa(M) vs kappa'(restriction of M),
/// as exact cohomology tables on w (R'-side)
template <class K>
CompatReport<K> check_morphism_compat_i(const MorphismFunctors<K>& mf, const DgModule<K>& M, Window w) {
    CompatReport<K> rep;
    rep.name = "morphism-compat-i";
    rep.notes.push_back("properness of F1 cap F2 -> F1' cap F2' holds automatically over a point");
    if (!M.sup_lo) throw std::invalid_argument("compat(i): M must be bounded below");
    int edge = -*M.sup_lo;  // top internal degree of kappa(M)
    Window wR(w.lo, std::max(w.hi, edge));
    DgModule<K> kM = kappa(mf.ctx_src, M, wR);
    auto res = semifree_resolution(kM, wR);
    SemifreePresentation<K> ext = extend_scalars(mf.Psi, res.pres);
    DgModule<K> LPsi = ext.materialize(wR);
    rep.lhs = cohomology(LPsi.under, w).dims;

    DgModule<K> Mr = restrict_scalars(mf.Phi, M);
    DgModule<K> kMr = kappa(mf.ctx_tgt, Mr, w);
    rep.rhs = cohomology(kMr.under, w).dims;
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

/// identity (ii): kappa(extension along Phi of M') vs restriction along Psi
/// of kappa'(M'), as exact tables on w (R-side); M' over T'
template <class K>
CompatReport<K> check_morphism_compat_ii(const MorphismFunctors<K>& mf, const DgModule<K>& Mp, Window w) {
    CompatReport<K> rep;
    rep.name = "morphism-compat-ii";
    if (!Mp.sup_lo) throw std::invalid_argument("compat(ii): M' must be bounded below");
    Window wT(std::min(*Mp.sup_lo, 0), std::max(-w.lo, *Mp.sup_lo));
    auto res = semifree_resolution(Mp, wT);
    SemifreePresentation<K> ext = extend_scalars(mf.Phi, res.pres);
    DgModule<K> LPhi = ext.materialize(wT);
    DgModule<K> kE = kappa(mf.ctx_src, LPhi, w);
    rep.lhs = cohomology(kE.under, w).dims;

    DgModule<K> kMp = kappa(mf.ctx_tgt, Mp, w);
    DgModule<K> RPsi = restrict_scalars(mf.Psi, kMp);
    rep.rhs = cohomology(RPsi.under, w).dims;
    rep.pass = rep.lhs == rep.rhs;
    return rep;
}

/******** base change along finite field extensions ********/

template <class KY, class KX>
struct FieldExtension {
    std::function<KX(const KY&)> embed;
    std::function<DMat<KY>(const KX&)> restrict_entry;  // regular representation
    int degree = 1;
    KY zeroY;
    KX zeroX;
    std::vector<std::string> lambda;  // the chosen functional k' -> k, for reports
};

template <class K>
FieldExtension<K, K> trivial_extension(const K& zero) {
    FieldExtension<K, K> E;
    E.embed = [](const K& a) { return a; };
    E.restrict_entry = [](const K& a) {
        DMat<K> m(1, 1);
        m(0, 0) = a;
        return m;
    };
    E.degree = 1;
    E.zeroY = zero;
    E.zeroX = zero;
    E.lambda = {"1"};
    return E;
}

inline FieldExtension<Fp, Fq> fp_fq_extension(const PrimeField& base, const ExtensionField& ext) {
    if (base.p != ext.ctx->p) throw std::invalid_argument("base change: characteristics differ");
    FieldExtension<Fp, Fq> E;
    auto ctx = ext.ctx;
    int d = ctx->deg();
    int64_t p = ctx->p;
    E.degree = d;
    E.zeroY = base.zero();
    E.zeroX = ext.zero();
    E.embed = [ctx](const Fp& a) { return Fq(ctx, {a.v}); };
    E.restrict_entry = [ctx, d, p](const Fq& e) {
        // column k = coefficients of e * x^k
        DMat<Fp> m(d, d);
        Fq cur = e;
        if (!cur.bound()) cur = Fq(ctx, cur.c);
        Fq x(ctx, {0, 1});
        for (int k = 0; k < d; ++k) {
            for (int row = 0; row < d; ++row)
                m(row, k) = Fp(row < static_cast<int>(cur.c.size()) ? cur.c[row] : 0, p);
            cur = cur * x;
        }
        return m;
    };
    // default trivializing functional: the coordinate functional on the power
    // basis (tables do not depend on the choice)
    E.lambda.assign(d, "0");
    E.lambda[0] = "1";
    return E;
}

template <class KY, class KX>
GeneratorComplex<KX> extend_complex(const GeneratorComplex<KY>& X, const FieldExtension<KY, KX>& E) {
    GeneratorComplex<KX> out;
    out.internal_degree = X.internal_degree;
    out.ranks = X.ranks;
    for (auto& [i, m] : X.diffs) {
        DMat<KX> mm(m.rows(), m.cols());
        for (int a = 0; a < m.rows(); ++a)
            for (int b = 0; b < m.cols(); ++b) mm(a, b) = E.embed(m(a, b));
        out.diffs[i] = std::move(mm);
    }
    return out;
}

template <class KY, class KX>
SpMat<KX> extend_block(const SpMat<KY>& m, const FieldExtension<KY, KX>& E) {
    std::vector<Triplet<KX>> ts;
    for (int o = 0; o < m.outerSize(); ++o)
        for (typename SpMat<KY>::InnerIterator it(m, o); it; ++it)
            ts.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), E.embed(it.value()));
    return sp_from_triplets<KX>(static_cast<int>(m.rows()), static_cast<int>(m.cols()), ts);
}

template <class KY, class KX>
SpMat<KY> restrict_block(const SpMat<KX>& m, const FieldExtension<KY, KX>& E) {
    int d = E.degree;
    std::vector<Triplet<KY>> ts;
    for (int o = 0; o < m.outerSize(); ++o)
        for (typename SpMat<KX>::InnerIterator it(m, o); it; ++it) {
            DMat<KY> blk = E.restrict_entry(it.value());
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    if (!blk(a, b).is_zero())
                        ts.emplace_back(static_cast<int>(it.row()) * d + a, static_cast<int>(it.col()) * d + b,
                                        blk(a, b));
        }
    return sp_from_triplets<KY>(static_cast<int>(m.rows()) * d, static_cast<int>(m.cols()) * d, ts);
}

/// pi-hat^*: extension of scalars (flat, dims preserved)
template <class KY, class KX>
DgModule<KX> extend_module(const DgModule<KY>& M, std::shared_ptr<const SymDgAlgebra<KX>> algX,
                           const FieldExtension<KY, KX>& E) {
    DgModule<KX> out;
    out.alg = algX;
    out.act.resize(algX->num_gens());
    out.under.dims = M.under.dims;
    out.jlo = M.jlo;
    out.jhi = M.jhi;
    out.sup_lo = M.sup_lo;
    out.sup_hi = M.sup_hi;
    for (auto& [b, m] : M.under.diff) out.under.diff[b] = extend_block(m, E);
    for (int g = 0; g < algX->num_gens(); ++g)
        for (auto& [b, m] : M.act[g]) out.act[g][b] = extend_block(m, E);
    return out;
}

/// pi-hat_*: restriction of scalars (dims multiply by the degree)
template <class KY, class KX>
DgModule<KY> restrict_module(const DgModule<KX>& M, std::shared_ptr<const SymDgAlgebra<KY>> algY,
                             const FieldExtension<KY, KX>& E) {
    DgModule<KY> out;
    out.alg = algY;
    out.act.resize(algY->num_gens());
    for (auto& [b, dd] : M.under.dims) out.under.dims[b] = dd * E.degree;
    out.jlo = M.jlo;
    out.jhi = M.jhi;
    out.sup_lo = M.sup_lo;
    out.sup_hi = M.sup_hi;
    for (auto& [b, m] : M.under.diff) out.under.diff[b] = restrict_block(m, E);
    for (int g = 0; g < algY->num_gens(); ++g)
        for (auto& [b, m] : M.act[g]) out.act[g][b] = restrict_block(m, E);
    return out;
}

/// pi-hat^! = D_{pi^! Omega} . pi-hat^* . D_Omega on Mod_+ inputs
template <class KY, class KX>
DgModule<KX> upper_shriek(const DgModule<KY>& M, const KoszulContext<KY>& ctxY, const KoszulContext<KX>& ctxX,
                          const FieldExtension<KY, KX>& E, Window w_plus) {
    (void)ctxY;
    Window wD(-w_plus.hi, -w_plus.lo);
    DgModule<KY> D = dualize(M, wD);
    DgModule<KX> DX = extend_module(D, ctxX.T, E);
    return dualize(DX, w_plus);
}

}  // namespace koszul
