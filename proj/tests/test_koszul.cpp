#include <doctest.h>

#include "koszul/koszul.hpp"
#include "koszul/rng.hpp"

using namespace koszul;

namespace {

RatField Q;

GeneratorComplex<Rat> rank1_deg0() {
    GeneratorComplex<Rat> X;
    X.ranks[0] = 1;
    return X;
}

GeneratorComplex<Rat> id_chain() {  // k ->id k in degrees -1, 0
    GeneratorComplex<Rat> X;
    X.ranks[-1] = 1;
    X.ranks[0] = 1;
    DMat<Rat> one(1, 1);
    one << Q.one();
    X.diffs[-1] = one;
    return X;
}

GeneratorComplex<Rat> rank2_deg0() {
    GeneratorComplex<Rat> X;
    X.ranks[0] = 2;
    return X;
}

bool table_is_point(const CohomologyTable<Rat>& t) {
    return t.dims.size() == 1 && t.dim_at({0, 0}) == 1;
}

}  // namespace

TEST_CASE("K1 and K2 are acyclic over the unit: n = 0, rank 1") {
    auto ctx = make_context(rank1_deg0(), Q.zero());
    Window w(-10, 0);
    auto K1 = koszul_K1(ctx, w);
    K1.bind();
    CHECK(validate(K1.mod, Window(-8, 0)).empty());
    auto t1 = cohomology(K1.mod.under, w);
    CHECK(table_is_point(t1));
    CHECK(validate_map(K1.aug, Window(-8, 0)).empty());
    CHECK(is_quasi_iso(K1.aug.as_complex_map(), w));

    auto K2 = koszul_K2(ctx, w);
    K2.bind();
    CHECK(validate(K2.mod, Window(-8, 0)).empty());
    CHECK(table_is_point(cohomology(K2.mod.under, w)));
    CHECK(validate_map(K2.aug, Window(-8, 0)).empty());
    CHECK(is_quasi_iso(K2.aug.as_complex_map(), w));
}

TEST_CASE("K1 acyclicity for the contractible chain and rank 2") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-10, 0);
    auto K1 = koszul_K1(ctx, w);
    CHECK(validate(K1.mod, Window(-6, 0)).empty());
    CHECK(table_is_point(cohomology(K1.mod.under, w)));
    auto K2 = koszul_K2(ctx, w);
    CHECK(table_is_point(cohomology(K2.mod.under, w)));

    auto ctx2 = make_context(rank2_deg0(), Q.zero());
    auto K1b = koszul_K1(ctx2, Window(-10, 0));
    CHECK(table_is_point(cohomology(K1b.mod.under, Window(-10, 0))));
}

TEST_CASE("A(trivial k) = S with its own differential") {
    auto ctx = make_context(id_chain(), Q.zero());
    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    Window w(-8, 0);
    auto A = functor_A(ctx, k, w);
    CHECK(validate(A.mod, Window(-6, 0)).empty());
    auto SC = ctx.S->as_complex(w);
    CHECK(A.mod.under.dims == SC.dims);
    auto tS = cohomology(SC, w);
    auto tA = cohomology(A.mod.under, w);
    CHECK(tS.dims == tA.dims);
}

TEST_CASE("A(T) for n=0: multiplication-type Koszul complex") {
    auto ctx = make_context(rank1_deg0(), Q.zero());
    Window w(-10, 2);
    // free T materialized far enough above the window top
    auto M = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, w.hi + 2 * ctx.S->max_weight()));
    auto A = functor_A(ctx, M, w);
    CHECK(validate(A.mod, Window(-8, 0)).empty());
    // d2(1 (x) x^m) = y (x) x^{m+1}: everything cancels except y (x) 1
    auto t = cohomology(A.mod.under, w);
    CHECK(t.dims.size() == 1);
    CHECK(t.dim_at({1, -2}) == 1);
    // the contraction-type complex with cohomology at (0,0) is A(T^dual) = K1,
    // covered by the acyclicity cases above
}

TEST_CASE("B(trivial k) = T^dual") {
    auto ctx = make_context(id_chain(), Q.zero());
    auto k = trivial_module<Rat>(ctx.S, {{{0, 0}, 1}});
    Window w(-8, 0);
    auto B = functor_B(ctx, k, w);
    CHECK(validate(B.mod, Window(-6, 0)).empty());
    // underlying dims equal those of T^dual
    for (auto& [b, d] : B.mod.under.dims) CHECK(ctx.T->dim({-b.i, -b.j}) == d);
    for (int j = -6; j <= 0; ++j)
        for (int i = 0; i <= 12; ++i) {
            int d = ctx.T->dim({-i, -j});
            CHECK(B.mod.dim_at({i, j}) == d);
        }
}

TEST_CASE("exactness: A and B kill acyclic Mod_- modules") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-8, 0);
    // cone of the identity of the trivial module is acyclic
    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}, {{-1, -2}, 2}});
    DgModuleMap<Rat> idm;
    idm.src = &k;
    idm.tgt = &k;
    for (auto& [b, d] : k.under.dims) idm.blocks[b] = sp_id<Rat>(d, Q.one());
    auto C = module_cone(idm);
    REQUIRE(cohomology(C.under, w).dims.empty());
    auto A = functor_A(ctx, C, w);
    CHECK(validate(A.mod, Window(-6, 0)).empty());
    CHECK(cohomology(A.mod.under, w).dims.empty());

    auto kS = trivial_module<Rat>(ctx.S, {{{0, 0}, 1}, {{2, -4}, 1}});
    DgModuleMap<Rat> idS;
    idS.src = &kS;
    idS.tgt = &kS;
    for (auto& [b, d] : kS.under.dims) idS.blocks[b] = sp_id<Rat>(d, Q.one());
    auto CS = module_cone(idS);
    auto B = functor_B(ctx, CS, w);
    CHECK(validate(B.mod, Window(-6, 0)).empty());
    CHECK(cohomology(B.mod.under, w).dims.empty());
}

TEST_CASE("unit is a quasi-isomorphism on Mod_- inputs") {
    auto ctx = make_context(rank1_deg0(), Q.zero());
    Window w(-8, 0);

    // trivial k: unit k -> B(S) = K2
    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    auto U = unit_map(ctx, k, w);
    U.bind(k);
    CHECK(validate(U.BAM.mod, Window(-6, 0)).empty());
    CHECK(validate_map(U.eta, Window(-6, 0)).empty());
    CHECK(is_quasi_iso(U.eta.as_complex_map(), w));

    // M = T^dual
    auto freeT = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 10));
    auto TD = dualize(freeT, Window(-10, 0));
    auto U2 = unit_map(ctx, TD, w);
    U2.bind(TD);
    CHECK(validate_map(U2.eta, Window(-6, 0)).empty());
    CHECK(is_quasi_iso(U2.eta.as_complex_map(), w));
}

TEST_CASE("unit for n = 1 (nontrivial algebra differential)") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-6, 0);
    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    auto U = unit_map(ctx, k, w);
    U.bind(k);
    CHECK(validate(U.BAM.mod, Window(-4, 0)).empty());
    CHECK(validate_map(U.eta, Window(-4, 0)).empty());
    CHECK(is_quasi_iso(U.eta.as_complex_map(), w));

    auto freeT = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 8));
    auto TD = dualize(freeT, Window(-8, 0));
    auto U2 = unit_map(ctx, TD, w);
    U2.bind(TD);
    CHECK(validate_map(U2.eta, Window(-4, 0)).empty());
    CHECK(is_quasi_iso(U2.eta.as_complex_map(), w));

    // acyclic input: both sides acyclic, vacuously a quasi-iso
    auto kk = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    DgModuleMap<Rat> idm;
    idm.src = &kk;
    idm.tgt = &kk;
    idm.blocks[{0, 0}] = sp_id<Rat>(1, Q.one());
    auto C = module_cone(idm);
    auto U3 = unit_map(ctx, C, w);
    U3.bind(C);
    CHECK(validate_map(U3.eta, Window(-4, 0)).empty());
    CHECK(is_quasi_iso(U3.eta.as_complex_map(), w));
    CHECK(cohomology(U3.BAM.mod.under, w).dims.empty());
}

TEST_CASE("counit is a quasi-isomorphism on Mod_- inputs") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-6, 0);

    // N = trivial k: AB(k) = A(T^dual) = K1 -> k
    auto k = trivial_module<Rat>(ctx.S, {{{0, 0}, 1}});
    auto C = counit_map(ctx, k, w);
    C.bind(k);
    CHECK(validate(C.ABN.mod, Window(-4, 0)).empty());
    CHECK(validate_map(C.eps, Window(-4, 0)).empty());
    CHECK(is_quasi_iso(C.eps.as_complex_map(), w));

    // N = S (free rank one)
    auto freeS = free_module<Rat>(ctx.S, {{0, 0}}, Window(-8, 0));
    auto C2 = counit_map(ctx, freeS, w);
    C2.bind(freeS);
    CHECK(validate_map(C2.eps, Window(-4, 0)).empty());
    CHECK(is_quasi_iso(C2.eps.as_complex_map(), w));
}

TEST_CASE("K_Omega on the unit and the free module") {
    auto ctx = make_context(rank1_deg0(), Q.zero());
    Window w(-8, 0);
    // K(k) = S
    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    auto Kk = K_Omega(ctx, k, w);
    auto tS = cohomology(ctx.S->as_complex(w), w);
    CHECK(cohomology(Kk.mod.under, w).dims == tS.dims);
    // K(T) = K1, cohomology = unit
    auto M = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 10));
    auto KT = K_Omega(ctx, M, w);
    CHECK(validate(KT.mod, Window(-6, 0)).empty());
    CHECK(table_is_point(cohomology(KT.mod.under, w)));
}

TEST_CASE("K_Omega degree formula on tables: K(M[n]<m>) = K(M)[-n]<-m>") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-6, 0);
    auto M = free_module<Rat>(ctx.T, {{0, 0}, {-1, 2}}, Window(0, 12));
    auto base = cohomology(K_Omega(ctx, M, Window(-10, 2)).mod.under, Window(-10, 2));
    for (int n = -1; n <= 1; ++n)
        for (int m = -2; m <= 2; m += 2) {
            auto Mm = module_twist(module_shift(M, n), m);
            auto t = cohomology(K_Omega(ctx, Mm, w).mod.under, w);
            // K(M[n]<m>)(i,j) = (K(M)[-n]<-m>)(i,j) = K(M)(i - n, j + m)
            for (auto& [b, d] : t.dims) CHECK(base.dim_at({b.i - n, b.j + m}) == d);
            for (auto& [b, d] : base.dims) {
                Bidegree back{b.i + n, b.j - m};
                if (w.contains(back.j)) CHECK(t.dim_at(back) == d);
            }
        }
}

TEST_CASE("kappa tables: free/trivial exchange for E = k, F1 = F2 = 0") {
    // X = (k at degree -1): T = Lambda(xi), R = k[r] with r at (0,-2)
    GeneratorComplex<Rat> X;
    X.ranks[-1] = 1;
    auto ctx = make_context(X, Q.zero());
    REQUIRE(ctx.R->num_gens() == 1);
    CHECK(ctx.R->gens[0].c == 0);
    CHECK(ctx.R->gens[0].t == -2);
    Window w(-10, 0);

    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    auto kap_k = kappa(ctx, k, w);
    CHECK(validate(kap_k, Window(-8, 0)).empty());
    auto tR = cohomology(ctx.R->as_complex(w), w);
    CHECK(cohomology(kap_k.under, w).dims == tR.dims);
    for (int m = 0; m <= 5; ++m) CHECK(tR.dim_at({0, -2 * m}) == 1);

    auto freeT = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 2));
    auto kap_f = kappa(ctx, freeT, w);
    CHECK(table_is_point(cohomology(kap_f.under, w)));

    // kappa_inv reverses both
    auto kR = trivial_module<Rat>(ctx.R, {{{0, 0}, 1}});
    auto inv_k = kappa_inv(ctx, kR, Window(0, 10));
    CHECK(validate(inv_k, Window(2, 8)).empty());
    auto tT = cohomology(ctx.T->as_complex(Window(0, 10)), Window(0, 10));
    CHECK(cohomology(inv_k.under, Window(0, 10)).dims == tT.dims);

    auto freeR = free_module<Rat>(ctx.R, {{0, 0}}, Window(-12, 0));
    auto inv_f = kappa_inv(ctx, freeR, Window(0, 10));
    CHECK(table_is_point(cohomology(inv_f.under, Window(0, 10))));
}

TEST_CASE("kappa degree formula: kappa(M[n]<m>) = kappa(M)[-n+m]<-m>") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-6, 0);
    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    auto base = cohomology(kappa(ctx, k, Window(-10, 2)).under, Window(-10, 2));
    for (int n = -2; n <= 2; ++n)
        for (int m = -2; m <= 2; m += 2) {
            auto Mm = module_twist(module_shift(k, n), m);
            auto t = cohomology(kappa(ctx, Mm, w).under, w);
            // table(kappa(M[n]<m>))(i,j) = table(kappa(M))(i - n + m, j + m)
            for (auto& [b, d] : t.dims) CHECK(base.dim_at({b.i - n + m, b.j + m}) == d);
            for (auto& [b, d] : base.dims) {
                Bidegree back{b.i + n - m, b.j - m};
                if (w.contains(back.j)) CHECK(t.dim_at(back) == d);
            }
        }
}

TEST_CASE("kappa round trip on tables") {
    auto ctx = make_context(id_chain(), Q.zero());
    // M = free T on two generators: kappa then kappa_inv returns its table
    auto M = free_module<Rat>(ctx.T, {{0, 0}, {-1, 4}}, Window(0, 14));
    Window wR(-12, 0), wT(0, 8);
    auto kM = kappa(ctx, M, wR);
    auto back = kappa_inv(ctx, kM, wT);
    auto t1 = cohomology(M.under, wT);
    auto t2 = cohomology(back.under, wT);
    CHECK(t1.dims == t2.dims);
}

TEST_CASE("kappa output is finitely window-generated (fg preservation)") {
    auto ctx = make_context(id_chain(), Q.zero());
    Window w(-12, 0);
    auto M = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 12));
    auto kM = kappa(ctx, M, w);
    auto t = cohomology(kM.under, w);
    REQUIRE(!t.dims.empty());
    // gen window: the two highest occupied internal degrees
    std::set<int> js;
    for (auto& [b, d] : t.dims) js.insert(b.j);
    auto it = js.rbegin();
    int top = *it;
    int second = (++it != js.rend()) ? *it : top;
    CHECK(window_generation_check(kM, Window(second, top), Window(second - 6, top)));
}
