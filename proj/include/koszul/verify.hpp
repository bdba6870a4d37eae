#pragma once
// Verification suites: each one realizes a theorem of the duality as an
// exact, seeded, reproducible check and reports pass/fail with witnesses.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "koszul/json_io.hpp"
#include "koszul/rng.hpp"

namespace koszul {

struct SuiteReport {
    std::string check;
    std::string window;
    bool pass = false;
    json witnesses = json::array();
    double seconds = 0;

    json to_json() const {
        return json{{"check", check}, {"window", window}, {"pass", pass}, {"witnesses", witnesses}};
    }
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    int threads = 1;
};

inline int env_threads() {
    const char* s = std::getenv("KOSZUL_LAB_THREADS");
    if (!s) return 1;
    int n = std::atoi(s);
    return n > 0 ? n : 1;
}

/// deterministic parallel map: results are assembled in index order
template <class Fn>
std::vector<json> parallel_witnesses(int count, int threads, Fn&& fn) {
    std::vector<json> out(count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    int limit = std::min(threads, count);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::mutex mu;
    for (int t = 0; t < limit; ++t)
        pool.emplace_back([&]() {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                json w = fn(i);
                std::lock_guard<std::mutex> lock(mu);
                out[i] = std::move(w);
            }
        });
    for (auto& th : pool) th.join();
    return out;
}

namespace corpus {

/// seeded random generator complex with n <= nmax and component ranks <= rmax
template <class F>
GeneratorComplex<typename F::Scalar> random_generator_complex(const F& f, Rng& rng, int nmax, int rmax) {
    using K = typename F::Scalar;
    GeneratorComplex<K> X;
    int n = static_cast<int>(rng.uniform(nmax + 1));
    for (int i = -n; i <= 0; ++i) X.ranks[i] = 1 + static_cast<int>(rng.uniform(rmax));
    // differentials with d^2 = 0: choose d_{-1} freely, then factor each
    // earlier block through the kernel of its successor
    for (int i = -1; i >= -n; --i) {
        int rows = X.ranks[i + 1], cols = X.ranks[i];
        DMat<K> m = zeros(rows, cols, f.zero());
        if (i == -1) {
            for (int a = 0; a < rows; ++a)
                for (int b = 0; b < cols; ++b)
                    if (rng.uniform(2)) m(a, b) = f.from_int(rng.range(-2, 2));
        } else {
            SpMat<K> ker = kernel_basis(sp_from_dense(X.diffs.count(i + 1) ? X.diffs.at(i + 1)
                                                                           : zeros(X.ranks[i + 2], rows, f.zero())));
            DMat<K> kd = sp_to_dense(ker, f.zero());
            DMat<K> coef = zeros(static_cast<int>(kd.cols()), cols, f.zero());
            for (int a = 0; a < coef.rows(); ++a)
                for (int b = 0; b < cols; ++b)
                    if (rng.uniform(2)) coef(a, b) = f.from_int(rng.range(-2, 2));
            m = kd * coef;
        }
        bool nz = false;
        for (int a = 0; a < m.rows(); ++a)
            for (int b = 0; b < m.cols(); ++b)
                if (!m(a, b).is_zero()) nz = true;
        if (nz) X.diffs[i] = std::move(m);
    }
    X.check(f.zero());
    return X;
}

/// random trivial module with a random square-zero differential
template <class F>
DgModule<typename F::Scalar> random_trivial_module(const F& f,
                                                   std::shared_ptr<const SymDgAlgebra<typename F::Scalar>> alg,
                                                   Rng& rng, Window support) {
    using K = typename F::Scalar;
    std::map<Bidegree, int> dims;
    std::map<Bidegree, SpMat<K>> diff;
    for (int j = support.lo; j <= support.hi; ++j) {
        if (rng.uniform(2)) continue;
        int len = 1 + static_cast<int>(rng.uniform(2));
        int lo = -static_cast<int>(rng.uniform(2));
        std::vector<int> ds(len + 1);
        for (auto& d : ds) d = 1 + static_cast<int>(rng.uniform(2));
        for (int t = 0; t <= len; ++t) dims[{lo + t, j}] = ds[t];
        for (int t = 0; t < len; ++t) {
            DMat<K> m = zeros(ds[t + 1], ds[t], f.zero());
            if (t == 0) {
                for (int a = 0; a < m.rows(); ++a)
                    for (int b = 0; b < m.cols(); ++b)
                        if (rng.uniform(2)) m(a, b) = f.from_int(rng.range(-2, 2));
            }
            // later blocks stay zero so d^2 = 0 holds trivially
            if (!sp_is_zero(sp_from_dense(m))) diff[{lo + t, j}] = sp_from_dense(m);
        }
    }
    auto M = trivial_module<K>(alg, dims, diff);
    return M;
}

}  // namespace corpus

/******** suite 1: Koszul acyclicity ********/

template <class F>
json acyclicity_one(const F& f, std::uint64_t seed, int index) {
    using K = typename F::Scalar;
    Rng rng(seed + 1000003ULL * index);
    auto X = corpus::random_generator_complex(f, rng, 2, 2);
    auto ctx = make_context(X, f.zero());
    Window w(-12, 0);
    auto K1 = koszul_K1(ctx, w);
    auto t1 = cohomology(K1.mod.under, w);
    bool ok1 = t1.dims.size() == 1 && t1.dim_at({0, 0}) == 1;
    auto K2 = koszul_K2(ctx, w);
    auto t2 = cohomology(K2.mod.under, w);
    bool ok2 = t2.dims.size() == 1 && t2.dim_at({0, 0}) == 1;
    json ranks = json::object();
    for (auto& [i, r] : X.ranks) ranks[std::to_string(i)] = r;
    return json{{"complex", index}, {"field", F::name_of()}, {"ranks", ranks}, {"K1", ok1}, {"K2", ok2},
                {"pass", ok1 && ok2}};
}

inline SuiteReport suite_koszul_acyclicity(const VerifyOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.check = "koszul-acyclicity";
    rep.window = "[-12,0]";
    struct NamedQ : RatField { static std::string name_of() { return "Q"; } };
    struct NamedF2 : PrimeField { NamedF2() : PrimeField(2) {} static std::string name_of() { return "F2"; } };
    struct NamedF7 : PrimeField { NamedF7() : PrimeField(7) {} static std::string name_of() { return "F7"; } };
    bool all = true;
    auto run_field = [&](auto field, std::uint64_t salt) {
        auto ws = parallel_witnesses(20, opt.threads, [&](int i) { return acyclicity_one(field, opt.seed + salt, i); });
        for (auto& w : ws) {
            all = all && w.at("pass").get<bool>();
            rep.witnesses.push_back(w);
        }
    };
    run_field(NamedQ{}, 1);
    run_field(NamedF2{}, 2);
    run_field(NamedF7{}, 3);
    rep.pass = all;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/******** suite 2: the char-p footnote ********/

inline SuiteReport suite_charp_footnote(const VerifyOptions&) {
    SuiteReport rep;
    rep.check = "charp-footnote";
    rep.window = "[0,8]";
    auto run = [&](auto field) {
        using K = typename decltype(field)::Scalar;
        GeneratorComplex<K> X;
        X.ranks[-2] = 1;
        X.ranks[-1] = 1;
        DMat<K> one(1, 1);
        one << field.one();
        X.diffs[-2] = one;
        auto T = build_algebra(X, 0, field.zero(), "x");
        return cohomology(T->as_complex(Window(0, 8)), Window(0, 8));
    };
    PrimeField F3(3);
    auto t3 = run(F3);
    std::map<Bidegree, int> expect3{{{0, 0}, 1}, {{-6, 6}, 1}, {{-5, 6}, 1}};
    bool ok3 = t3.dims == expect3;
    RatField Q;
    auto tq = run(Q);
    bool okq = tq.dims.size() == 1 && tq.dim_at({0, 0}) == 1;
    rep.witnesses.push_back(json{{"field", "F3"}, {"table", table_to_json(t3)}, {"pass", ok3}});
    rep.witnesses.push_back(json{{"field", "Q"}, {"table", table_to_json(tq)}, {"pass", okq}});
    rep.pass = ok3 && okq;
    return rep;
}

/******** suite 3: quasi-inverse equivalences (unit and counit) ********/

template <class F>
json unit_counit_field(const F& f, const std::string& fname, std::uint64_t seed) {
    using K = typename F::Scalar;
    Rng rng(seed);
    GeneratorComplex<K> X;
    X.ranks[-1] = 1;
    X.ranks[0] = 1;
    DMat<K> one(1, 1);
    one << f.one();
    X.diffs[-1] = one;
    auto ctx = make_context(X, f.zero());
    Window w(-12, 0);
    json out = json::array();
    bool all = true;

    std::vector<std::pair<std::string, DgModule<K>>> tmods;
    tmods.emplace_back("trivial k", trivial_module<K>(ctx.T, {{{0, 0}, 1}}));
    auto freeT = free_module<K>(ctx.T, {{0, 0}}, Window(0, 14));
    tmods.emplace_back("T-dual", dualize(freeT, Window(-14, 0)));
    {
        auto k2 = trivial_module<K>(ctx.T, {{{0, 0}, 1}});
        DgModuleMap<K> idm;
        idm.src = &k2;
        idm.tgt = &k2;
        idm.blocks[{0, 0}] = sp_id<K>(1, f.one());
        tmods.emplace_back("cone(id)", module_cone(idm));
    }
    tmods.emplace_back("random trivial 1", corpus::random_trivial_module(f, ctx.T, rng, Window(-8, 0)));
    tmods.emplace_back("random trivial 2", corpus::random_trivial_module(f, ctx.T, rng, Window(-6, -2)));
    auto freeT16 = free_module<K>(ctx.T, {{0, 0}}, Window(0, 16));
    tmods.emplace_back("shifted dual", module_twist(module_shift(dualize(freeT16, Window(-16, 0)), 1), -2));

    for (auto& [name, Mm] : tmods) {
        auto U = unit_map(ctx, Mm, w);
        U.bind(Mm);
        bool chain = validate_map(U.eta, Window(-10, 0)).empty();
        bool qiso = is_quasi_iso(U.eta.as_complex_map(), w);
        all = all && chain && qiso;
        out.push_back(json{{"module", name}, {"field", fname}, {"map", "unit"}, {"chain", chain}, {"quasi_iso", qiso}});
    }

    std::vector<std::pair<std::string, DgModule<K>>> smods;
    smods.emplace_back("trivial k", trivial_module<K>(ctx.S, {{{0, 0}, 1}}));
    smods.emplace_back("free S", free_module<K>(ctx.S, {{0, 0}}, Window(-14, 0)));
    smods.emplace_back("free S twisted", free_module<K>(ctx.S, {{1, -2}}, Window(-16, -2)));
    smods.emplace_back("random trivial", corpus::random_trivial_module(f, ctx.S, rng, Window(-8, 0)));
    {
        auto k2 = trivial_module<K>(ctx.S, {{{0, 0}, 1}, {{1, 0}, 1}});
        std::vector<Triplet<K>> ts;
        ts.emplace_back(0, 0, f.one());
        k2.under.set_diff({0, 0}, sp_from_triplets<K>(1, 1, ts));
        smods.emplace_back("acyclic pair", std::move(k2));
    }

    for (auto& [name, Nm] : smods) {
        auto C = counit_map(ctx, Nm, w);
        C.bind(Nm);
        bool chain = validate_map(C.eps, Window(-10, 0)).empty();
        bool qiso = is_quasi_iso(C.eps.as_complex_map(), w);
        all = all && chain && qiso;
        out.push_back(
            json{{"module", name}, {"field", fname}, {"map", "counit"}, {"chain", chain}, {"quasi_iso", qiso}});
    }
    return json{{"cases", out}, {"pass", all}};
}

inline SuiteReport suite_unit_counit(const VerifyOptions& opt) {
    SuiteReport rep;
    rep.check = "unit-counit";
    rep.window = "[-12,0]";
    RatField Q;
    PrimeField F5(5);
    auto a = unit_counit_field(Q, "Q", opt.seed + 31);
    auto b = unit_counit_field(F5, "F5", opt.seed + 32);
    rep.witnesses.push_back(a);
    rep.witnesses.push_back(b);
    rep.pass = a.at("pass").get<bool>() && b.at("pass").get<bool>();
    return rep;
}

/******** suite 4: duality involution ********/

inline SuiteReport suite_duality_involution(const VerifyOptions& opt) {
    SuiteReport rep;
    rep.check = "duality-involution";
    rep.window = "[-10,10]";
    RatField Q;
    PrimeField F5(5);
    bool all = true;
    int count = 0;
    auto run = [&](auto field, std::uint64_t salt, auto alg_builder) {
        using K = typename decltype(field)::Scalar;
        Rng rng(opt.seed + salt);
        std::shared_ptr<const SymDgAlgebra<K>> alg = alg_builder(field);
        for (int t = 0; t < 5; ++t) {
            DgModule<K> M = corpus::random_trivial_module(field, alg, rng, Window(-4, 4));
            if (M.under.dims.empty()) M = trivial_module<K>(alg, {{{0, 0}, 1}});
            Window wd(-M.jhi, -M.jlo);
            auto D = dualize(M, wd);
            auto DD = dualize(D, Window(M.jlo, M.jhi));
            auto eps = double_dual_map(M, DD, Window(M.jlo, M.jhi));
            bool okv = validate(DD).empty();
            bool okm = validate_map(eps).empty();
            bool okq = is_quasi_iso(eps.as_complex_map(), Window(M.jlo, M.jhi));
            all = all && okv && okm && okq;
            ++count;
            rep.witnesses.push_back(json{{"case", count}, {"valid", okv}, {"module_map", okm}, {"quasi_iso", okq}});
        }
    };
    auto lam = [](auto field) {
        using K = typename decltype(field)::Scalar;
        GeneratorComplex<K> X;
        X.ranks[-1] = 2;
        return build_algebra(X, 0, field.zero(), "x");
    };
    run(Q, 41, lam);
    run(F5, 42, lam);
    // also free modules over an exterior algebra: finite with nonzero actions
    {
        GeneratorComplex<Rat> X;
        X.ranks[-1] = 1;
        auto T = build_algebra(X, 0, Q.zero(), "x");
        auto M = free_module<Rat>(T, {{0, 0}, {1, 2}}, Window(0, 6));
        auto D = dualize(M, Window(-6, 0));
        auto DD = dualize(D, Window(0, 6));
        auto eps = double_dual_map(M, DD, Window(0, 6));
        bool ok = validate(DD).empty() && validate_map(eps).empty() &&
                  is_quasi_iso(eps.as_complex_map(), Window(0, 6));
        all = all && ok;
        rep.witnesses.push_back(json{{"case", "free over exterior"}, {"pass", ok}});
    }
    rep.pass = all;
    return rep;
}

/******** suite 5: the degree formula ********/

inline SuiteReport suite_degree_formula(const VerifyOptions&) {
    SuiteReport rep;
    rep.check = "degree-formula";
    rep.window = "[-10,0]";
    RatField Q;
    GeneratorComplex<Rat> X;
    X.ranks[-1] = 1;
    X.ranks[0] = 1;
    DMat<Rat> one(1, 1);
    one << Q.one();
    X.diffs[-1] = one;
    auto ctx = make_context(X, Q.zero());
    Window w(-10, 0);

    std::vector<std::pair<std::string, DgModule<Rat>>> mods;
    mods.emplace_back("trivial k", trivial_module<Rat>(ctx.T, {{{0, 0}, 1}}));
    mods.emplace_back("free T", free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 16)));
    {
        std::map<Bidegree, int> dims{{{0, 0}, 1}, {{0, 2}, 1}, {{-1, 2}, 1}};
        mods.emplace_back("finite mixed", trivial_module<Rat>(ctx.T, dims));
    }
    bool all = true;
    for (auto& [name, M] : mods) {
        auto base = cohomology(kappa(ctx, M, Window(-14, 4)).under, Window(-14, 4));
        bool okmod = true;
        for (int n = -2; n <= 2; ++n)
            for (int m = -2; m <= 2; ++m) {
                auto Mm = module_twist(module_shift(M, n), m);
                auto t = cohomology(kappa(ctx, Mm, w).under, w);
                // kappa(M[n]<m>) = kappa(M)[-n+m]<-m>, i.e. entries at
                // (i, j) match base at (i - n + m, j + m)
                for (auto& [b, d] : t.dims)
                    if (base.dim_at({b.i - n + m, b.j + m}) != d) okmod = false;
                for (auto& [b, d] : base.dims) {
                    Bidegree back{b.i + n - m, b.j - m};
                    if (w.contains(back.j) && t.dim_at(back) != d) okmod = false;
                }
            }
        all = all && okmod;
        rep.witnesses.push_back(json{{"module", name}, {"pairs", "[-2,2]^2"}, {"pass", okmod}});
    }
    rep.pass = all;
    return rep;
}

/******** suite 6: derived intersections vs the Tor oracle ********/

inline SuiteReport suite_derived_intersection(const VerifyOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.check = "derived-intersection";
    rep.window = "[0,10] (T-side mirror of [-10,0])";
    RatField Q;
    Window w(0, 10);
    bool all = true;
    auto one_setup = [&](const SubbundleSetup<Rat>& s, const std::string& name) {
        auto a = derived_intersection_cohomology(s, w);
        auto b = tor_oracle(s, w);
        bool ok = a.dims == b.dims;
        all = all && ok;
        rep.witnesses.push_back(json{{"setup", name}, {"pass", ok}, {"table", table_to_json(a)}});
    };
    auto mk = [&](int dimE, std::vector<std::vector<long>> f1, std::vector<std::vector<long>> f2) {
        SubbundleSetup<Rat> s;
        s.dim_E = dimE;
        s.zero = Q.zero();
        s.F1 = zeros(dimE, static_cast<int>(f1.size()), Q.zero());
        for (int c = 0; c < static_cast<int>(f1.size()); ++c)
            for (int r = 0; r < dimE; ++r) s.F1(r, c) = Q.from_int(f1[c][r]);
        s.F2 = zeros(dimE, static_cast<int>(f2.size()), Q.zero());
        for (int c = 0; c < static_cast<int>(f2.size()); ++c)
            for (int r = 0; r < dimE; ++r) s.F2(r, c) = Q.from_int(f2[c][r]);
        return s;
    };
    one_setup(mk(2, {{1, 0}}, {{0, 1}}), "transversal");
    one_setup(mk(1, {}, {}), "origin self-intersection");
    one_setup(mk(2, {{1, 0}}, {{1, 0}}), "coincident lines");
    one_setup(mk(1, {{1}}, {}), "F1 = E vs F2 = 0");
    Rng rng(opt.seed + 61);
    for (int t = 0; t < 20; ++t) {
        SubbundleSetup<Rat> s;
        s.zero = Q.zero();
        s.dim_E = 1 + static_cast<int>(rng.uniform(3));
        auto sample = [&](int dim) {
            DMat<Rat> m = zeros(s.dim_E, dim, Q.zero());
            while (dim > 0) {
                for (int c = 0; c < dim; ++c)
                    for (int r = 0; r < s.dim_E; ++r) m(r, c) = Q.from_int(rng.range(-3, 3));
                if (rank_of(sp_from_dense(m)) == dim) break;
            }
            return m;
        };
        s.F1 = sample(static_cast<int>(rng.uniform(s.dim_E + 1)));
        s.F2 = sample(static_cast<int>(rng.uniform(s.dim_E + 1)));
        one_setup(s, "random " + std::to_string(t));
    }
    rep.pass = all;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/******** suite 7: free/trivial exchange ********/

inline SuiteReport suite_free_trivial_exchange(const VerifyOptions&) {
    SuiteReport rep;
    rep.check = "free-trivial-exchange";
    rep.window = "[-10,0] and [0,10]";
    RatField Q;
    GeneratorComplex<Rat> X;  // E = k, F1 = F2 = 0
    X.ranks[-1] = 1;
    auto ctx = make_context(X, Q.zero());
    Window wR(-10, 0), wT(0, 10);
    bool all = true;

    auto k = trivial_module<Rat>(ctx.T, {{{0, 0}, 1}});
    auto kap_k = cohomology(kappa(ctx, k, wR).under, wR);
    auto HR = cohomology(ctx.R->as_complex(wR), wR);
    bool ok1 = kap_k.dims == HR.dims;
    for (int m = 0; 2 * m <= 10; ++m) ok1 = ok1 && kap_k.dim_at({0, -2 * m}) == 1;
    rep.witnesses.push_back(json{{"check", "kappa(trivial k) = H(R)"}, {"pass", ok1}});

    auto freeT = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 10));
    auto kap_f = cohomology(kappa(ctx, freeT, wR).under, wR);
    bool ok2 = kap_f.dims.size() == 1 && kap_f.dim_at({0, 0}) == 1;
    rep.witnesses.push_back(json{{"check", "kappa(free T) = k at (0,0)"}, {"pass", ok2}});

    auto kR = trivial_module<Rat>(ctx.R, {{{0, 0}, 1}});
    auto inv_k = cohomology(kappa_inv(ctx, kR, wT).under, wT);
    auto HT = cohomology(ctx.T->as_complex(wT), wT);
    bool ok3 = inv_k.dims == HT.dims;
    rep.witnesses.push_back(json{{"check", "kappa_inv(trivial k) = H(T)"}, {"pass", ok3}});

    auto freeR = free_module<Rat>(ctx.R, {{0, 0}}, Window(-12, 0));
    auto inv_f = cohomology(kappa_inv(ctx, freeR, wT).under, wT);
    bool ok4 = inv_f.dims.size() == 1 && inv_f.dim_at({0, 0}) == 1;
    rep.witnesses.push_back(json{{"check", "kappa_inv(free R) = k at (0,0)"}, {"pass", ok4}});

    rep.pass = all && ok1 && ok2 && ok3 && ok4;
    return rep;
}

/******** suite 8: fg preservation via window generation ********/

inline SuiteReport suite_fg_window(const VerifyOptions&) {
    SuiteReport rep;
    rep.check = "fg-window";
    rep.window = "gen = two edge degrees, test extends 6 further";
    RatField Q;
    GeneratorComplex<Rat> X;
    X.ranks[-1] = 1;
    X.ranks[0] = 1;
    DMat<Rat> one(1, 1);
    one << Q.one();
    X.diffs[-1] = one;
    auto ctx = make_context(X, Q.zero());
    Window wR(-14, 0);
    bool all = true;

    std::vector<std::pair<std::string, DgModule<Rat>>> corpus;
    corpus.emplace_back("free T", free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 14)));
    corpus.emplace_back("free T rank 2", free_module<Rat>(ctx.T, {{0, 0}, {-1, 2}}, Window(0, 14)));
    corpus.emplace_back("trivial k", trivial_module<Rat>(ctx.T, {{{0, 0}, 1}}));
    corpus.emplace_back("trivial shifted", trivial_module<Rat>(ctx.T, {{{-1, 2}, 1}}));
    {
        auto F = free_module<Rat>(ctx.T, {{0, 0}}, Window(0, 14));
        corpus.emplace_back("free twisted", module_twist(F, 2));
    }
    for (auto& [name, M] : corpus) {
        auto kM = kappa(ctx, M, wR);
        auto t = cohomology(kM.under, wR);
        bool ok;
        if (t.dims.empty()) {
            ok = true;
        } else {
            std::set<int> js;
            for (auto& [b, d] : t.dims) js.insert(b.j);
            auto it = js.rbegin();
            int top = *it;
            int second = (++it != js.rend()) ? *it : top;
            ok = window_generation_check(kM, Window(second, top), Window(second - 6, top));
        }
        all = all && ok;
        rep.witnesses.push_back(json{{"module", name}, {"pass", ok}, {"note", "window-verified"}});
    }
    rep.pass = all;
    return rep;
}

/******** suite 9: morphism compatibility ********/

inline SuiteReport suite_morphism_compat(const VerifyOptions&) {
    SuiteReport rep;
    rep.check = "morphism-compat";
    rep.window = "[-10,0]";
    RatField Q;
    BundleMorphismSetup<Rat> b;
    b.src.dim_E = 2;
    b.src.zero = Q.zero();
    b.src.F1 = zeros(2, 1, Q.zero());
    b.src.F1(0, 0) = Q.one();
    b.src.F2 = b.src.F1;
    b.tgt.dim_E = 2;
    b.tgt.zero = Q.zero();
    b.tgt.F1 = zeros(2, 2, Q.zero());
    b.tgt.F1(0, 0) = Q.one();
    b.tgt.F1(1, 1) = Q.one();
    b.tgt.F2 = b.tgt.F1;
    b.phi = zeros(2, 2, Q.zero());
    b.phi(0, 0) = Q.one();
    b.phi(1, 1) = Q.one();
    auto mf = phi_functors(b);
    Window w(-10, 0);
    bool all = true;

    auto Mfree = free_module<Rat>(mf.ctx_src.T, {{0, 0}}, Window(0, 12));
    auto r1 = check_morphism_compat_i(mf, Mfree, w);
    auto Mtriv = trivial_module<Rat>(mf.ctx_src.T, {{{0, 0}, 1}});
    Mtriv.jlo = 0;
    Mtriv.jhi = 12;
    auto r2 = check_morphism_compat_i(mf, Mtriv, w);
    auto Mpfree = free_module<Rat>(mf.ctx_tgt.T, {{0, 0}}, Window(0, 12));
    auto r3 = check_morphism_compat_ii(mf, Mpfree, w);
    auto Mptriv = trivial_module<Rat>(mf.ctx_tgt.T, {{{0, 0}, 1}});
    Mptriv.jlo = 0;
    Mptriv.jhi = 12;
    auto r4 = check_morphism_compat_ii(mf, Mptriv, w);
    for (auto* r : {&r1, &r2, &r3, &r4}) {
        all = all && r->pass;
        json lhs = json::object(), rhs = json::object();
        for (auto& [bd, d] : r->lhs) lhs[bidegree_key(bd)] = d;
        for (auto& [bd, d] : r->rhs) rhs[bidegree_key(bd)] = d;
        rep.witnesses.push_back(json{{"identity", r->name}, {"pass", r->pass}, {"lhs", lhs}, {"rhs", rhs}});
    }
    rep.pass = all;
    return rep;
}

/******** suite 10: base change ********/

inline SuiteReport suite_base_change(const VerifyOptions&) {
    SuiteReport rep;
    rep.check = "base-change";
    rep.window = "[-10,0]";
    PrimeField F5(5);
    ExtensionField F25(5, {3, 0, 1});
    auto E = fp_fq_extension(F5, F25);
    GeneratorComplex<Fp> XY;
    XY.ranks[-1] = 1;
    XY.ranks[0] = 1;
    DMat<Fp> one(1, 1);
    one << F5.one();
    XY.diffs[-1] = one;
    auto ctxY = make_context(XY, F5.zero());
    auto ctxX = make_context(extend_complex(XY, E), F25.zero());
    Window w(-10, 0);
    bool all = true;

    std::vector<std::pair<std::string, DgModule<Fp>>> modsY;
    modsY.emplace_back("free T_Y", free_module<Fp>(ctxY.T, {{0, 0}}, Window(0, 12)));
    modsY.emplace_back("trivial k", trivial_module<Fp>(ctxY.T, {{{0, 0}, 1}}));

    for (auto& [name, M] : modsY) {
        // (a) pullback: pi-tilde^* kappa_Y(M) vs kappa_X(pi-hat^!(M))
        auto kY = kappa(ctxY, M, w);
        auto lhs_mod = extend_module(kY, ctxX.R, E);
        auto lhs = cohomology(lhs_mod.under, w);
        Window wplus(0, -w.lo);
        auto shk = upper_shriek(M, ctxY, ctxX, E, wplus);
        auto rhs = cohomology(kappa(ctxX, shk, w).under, w);
        bool oka = lhs.dims == rhs.dims;
        all = all && oka;
        rep.witnesses.push_back(json{{"identity", "pullback"}, {"module", name}, {"pass", oka}});

        // (c) smooth variant: pi-tilde^* kappa_Y(M) vs kappa_X(pi-hat^*(M))
        auto up = extend_module(M, ctxX.T, E);
        auto rhs_c = cohomology(kappa(ctxX, up, w).under, w);
        bool okc = lhs.dims == rhs_c.dims;
        all = all && okc;
        rep.witnesses.push_back(json{{"identity", "inverse-image (smooth)"}, {"module", name}, {"pass", okc}});
    }

    std::vector<std::pair<std::string, DgModule<Fq>>> modsX;
    modsX.emplace_back("free T_X", free_module<Fq>(ctxX.T, {{0, 0}}, Window(0, 12)));
    modsX.emplace_back("trivial k'", trivial_module<Fq>(ctxX.T, {{{0, 0}, 1}}));
    for (auto& [name, MX] : modsX) {
        // (b) pushforward: pi-tilde_* kappa_X(M) vs kappa_Y(pi-hat_*(M))
        auto kX = kappa(ctxX, MX, w);
        auto lhs = cohomology(restrict_module(kX, ctxY.R, E).under, w);
        auto down = restrict_module(MX, ctxY.T, E);
        auto rhs = cohomology(kappa(ctxY, down, w).under, w);
        bool okb = lhs.dims == rhs.dims;
        all = all && okb;
        rep.witnesses.push_back(json{{"identity", "pushforward"}, {"module", name}, {"pass", okb}});

        // (d) direct image vs duality: pi-hat_* D_X(M) vs D_Y(pi-hat_* M)
        Window wd(-12, 12);
        auto DX = dualize(MX, wd);
        auto lhs_d = cohomology(restrict_module(DX, ctxY.T, E).under, wd);
        auto rhs_d = cohomology(dualize(restrict_module(MX, ctxY.T, E), wd).under, wd);
        bool okd = lhs_d.dims == rhs_d.dims;
        all = all && okd;
        rep.witnesses.push_back(json{{"identity", "direct-image-duality"}, {"module", name}, {"pass", okd}});
    }

    // sub-report: A_X(pi-hat^* M) vs pi-check^*(A_Y M) for a Mod_- input
    {
        auto freeTY = free_module<Fp>(ctxY.T, {{0, 0}}, Window(0, 12));
        auto TD = dualize(freeTY, Window(-12, 0));
        auto AY = functor_A(ctxY, TD, w);
        auto lhs = cohomology(extend_module(AY.mod, ctxX.S, E).under, w);
        auto TDX = extend_module(TD, ctxX.T, E);
        auto AX = functor_A(ctxX, TDX, w);
        auto rhs = cohomology(AX.mod.under, w);
        bool oke = lhs.dims == rhs.dims;
        all = all && oke;
        rep.witnesses.push_back(json{{"identity", "C-D base change (sub-report)"}, {"module", "T_Y-dual"}, {"pass", oke}});
    }
    rep.witnesses.push_back(json{{"note", "pi is flat and finite: properness and finite Tor-dimension hold"},
                                 {"lambda", E.lambda}});
    rep.pass = all;
    return rep;
}

/******** suite registry ********/

inline std::vector<std::string> suite_names() {
    return {"koszul-acyclicity", "charp-footnote",  "unit-counit",     "duality-involution",
            "degree-formula",    "derived-intersection", "free-trivial-exchange", "fg-window",
            "morphism-compat",   "base-change"};
}

inline SuiteReport run_suite(const std::string& name, const VerifyOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    if (name == "koszul-acyclicity") rep = suite_koszul_acyclicity(opt);
    else if (name == "charp-footnote") rep = suite_charp_footnote(opt);
    else if (name == "unit-counit") rep = suite_unit_counit(opt);
    else if (name == "duality-involution") rep = suite_duality_involution(opt);
    else if (name == "degree-formula") rep = suite_degree_formula(opt);
    else if (name == "derived-intersection") rep = suite_derived_intersection(opt);
    else if (name == "free-trivial-exchange") rep = suite_free_trivial_exchange(opt);
    else if (name == "fg-window") rep = suite_fg_window(opt);
    else if (name == "morphism-compat") rep = suite_morphism_compat(opt);
    else if (name == "base-change") rep = suite_base_change(opt);
    else throw std::invalid_argument("unknown suite: " + name);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace koszul
