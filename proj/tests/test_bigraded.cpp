#include <doctest.h>

#include "koszul/bigraded.hpp"
#include "koszul/rng.hpp"

using namespace koszul;

namespace {

SpMat<Rat> mat1x1(const Rat& v) {
    std::vector<Triplet<Rat>> ts;
    if (!v.is_zero()) ts.emplace_back(0, 0, v);
    return sp_from_triplets<Rat>(1, 1, ts);
}

// random valid complex: per internal degree a chain of spaces with random
// strictly upper-triangular-by-degree differential satisfying d^2 = 0 by
// taking a two-step zero-composition construction
template <class F>
BigradedComplex<typename F::Scalar> random_complex(const F& f, Rng& rng) {
    using K = typename F::Scalar;
    BigradedComplex<K> c;
    for (int j = -2; j <= 2; j += 2) {
        int len = static_cast<int>(rng.uniform(3)) + 1;
        int lo = static_cast<int>(rng.uniform(3)) - 2;
        std::vector<int> dims(len + 1);
        for (auto& d : dims) d = static_cast<int>(rng.uniform(3)) + 1;
        for (int t = 0; t <= len; ++t) c.dims[{lo + t, j}] = dims[t];
        // d_t random, then force d_{t+1} d_t = 0 by factoring through the kernel
        for (int t = 0; t < len; ++t) {
            DMat<K> m(dims[t + 1], dims[t]);
            for (int a = 0; a < m.rows(); ++a)
                for (int b = 0; b < m.cols(); ++b)
                    m(a, b) = rng.uniform(2) ? f.from_int(rng.range(-2, 2)) : f.zero();
            SpMat<K> sm = sp_from_dense(m);
            if (t > 0) {
                SpMat<K> prev = c.diff_at({lo + t - 1, j});
                SpMat<K> ker = kernel_basis(sp_transpose(prev));
                // rows of d_t must pair to zero with image of prev: project
                // columns onto the kernel of prev^T acting... simpler: replace
                // d_t by d_t' = coeffs * ker^T so that d_t' * prev = 0
                DMat<K> coef(dims[t + 1], ker.cols());
                for (int a = 0; a < coef.rows(); ++a)
                    for (int b = 0; b < coef.cols(); ++b)
                        coef(a, b) = rng.uniform(2) ? f.from_int(rng.range(-2, 2)) : f.zero();
                SpMat<K> kt = sp_transpose(ker);
                sm = SpMat<K>(sp_from_dense(coef) * kt);
            }
            c.set_diff({lo + t, j}, sm);
        }
    }
    c.check();
    return c;
}

}  // namespace

TEST_CASE("cohomology of zero differential equals dims") {
    RatField Q;
    BigradedComplex<Rat> c;
    c.dims[{0, 0}] = 2;
    c.dims[{-1, 2}] = 1;
    auto t = cohomology(c, Window(-4, 4));
    CHECK(t.dim_at({0, 0}) == 2);
    CHECK(t.dim_at({-1, 2}) == 1);
    CHECK(t.dims.size() == 2);
}

TEST_CASE("identity complex is acyclic") {
    RatField Q;
    BigradedComplex<Rat> c;
    c.dims[{0, 0}] = 1;
    c.dims[{1, 0}] = 1;
    c.set_diff({0, 0}, mat1x1(Q.one()));
    auto t = cohomology(c, Window(-2, 2));
    CHECK(t.dims.empty());
}

TEST_CASE("cone of multiplication by 2: acyclic over Q, not over F_2") {
    // complex k at (0, 0), map = multiplication by 2
    RatField Q;
    BigradedComplex<Rat> a, b;
    a.dims[{0, 0}] = 1;
    b.dims[{0, 0}] = 1;
    ComplexMap<Rat> f{&a, &b, {}};
    f.blocks[{0, 0}] = mat1x1(Q.from_int(2));
    auto c = cone(f);
    CHECK(cohomology(c, Window(0, 0)).dims.empty());

    PrimeField F2(2);
    BigradedComplex<Fp> a2, b2;
    a2.dims[{0, 0}] = 1;
    b2.dims[{0, 0}] = 1;
    ComplexMap<Fp> f2{&a2, &b2, {}};
    // 2 = 0 in F_2, leave block absent
    auto c2 = cone(f2);
    auto t2 = cohomology(c2, Window(0, 0));
    CHECK(t2.dim_at({-1, 0}) == 1);
    CHECK(t2.dim_at({0, 0}) == 1);
}

TEST_CASE("shift and twist behave and commute") {
    RatField Q;
    Rng rng(7);
    auto c = random_complex(Q, rng);

    auto s0 = shift(c, 0);
    CHECK(s0.dims == c.dims);
    auto s = shift(shift(c, 1), -1);
    CHECK(s.dims == c.dims);
    for (auto& [bd, m] : c.diff) CHECK(sp_equal(s.diff_at(bd), c.diff_at(bd)));

    CHECK(twist(c, 0).dims == c.dims);
    auto tw = twist(shift(c, 2), -3);
    auto wt = shift(twist(c, -3), 2);
    CHECK(tw.dims == wt.dims);

    // cohomology commutes with shift: H(c[2])(i,j) = H(c)(i+2, j)
    auto hc = cohomology(c, Window(-2, 2));
    auto hs = cohomology(shift(c, 2), Window(-2, 2));
    for (auto& [bd, d] : hc.dims) CHECK(hs.dim_at({bd.i - 2, bd.j}) == d);
    for (auto& [bd, d] : hs.dims) CHECK(hc.dim_at({bd.i + 2, bd.j}) == d);

    // twist respects cohomology: H(c<3>)(i,j) = H(c)(i, j-3)
    auto ht = cohomology(twist(c, 3), Window(-2 + 3, 2 + 3));
    for (auto& [bd, d] : ht.dims) CHECK(hc.dim_at({bd.i, bd.j - 3}) == d);
    CHECK(ht.dims.size() == hc.dims.size());
}

TEST_CASE("quasi-isomorphism detection") {
    RatField Q;
    BigradedComplex<Rat> c;
    c.dims[{0, 0}] = 1;
    c.dims[{1, 0}] = 2;
    std::vector<Triplet<Rat>> ts;
    ts.emplace_back(0, 0, Q.one());
    c.diff[{0, 0}] = sp_from_triplets<Rat>(2, 1, ts);
    // identity is a quasi-iso
    ComplexMap<Rat> idm{&c, &c, {}};
    idm.blocks[{0, 0}] = sp_id(1, Q.one());
    idm.blocks[{1, 0}] = sp_id(2, Q.one());
    idm.check();
    CHECK(is_quasi_iso(idm, Window(-1, 1)));
    // zero map between non-acyclic complexes is not
    BigradedComplex<Rat> k;
    k.dims[{1, 0}] = 1;
    ComplexMap<Rat> z{&c, &k, {}};
    CHECK(!is_quasi_iso(z, Window(-1, 1)));
    // cone(f) acyclic <=> quasi-iso, on random maps (here: identity of random complex)
    Rng rng(11);
    auto r = random_complex(Q, rng);
    ComplexMap<Rat> idr{&r, &r, {}};
    for (auto& [bd, d] : r.dims) idr.blocks[bd] = sp_id(d, Q.one());
    CHECK(is_quasi_iso(idr, Window(-4, 4)));
    CHECK(cohomology(cone(idr), Window(-4, 4)).dims.empty());
}

TEST_CASE("euler characteristic is preserved per internal degree") {
    RatField Q;
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        auto c = random_complex(Q, rng);
        auto h = cohomology(c, Window(-2, 2));
        for (int j : c.internal_degrees())
            CHECK(euler_characteristic<Rat>(c.dims, j) == euler_characteristic<Rat>(h.dims, j));
    }
}

TEST_CASE("window soundness: sub-window equals direct computation") {
    RatField Q;
    Rng rng(17);
    auto c = random_complex(Q, rng);
    auto whole = cohomology(c, Window(-2, 2));
    auto sub = cohomology(c, Window(0, 2));
    for (auto& [bd, d] : sub.dims) CHECK(whole.dim_at(bd) == d);
    for (auto& [bd, d] : whole.dims)
        if (bd.j >= 0) CHECK(sub.dim_at(bd) == d);
}

TEST_CASE("hilbert export") {
    CohomologyTable<Rat> t;
    CHECK(hilbert(t).empty());
    t.dims[{0, 0}] = 1;
    auto h = hilbert(t);
    REQUIRE(h.size() == 1);
    CHECK(h[0] == std::tuple<int, int, int>{0, 0, 1});
    // exterior algebra on one odd generator: (-1,2) and (0,0)
    t.dims[{-1, 2}] = 1;
    h = hilbert(t);
    REQUIRE(h.size() == 2);
    CHECK(h[0] == std::tuple<int, int, int>{-1, 2, 1});
    CHECK(h[1] == std::tuple<int, int, int>{0, 0, 1});
}

TEST_CASE("d^2 != 0 detected") {
    RatField Q;
    BigradedComplex<Rat> c;
    c.dims[{0, 0}] = 1;
    c.dims[{1, 0}] = 1;
    c.dims[{2, 0}] = 1;
    c.set_diff({0, 0}, mat1x1(Q.one()));
    c.set_diff({1, 0}, mat1x1(Q.one()));
    CHECK_THROWS(c.check());
}
