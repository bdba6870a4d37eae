#include <doctest.h>

#include "koszul/linalg.hpp"
#include "koszul/rng.hpp"

using namespace koszul;

namespace {

// independent oracle: naive dense row elimination, no pivoting tricks
template <class K>
int naive_rank(DMat<K> m) {
    int rank = 0;
    int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        K inv = m(r, c).inv();
        for (int j = 0; j < cols; ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            K f = m(i, c);
            for (int j = 0; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        ++r;
        ++rank;
    }
    return rank;
}

template <class F>
DMat<typename F::Scalar> random_mat(const F& f, Rng& rng, int rows, int cols) {
    DMat<typename F::Scalar> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = rng.uniform(3) == 0 ? f.zero() : f.from_int(rng.range(-4, 4));
    return m;
}

}  // namespace

TEST_CASE("rank/kernel on pinned examples") {
    RatField Q;
    DMat<Rat> id2(2, 2);
    id2 << Q.one(), Q.zero(), Q.zero(), Q.one();
    auto rki = rank_kernel_image(id2, Q.zero());
    CHECK(rki.rank == 2);
    CHECK(rki.kernel.cols() == 0);

    DMat<Rat> z(3, 2);
    z.setConstant(Q.zero());
    rki = rank_kernel_image(z, Q.zero());
    CHECK(rki.rank == 0);
    CHECK(rki.kernel.cols() == 2);

    DMat<Rat> ones(2, 2);
    ones << Q.one(), Q.one(), Q.one(), Q.one();
    rki = rank_kernel_image(ones, Q.zero());
    CHECK(rki.rank == naive_rank(ones));  // oracle agrees
    CHECK(rki.rank == 1);
    CHECK(rki.kernel.cols() == 1);
    // kernel spanned by (1,-1): canonical form has free column x1 = 1, so (-1, 1)
    CHECK(rki.kernel(0, 0) + rki.kernel(1, 0) == Q.zero());
    CHECK(!rki.kernel(0, 0).is_zero());
}

TEST_CASE("solve") {
    RatField Q;
    DMat<Rat> m(1, 1), t(1, 1);
    m << Q.from_int(2);
    t << Q.from_int(3);
    auto x = solve_dense(m, t, Q.zero());
    REQUIRE(x.has_value());
    CHECK((*x)(0, 0) == Q.parse("3/2"));

    DMat<Rat> z(2, 2), nz(2, 1);
    z.setConstant(Q.zero());
    nz << Q.one(), Q.zero();
    CHECK(!solve_dense(z, nz, Q.zero()).has_value());

    DMat<Rat> id(2, 2), any(2, 1);
    id << Q.one(), Q.zero(), Q.zero(), Q.one();
    any << Q.from_int(5), Q.from_int(-7);
    auto y = solve_dense(id, any, Q.zero());
    REQUIRE(y.has_value());
    CHECK((*y)(0, 0) == Q.from_int(5));
    CHECK((*y)(1, 0) == Q.from_int(-7));

    DMat<Rat> bad(3, 1);
    CHECK_THROWS(solve_dense(m, bad, Q.zero()));
}

template <class F>
static void check_field_linalg(const F& f, Rng rng) {
    using K = typename F::Scalar;
    for (int trial = 0; trial < 25; ++trial) {
        int rows = static_cast<int>(rng.uniform(7)), cols = static_cast<int>(rng.uniform(7));
        DMat<K> m = random_mat(f, rng, rows, cols);
        SpMat<K> s = sp_from_dense(m);
        int r = rank_of(s);
        CHECK(r == naive_rank(m));
        // rank(m) == rank(m^T)
        SpMat<K> st = sp_transpose(s);
        CHECK(rank_of(st) == r);
        // rank-nullity, exactly
        SpMat<K> ker = kernel_basis(s);
        CHECK(static_cast<int>(ker.cols()) + r == cols);
        CHECK(sp_is_zero(SpMat<K>(s * ker)));
        // image basis spans the column space and is independent
        SpMat<K> im = image_basis(s);
        CHECK(rank_of(im) == r);
        CHECK(static_cast<int>(im.cols()) == r);
        // every column of m solves against the image basis
        CHECK(solve(im, s).has_value());
    }
}

TEST_CASE("randomized rank/kernel/image invariants over each field") {
    RatField Q;
    PrimeField F2(2), F7(7);
    ExtensionField F4(2, {1, 1, 1});
    check_field_linalg(Q, Rng(1));
    check_field_linalg(F2, Rng(2));
    check_field_linalg(F7, Rng(3));
    check_field_linalg(F4, Rng(4));
}

TEST_CASE("determinism: echelon output is canonical") {
    PrimeField F5(5);
    Rng rng(99);
    DMat<Fp> m = random_mat(F5, rng, 6, 8);
    SpMat<Fp> s = sp_from_dense(m);
    auto k1 = kernel_basis(s);
    auto k2 = kernel_basis(s);
    CHECK(sp_equal(k1, k2));
    // RREF uniqueness: the reduced rows of a row-permuted copy agree
    std::vector<Triplet<Fp>> ts;
    for (int o = 0; o < s.outerSize(); ++o)
        for (SpMat<Fp>::InnerIterator it(s, o); it; ++it)
            ts.emplace_back(static_cast<int>((it.row() + 3) % 6), static_cast<int>(it.col()), it.value());
    SpMat<Fp> perm = sp_from_triplets<Fp>(6, 8, ts);
    auto e1 = echelon_form(s), e2 = echelon_form(perm);
    CHECK(e1.pivot_cols == e2.pivot_cols);
    for (size_t i = 0; i < e1.rows.size(); ++i) {
        REQUIRE(e1.rows[i].size() == e2.rows[i].size());
        for (size_t k = 0; k < e1.rows[i].size(); ++k) {
            CHECK(e1.rows[i][k].first == e2.rows[i][k].first);
            CHECK(e1.rows[i][k].second == e2.rows[i][k].second);
        }
    }
}
