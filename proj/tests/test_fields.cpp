#include <doctest.h>

#include "koszul/fields.hpp"
#include "koszul/rng.hpp"

using namespace koszul;

TEST_CASE("rational arithmetic is exact and canonical") {
    RatField F;
    CHECK(F.parse("1/2") + F.parse("1/3") == F.parse("5/6"));
    CHECK(to_string(F.parse("2/4")) == "1/2");
    CHECK(to_string(F.parse("-3/-6")) == "1/2");
    CHECK(to_string(F.parse("7")) == "7");
    CHECK((F.parse("3/2") * F.parse("2/3")) == F.one());
    CHECK_THROWS(F.parse("1/0").inv());
    CHECK_THROWS(F.zero().inv());
}

TEST_CASE("prime field arithmetic") {
    PrimeField F7(7);
    CHECK(F7.from_int(3).inv() == F7.from_int(5));  // 3*5 = 15 = 1 mod 7
    CHECK(F7.from_int(6) + F7.from_int(3) == F7.from_int(2));
    CHECK((-F7.from_int(3)) == F7.from_int(4));
    CHECK_THROWS(F7.zero().inv());
    CHECK_THROWS(PrimeField(6));
    CHECK_THROWS(PrimeField(1));

    // unbound literals bind on contact
    Fp a = F7.from_int(5);
    Fp lit(10);
    CHECK(a + lit == F7.from_int(1));
    Fp wrong(3, 5);
    CHECK_THROWS(a + wrong);
}

TEST_CASE("extension field F_4 = F_2[x]/(x^2+x+1)") {
    ExtensionField F4(2, {1, 1, 1});
    Fq x = F4.parse("[0,1]");
    CHECK(x * x == F4.parse("[1,1]"));  // x^2 = x + 1
    CHECK(x * x * x == F4.one());
    CHECK(x.inv() == F4.parse("[1,1]"));
    CHECK_THROWS(F4.zero().inv());
}

TEST_CASE("irreducibility is verified at construction") {
    CHECK_THROWS(ExtensionField(2, {0, 1, 1}));   // x^2 + x = x(x+1)
    CHECK_THROWS(ExtensionField(2, {1, 0, 1}));   // x^2 + 1 = (x+1)^2
    CHECK_THROWS(ExtensionField(3, {1, 0, 1, 1}));  // has root x=1? 1+0+1+1=3=0 mod 3
    CHECK_THROWS(ExtensionField(5, {1}));         // degree < 2
    CHECK_THROWS(ExtensionField(5, {1, 2}));      // degree < 2
    CHECK_NOTHROW(ExtensionField(5, {3, 0, 1}));  // x^2 - 2 over F_5
    CHECK_NOTHROW(ExtensionField(2, {1, 1, 0, 0, 1}));       // x^4 + x + 1
    CHECK_THROWS(ExtensionField(2, {1, 0, 0, 1, 1, 0, 1}));  // root at 1
}

TEST_CASE("F_25 structure") {
    ExtensionField F25(5, {3, 0, 1});  // x^2 = 2
    Fq x = F25.parse("[0,1]");
    CHECK(x * x == F25.from_int(2));
    // multiplicative order of the field: x^(24) = 1
    Fq acc = F25.one();
    for (int k = 0; k < 24; ++k) acc *= x;
    CHECK(acc == F25.one());
}

template <class F>
static void field_axioms(const F& f, Rng& rng) {
    auto rnd = [&]() { return f.from_int(rng.range(-20, 20)); };
    for (int trial = 0; trial < 200; ++trial) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == f.zero());
        if (!a.is_zero()) CHECK(a * a.inv() == f.one());
        CHECK(a * b == b * a);
    }
}

TEST_CASE("field axioms hold exactly on randomized triples") {
    Rng rng(20240811);
    RatField Q;
    PrimeField F2(2), F7(7);
    ExtensionField F4(2, {1, 1, 1}), F25(5, {3, 0, 1});
    field_axioms(Q, rng);
    field_axioms(F2, rng);
    field_axioms(F7, rng);
    field_axioms(F4, rng);
    field_axioms(F25, rng);
}
