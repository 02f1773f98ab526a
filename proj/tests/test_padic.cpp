#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace pmf;

TEST_CASE("construction and canonical rendering") {
    PadicScalar x = PadicScalar::from_integer(Int(50), 5, 3);
    CHECK(x.valuation_floor() == 2);
    CHECK(x.unit_part() == 2);
    CHECK(x.str() == "5^2 * 2 mod 5^3");

    PadicScalar y = PadicScalar::from_rational(Rat(3, 25), 5, 2);
    CHECK(y.valuation_floor() == -2);
    CHECK(y.is_zero() == false);

    CHECK(PadicScalar::exact_zero(5).str() == "0");
    CHECK(PadicScalar::approximate_zero(5, 3).str() == "O(5^(3))");

    PadicScalar r = PadicScalar::from_residue(Int(0), PrimePower(7, 2));
    CHECK(r.is_zero());
    CHECK(r.valuation_floor() == 2);
}

TEST_CASE("valuation laws") {
    for (int i = 0; i < 200; ++i) {
        long p = (i % 2) ? 5 : 11;
        PadicScalar x = pmftest::rand_scalar(p, 4);
        PadicScalar y = pmftest::rand_scalar(p, 4);
        CHECK((x * y).valuation_floor() == x.valuation_floor() + y.valuation_floor());
        PadicScalar s = x + y;
        long lo = std::min(x.valuation_floor(), y.valuation_floor());
        CHECK(s.valuation_floor() >= lo);
        if (x.valuation_floor() != y.valuation_floor())
            CHECK(s.valuation_floor() == lo);
    }
}

TEST_CASE("precision loss in addition is tracked, never silent") {
    // (1 + p) - 1 at relative precision 3: the difference has valuation 1
    // and only 2 relative digits remain.
    PadicScalar a = PadicScalar::from_integer(Int(6), 5, 3);
    PadicScalar b = PadicScalar::from_integer(Int(1), 5, 3);
    PadicScalar d = a - b;
    CHECK(d.valuation_floor() == 1);
    CHECK(d.rel_prec() == 2);
    CHECK(d.abs_prec() == 3);

    // cancellation below resolution leaves an approximate zero with floor
    PadicScalar e = a - a;
    CHECK(e.is_zero());
    CHECK_FALSE(e.is_exact_zero());
    CHECK(e.valuation_floor() == 3);
}

TEST_CASE("ring laws hold at the stated precision") {
    for (int i = 0; i < 150; ++i) {
        long p = 7;
        PadicScalar x = pmftest::rand_scalar(p, 4);
        PadicScalar y = pmftest::rand_scalar(p, 4);
        PadicScalar z = pmftest::rand_scalar(p, 4);
        CHECK(((x + y) + z).congruent(x + (y + z)));
        CHECK(((x * y) * z).congruent(x * (y * z)));
        CHECK((x * (y + z)).congruent(x * y + x * z));
        CHECK((x + y).congruent(y + x));
        CHECK((x * y).congruent(y * x));
    }
}

TEST_CASE("inversion and division") {
    for (int i = 0; i < 100; ++i) {
        PadicScalar x = pmftest::rand_scalar(11, 3);
        PadicScalar one = PadicScalar::from_integer(Int(1), 11, 3);
        CHECK((x * x.inverse()).congruent(one));
        PadicScalar y = pmftest::rand_scalar(11, 3);
        CHECK(((x / y) * y).congruent(x));
    }
    CHECK_THROWS_AS(PadicScalar::exact_zero(11).inverse(), precision_error);
}

TEST_CASE("residue extraction respects precision") {
    PadicScalar x = PadicScalar::from_integer(Int(12), 5, 3);
    CHECK(x.residue(PrimePower(5, 3)) == 12);
    CHECK(x.residue(PrimePower(5, 1)) == 2);
    PadicScalar y = PadicScalar::from_rational(Rat(1, 5), 5, 3);
    CHECK_THROWS_AS(y.residue(PrimePower(5, 2)), precision_error);

    // a value only known mod 5^2 cannot produce a mod-5^3 residue
    PadicScalar z = PadicScalar::from_residue(Int(10), PrimePower(5, 2));
    CHECK_THROWS_AS(z.residue(PrimePower(5, 3)), precision_error);
    CHECK(z.residue(PrimePower(5, 2)) == 10);
}

TEST_CASE("powers") {
    PadicScalar x = PadicScalar::from_integer(Int(10), 5, 3);
    CHECK(x.pow(2).valuation_floor() == 2);
    CHECK(x.pow(2).congruent(x * x));
    CHECK(x.pow(-1).congruent(x.inverse()));
}

TEST_CASE("prime mismatch is rejected") {
    PadicScalar x = PadicScalar::from_integer(Int(1), 5, 2);
    PadicScalar y = PadicScalar::from_integer(Int(1), 7, 2);
    CHECK_THROWS_AS(x + y, bad_input);
}
