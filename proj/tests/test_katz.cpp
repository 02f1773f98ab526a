#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace pmf;

namespace {

// number of unit roots of det(1 - X A) mod p, via the exact characteristic
// polynomial mod p: strip the power of Y dividing det(Y I - A)
long unit_root_count_oracle(const ModMatrix& a) {
    ModMatrix am = a.reduced(PrimePower(a.ring().p(), 1));
    auto c = charpoly(am);  // descending monic, length B+1
    long b = a.rows();
    long e = 0;
    for (long i = b; i >= 1; --i) {
        if (c[static_cast<size_t>(i)] == 0) ++e;
        else break;
    }
    return b - e;
}

ModVec random_vec(const PrimePower& pp, long n) {
    ModVec v(static_cast<size_t>(n));
    for (auto& c : v) c = pp.canon(Int(pmftest::rand_range(0, 10000)));
    return v;
}

}  // namespace

TEST_CASE("katz system shape and layer sizes") {
    KatzSystem sys(5, 2, 4);
    CHECK(sys.depth() == 3);  // smallest m with floor(4m/6) >= 2
    auto sizes = sys.layer_sizes();
    // layer 0 carries all of M_4; higher layers are the Miller complements
    std::vector<long> expected = {dim_mk(4)};
    for (int i = 1; i <= sys.depth(); ++i)
        expected.push_back(dim_mk(4 + 4 * i) - dim_mk(4 + 4 * (i - 1)));
    CHECK(sizes == expected);
    long total = 0;
    for (long s : sizes) total += s;
    CHECK(total == sys.basis_size());
    CHECK(sys.basis_size() == dim_mk(4 + 4 * sys.depth()));
}

TEST_CASE("basis is echelon with unit pivots; reconstruction is the identity") {
    KatzSystem sys(5, 2, 8);
    long B = sys.basis_size();
    for (long c = 0; c < B; ++c) {
        const QExpP& e = sys.basis_element(c);
        CHECK(e.leading_exponent() == c);
        CHECK(e.a(c) == 1);
        ModVec x = sys.coordinates(e);
        for (long i = 0; i < B; ++i) CHECK(x[static_cast<size_t>(i)] == (i == c ? 1 : 0));
    }
}

TEST_CASE("coordinates: linearity, divisibility, and the residual guard") {
    KatzSystem sys(5, 2, 12);
    long B = sys.basis_size();
    // p * (combination of basis elements) has coordinates divisible by p
    QExpP h = residue_series(sys.ring(), 12, sys.qprec());
    for (long c = 0; c < B; ++c) {
        QExpP e = sys.basis_element(c).scaled(Int(5 * (c + 2)));
        h = h + e;
    }
    ModVec x = sys.coordinates(h);
    for (long c = 0; c < B; ++c) CHECK(x[static_cast<size_t>(c)] == Int(5 * (c + 2)));

    // wrong weight tag is rejected
    QExpP w = residue_series(sys.ring(), 10, sys.qprec());
    CHECK_THROWS_AS(sys.coordinates(w), bad_input);

    // a random series is not overconvergent: the residual must trip
    QExpP junk = residue_series(sys.ring(), 12, sys.qprec());
    for (long n = 0; n <= junk.prec(); ++n) junk.set(n, Int(pmftest::rand_range(0, 24)));
    CHECK_THROWS_AS(sys.coordinates(junk), precision_error);
}

TEST_CASE("U_p matrix realizes u_p on the span") {
    KatzSystem sys(7, 2, 12);
    long B = sys.basis_size();
    for (int trial = 0; trial < 5; ++trial) {
        ModVec x = random_vec(sys.ring(), B);
        QExpP h = sys.series_of(x);
        ModVec lhs = sys.up_matrix().apply(x);
        ModVec rhs = sys.coordinates(u_p(h, 7));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("projector laws on a small grid") {
    for (long p : {5L, 7L, 11L}) {
        for (long k : {8L, 12L}) {
            KatzSystem sys(p, 2, k);
            const ModMatrix& a = sys.up_matrix();
            const ModMatrix& e = sys.ordinary_projector();
            CHECK(e * e == e);
            CHECK(e * a == a * e);
            // A restricted to im(E) is invertible mod p
            OrdinarySpace os = ordinary_space(sys);
            ModMatrix ar = restrict_to_ordinary(os, a);
            CHECK(rank_mod_p(ar) == ar.rows());
            // trace(E mod p) = number of unit roots of det(1 - X A) mod p
            long units = unit_root_count_oracle(a);
            CHECK(rank_mod_p(e) == units);
            PrimePower fp(p, 1);
            CHECK(fp.canon(e.trace()) == fp.canon(Int(units)));
        }
    }
}

TEST_CASE("stabilized classical ordinary form is a U_p eigenvector in Katz coordinates") {
    // p = 11, k = 12: Delta is ordinary; its stabilization lies in the span
    auto scan = cusp_eigenforms(12, 11, 2, 400);
    REQUIRE(scan.records.size() == 1);
    const auto& f = scan.records[0];
    REQUIRE(f.ordinary);
    KatzSystem sys(11, 2, 12);
    REQUIRE(sys.qprec() <= 400);
    QExpP falpha = p_stabilize(f, sys.qprec());
    ModVec x = sys.coordinates(falpha);
    ModVec ax = sys.up_matrix().apply(x);
    Int alpha = f.alpha.residue(sys.ring());
    for (size_t i = 0; i < x.size(); ++i) CHECK(ax[i] == sys.ring().mul(alpha, x[i]));

    // and it agrees with the ordinary-projection route:
    // f_alpha = (1 - p^{k-1} alpha^{-2}) E f
    ModVec fc = sys.coordinates(f.q_expansion(sys.qprec()));
    ModVec ef = sys.ordinary_projector().apply(fc);
    PadicScalar one = PadicScalar::from_integer(Int(1), 11, 2);
    PadicScalar scale = one - PadicScalar::from_integer(int_pow(11, 11), 11, 2) / (f.alpha * f.alpha);
    Int s = scale.residue(sys.ring());
    for (size_t i = 0; i < x.size(); ++i) CHECK(x[i] == sys.ring().mul(s, ef[i]));
}

TEST_CASE("lambda functional: normalization and eigen-property") {
    auto scan = cusp_eigenforms(12, 11, 2, 400);
    const auto& f = scan.records[0];
    KatzSystem sys(11, 2, 12);
    LambdaFunctional lam(sys, f);

    PadicScalar at_falpha = lam(lam.f_alpha_coordinates());
    CHECK(at_falpha.is_unit());
    CHECK(at_falpha.residue(sys.ring()) == 1);

    // lambda(E A x) = alpha lambda(E x) for arbitrary x
    const ModMatrix& e = sys.ordinary_projector();
    const ModMatrix& a = sys.up_matrix();
    for (int trial = 0; trial < 4; ++trial) {
        ModVec x = random_vec(sys.ring(), sys.basis_size());
        ModVec h = e.apply(x);
        PadicScalar lhs = lam(a.apply(h));
        PadicScalar rhs = f.alpha * lam(h);
        CHECK(lhs.congruent(rhs));
    }
}

TEST_CASE("lambda annihilates the other ordinary eigensystem of the same weight") {
    // At level 1 no weight carries two ordinary cusp eigensystems at small p
    // (the only ordinary branch at p = 11 is the Delta branch), so the second
    // ordinary system of weight 12 is the Eisenstein one: a_2 = 2049 = 3 mod
    // 11, distinct from a_2(Delta) = -24 = 9 mod 11.
    auto scan = cusp_eigenforms(12, 11, 2, 400);
    const auto& f = scan.records[0];
    KatzSystem sys(11, 2, 12);
    LambdaFunctional lam(sys, f);
    QExpP e12 = reduce_series(eisenstein(12, sys.qprec()), sys.ring());
    ModVec eord = sys.ordinary_projector().apply(sys.coordinates(e12));
    // the Eisenstein ordinary part is nonzero ...
    bool nonzero = false;
    for (auto& c : eord) nonzero = nonzero || (c != 0);
    REQUIRE(nonzero);
    // ... and lambda_{f,alpha} kills it
    CHECK(lam(eord).is_zero());
}

TEST_CASE("depth stability: lambda values unchanged at depth m+1") {
    auto scan = cusp_eigenforms(12, 11, 2, 500);
    const auto& f = scan.records[0];
    KatzSystem sys(11, 2, 12);
    KatzSystem deeper(11, 2, 12, 0, sys.depth() + 1);
    LambdaFunctional lam(sys, f);
    LambdaFunctional lam2(deeper, f);
    // same overconvergent input expanded in both systems
    QExpP fa_small = p_stabilize(f, sys.qprec());
    QExpP fa_big = p_stabilize(f, deeper.qprec());
    PadicScalar v1 = lam(sys.ordinary_projector().apply(sys.coordinates(fa_small)));
    PadicScalar v2 = lam2(deeper.ordinary_projector().apply(deeper.coordinates(fa_big)));
    CHECK(v1.residue(sys.ring()) == v2.residue(deeper.ring()));
}

TEST_CASE("precision coherence: N and N+1 agree after reduction") {
    auto scan2 = cusp_eigenforms(12, 11, 2, 400);
    auto scan3 = cusp_eigenforms(12, 11, 3, 400);
    const auto& f2 = scan2.records[0];
    const auto& f3 = scan3.records[0];
    KatzSystem sys2(11, 2, 12);
    KatzSystem sys3(11, 3, 12);
    LambdaFunctional lam2(sys2, f2);
    LambdaFunctional lam3(sys3, f3);
    QExpP h2 = p_stabilize(f2, sys2.qprec());
    QExpP h3 = p_stabilize(f3, sys3.qprec());
    PadicScalar v2 = lam2(sys2.ordinary_projector().apply(sys2.coordinates(h2)));
    PadicScalar v3 = lam3(sys3.ordinary_projector().apply(sys3.coordinates(h3)));
    CHECK(v2.residue(sys2.ring()) == sys2.ring().canon(v3.residue(sys3.ring())));
}
