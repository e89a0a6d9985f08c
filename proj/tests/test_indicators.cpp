#include <random>

#include <catch2/catch_amalgamated.hpp>
#include <premod/indicators.hpp>

using namespace premod;

namespace {

FusionRing group_ring(long n) {
    std::vector<long> dual(n);
    for (long a = 0; a < n; ++a) dual[a] = (n - a) % n;
    FusionRing r = FusionRing::empty(n, dual);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) r.N(a, b, (a + b) % n) = 1;
    return r;
}

// rank-4 ring with a Z3 of invertibles and one label of squared dimension
// 3 + m*d: m = 2 below, m = 0 is the Tambara-Yamagami-like shape
FusionRing z3_plus_one_ring(long n333) {
    FusionRing r = FusionRing::empty(4, {0, 2, 1, 3});
    for (long b = 0; b < 4; ++b) r.N(0, b, b) = 1;
    r.N(1, 0, 1) = r.N(1, 1, 2) = r.N(1, 2, 0) = r.N(1, 3, 3) = 1;
    r.N(2, 0, 2) = r.N(2, 1, 0) = r.N(2, 2, 1) = r.N(2, 3, 3) = 1;
    r.N(3, 0, 3) = r.N(3, 1, 3) = r.N(3, 2, 3) = 1;
    r.N(3, 3, 0) = r.N(3, 3, 1) = r.N(3, 3, 2) = 1;
    r.N(3, 3, 3) = n333;
    return r;
}

// pointed datum on Z/n from a quadratic form: theta_a = zeta_m^(c a^2) with
// m = 2n for even n, m = n for odd n (duality invariance needs c n (n-2a) even)
PremodularDatum pointed_datum(long n, long c) {
    long m = n % 2 ? n : 2 * n;
    std::vector<RootOfUnity> tw(n);
    std::vector<Cyclotomic> dims(n, Cyclotomic(1));
    for (long a = 0; a < n; ++a) tw[a] = RootOfUnity::make(m, c * a * a);
    return s_from_balancing(group_ring(n), tw, dims);
}

}  // namespace

TEST_CASE("fs_second_sum oracle values") {
    // trivial datum
    FusionRing one = FusionRing::empty(1, {0});
    one.N(0, 0, 0) = 1;
    auto triv = s_from_balancing(one, {RootOfUnity::make(1, 0)}, {Cyclotomic(1)});
    CHECK(fs_second_sum(triv, 0) == Cyclotomic(1));

    // dims (1,1,1,3), twists (1,1,1,-1): seven terms, (6*3 + 2*9)/12 = 3
    auto d = s_from_balancing(
        z3_plus_one_ring(2),
        {RootOfUnity::make(1, 0), RootOfUnity::make(1, 0), RootOfUnity::make(1, 0),
         RootOfUnity::make(2, 1)},
        {Cyclotomic(1), Cyclotomic(1), Cyclotomic(1), Cyclotomic(3)});
    CHECK(fs_second_sum(d, 3) == Cyclotomic(3));
    auto verdict = fs_integrality_filter(d);
    CHECK(verdict.pass);

    // Tambara-Yamagami-like branch: dims (1,1,1,sqrt 3), twists (1,1,1,+-i)
    Cyclotomic rt3 = gauss_sqrt(3);
    for (long e : {1L, 3L}) {
        PremodularDatum ty;
        ty.ring = z3_plus_one_ring(0);
        ty.twists = {RootOfUnity::make(1, 0), RootOfUnity::make(1, 0), RootOfUnity::make(1, 0),
                     RootOfUnity::make(4, e)};
        ty.dims = {Cyclotomic(1), Cyclotomic(1), Cyclotomic(1), rt3};
        CHECK(fs_second_sum(ty, 3) == -rt3);
        auto v = fs_integrality_filter(ty);
        CHECK_FALSE(v.pass);
        CHECK(v.reports[3].self_dual);
        CHECK_FALSE(v.reports[3].integral);
    }
}

TEST_CASE("symmetric data: first sum equals theta_a d_a on the center") {
    for (long n : {2L, 3L}) {
        std::vector<RootOfUnity> tw(n, RootOfUnity::make(1, 0));
        std::vector<Cyclotomic> dims(n, Cyclotomic(1));
        auto d = s_from_balancing(group_ring(n), tw, dims);
        for (long a = 0; a < n; ++a) CHECK(fs_second_sum(d, a) == d.theta(a) * d.dims[a]);
    }
}

TEST_CASE("first sums are real on random pointed data") {
    std::mt19937 rng(20260826);
    for (int trial = 0; trial < 40; ++trial) {
        long n = 1 + rng() % 6;
        long c = rng() % (n % 2 ? n : 2 * n);
        auto d = pointed_datum(n, c);
        for (long a = 0; a < n; ++a) {
            Cyclotomic f = fs_second_sum(d, a);
            CHECK(f.conj() == f);
        }
    }
}

TEST_CASE("fs_second_sum is relabeling-equivariant") {
    auto d = s_from_balancing(
        z3_plus_one_ring(2),
        {RootOfUnity::make(1, 0), RootOfUnity::make(1, 0), RootOfUnity::make(1, 0),
         RootOfUnity::make(2, 1)},
        {Cyclotomic(1), Cyclotomic(1), Cyclotomic(1), Cyclotomic(3)});
    // swap the dual pair 1 <-> 2 (commutes with duality)
    std::vector<long> p = {0, 2, 1, 3};
    PremodularDatum e;
    e.ring = FusionRing::empty(4, {0, 2, 1, 3});
    for (long a = 0; a < 4; ++a)
        for (long b = 0; b < 4; ++b)
            for (long c = 0; c < 4; ++c) e.ring.N(p[a], p[b], p[c]) = d.ring.N(a, b, c);
    e.twists.resize(4);
    e.dims.resize(4);
    for (long a = 0; a < 4; ++a) {
        e.twists[p[a]] = d.twists[a];
        e.dims[p[a]] = d.dims[a];
    }
    e = s_from_balancing(e.ring, e.twists, e.dims);
    for (long a = 0; a < 4; ++a) CHECK(fs_second_sum(e, p[a]) == fs_second_sum(d, a));
}

TEST_CASE("cyclotomic dimension check") {
    // pointed: dims 1, always true
    CHECK(cyclotomic_dim_check(pointed_datum(4, 1)));

    // golden ratio in Z[zeta_5], twist order 5 -> 2N = 10 contains conductor 5
    FusionRing fib = FusionRing::empty(2, {0, 1});
    fib.N(0, 0, 0) = fib.N(0, 1, 1) = fib.N(1, 0, 1) = fib.N(1, 1, 0) = fib.N(1, 1, 1) = 1;
    Cyclotomic tau = -Cyclotomic::zeta(5, 2) - Cyclotomic::zeta(5, 3);
    auto fd = s_from_balancing(fib, {RootOfUnity::make(1, 0), RootOfUnity::make(5, 2)},
                               {Cyclotomic(1), tau});
    CHECK(cyclotomic_dim_check(fd));

    // 1 + sqrt 2 has conductor 8: fails when twist orders only reach 2N = 4
    PremodularDatum bad;
    bad.ring = fib;
    bad.twists = {RootOfUnity::make(1, 0), RootOfUnity::make(2, 1)};
    bad.dims = {Cyclotomic(1), Cyclotomic(1) + gauss_sqrt(2)};
    CHECK_FALSE(cyclotomic_dim_check(bad));
    // with twist order 4 (2N = 8) the same dimension is admissible
    bad.twists[1] = RootOfUnity::make(4, 1);
    CHECK(cyclotomic_dim_check(bad));

    // non-integral coordinates fail even with matching conductor
    PremodularDatum frac;
    frac.ring = fib;
    frac.twists = {RootOfUnity::make(1, 0), RootOfUnity::make(5, 1)};
    frac.dims = {Cyclotomic(1), Cyclotomic(rat(1, 2))};
    CHECK_FALSE(cyclotomic_dim_check(frac));
}
