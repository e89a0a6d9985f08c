#include <catch2/catch_amalgamated.hpp>
#include <premod/datum.hpp>

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

FusionRing fib_ring() {
    FusionRing r = FusionRing::empty(2, {0, 1});
    r.N(0, 0, 0) = r.N(0, 1, 1) = r.N(1, 0, 1) = r.N(1, 1, 0) = r.N(1, 1, 1) = 1;
    return r;
}

FusionRing rep_z3_case_ring() {
    FusionRing r = FusionRing::empty(4, {0, 2, 1, 3});
    for (long b = 0; b < 4; ++b) r.N(0, b, b) = 1;
    r.N(1, 0, 1) = r.N(1, 1, 2) = r.N(1, 2, 0) = r.N(1, 3, 3) = 1;
    r.N(2, 0, 2) = r.N(2, 1, 0) = r.N(2, 2, 1) = r.N(2, 3, 3) = 1;
    r.N(3, 0, 3) = r.N(3, 1, 3) = r.N(3, 2, 3) = 1;
    r.N(3, 3, 0) = r.N(3, 3, 1) = r.N(3, 3, 2) = 1;
    r.N(3, 3, 3) = 2;
    return r;
}

Cyclotomic golden() { return -Cyclotomic::zeta(5, 2) - Cyclotomic::zeta(5, 3); }
Cyclotomic golden_bar() { return -Cyclotomic::zeta(5, 1) - Cyclotomic::zeta(5, 4); }

PremodularDatum trivial_datum() {
    FusionRing r = FusionRing::empty(1, {0});
    r.N(0, 0, 0) = 1;
    return s_from_balancing(r, {RootOfUnity::make(1, 0)}, {Cyclotomic(1)});
}

PremodularDatum rep_z2_datum() {
    return s_from_balancing(group_ring(2), {RootOfUnity::make(1, 0), RootOfUnity::make(2, 0)},
                            {Cyclotomic(1), Cyclotomic(1)});
}

PremodularDatum semion_datum(long chirality = 1) {
    return s_from_balancing(group_ring(2),
                            {RootOfUnity::make(1, 0), RootOfUnity::make(4, chirality)},
                            {Cyclotomic(1), Cyclotomic(1)});
}

PremodularDatum fib_datum(long twist_exp = 2) {  // exp 2, 3: dims tau; 1, 4: tau-bar
    Cyclotomic d = (twist_exp == 2 || twist_exp == 3) ? golden() : golden_bar();
    return s_from_balancing(fib_ring(), {RootOfUnity::make(1, 0), RootOfUnity::make(5, twist_exp)},
                            {Cyclotomic(1), d});
}

PremodularDatum rep_z3_case_datum() {
    return s_from_balancing(
        rep_z3_case_ring(),
        {RootOfUnity::make(1, 0), RootOfUnity::make(1, 0), RootOfUnity::make(1, 0),
         RootOfUnity::make(2, 1)},
        {Cyclotomic(1), Cyclotomic(1), Cyclotomic(1), Cyclotomic(3)});
}

}  // namespace

TEST_CASE("balancing reproduces known S-matrices") {
    auto t = trivial_datum();
    CHECK(t.smatrix[0][0] == Cyclotomic(1));

    auto sem = semion_datum();
    CHECK(sem.smatrix[0] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(1)});
    CHECK(sem.smatrix[1] == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(-1)});

    auto z3 = rep_z3_case_datum();
    for (long a = 0; a < 3; ++a)
        for (long b = 0; b < 3; ++b) CHECK(z3.smatrix[a][b] == Cyclotomic(1));
    for (long a = 0; a < 3; ++a) {
        CHECK(z3.smatrix[a][3] == Cyclotomic(3));
        CHECK(z3.smatrix[3][a] == Cyclotomic(3));
    }
    CHECK(z3.smatrix[3][3] == Cyclotomic(-3));

    auto fib = fib_datum();
    CHECK(fib.smatrix[0][1] == golden());
    CHECK(fib.smatrix[1][1] == Cyclotomic(-1));
}

TEST_CASE("balancing rejects inconsistent inputs") {
    // theta not duality-invariant on a dual pair
    FusionRing z3 = group_ring(3);
    CHECK_THROWS_AS(s_from_balancing(z3,
                                     {RootOfUnity::make(1, 0), RootOfUnity::make(3, 1),
                                      RootOfUnity::make(3, 2)},
                                     {Cyclotomic(1), Cyclotomic(1), Cyclotomic(1)}),
                    DatumError);
    // d_0 != 1
    CHECK_THROWS_AS(s_from_balancing(group_ring(2),
                                     {RootOfUnity::make(1, 0), RootOfUnity::make(1, 0)},
                                     {Cyclotomic(2), Cyclotomic(1)}),
                    DatumError);
}

TEST_CASE("verify_datum passes on good data, locates bad identities") {
    for (auto& d : {trivial_datum(), rep_z2_datum(), semion_datum(), semion_datum(3), fib_datum(),
                    fib_datum(1), rep_z3_case_datum()}) {
        auto v = verify_datum(d);
        INFO("datum rank " << d.rank());
        CHECK(v.ok());
    }
    // semion S-matrix with twist flipped to +1: Gauss sum mismatch breaks (ST)^3 = p+ S^2
    PremodularDatum bad = semion_datum();
    bad.twists[1] = RootOfUnity::make(1, 0);
    auto v = verify_datum(bad);
    REQUIRE_FALSE(v.ok());
    REQUIRE(v.find("st-cubed") != nullptr);
    CHECK_FALSE(v.find("st-cubed")->passed);
}

TEST_CASE("gauss sums") {
    auto z2 = gauss_sums(rep_z2_datum());
    CHECK(z2.first == Cyclotomic(2));
    CHECK(z2.second == Cyclotomic(2));

    auto sem = semion_datum();
    auto gs = gauss_sums(sem);
    CHECK(gs.first == Cyclotomic(1) + sem.theta(1));
    CHECK(gs.second == (Cyclotomic(1) + sem.theta(1)).conj());

    // modular data: p+ p- = D^2
    for (auto& d : {semion_datum(), fib_datum(), fib_datum(1)}) {
        auto [pp, pm] = gauss_sums(d);
        CHECK(pp * pm == d.global_dim_sq());
    }
}

TEST_CASE("mueger center trichotomy and determinant cross-check") {
    auto z3 = mueger_center(rep_z3_case_datum());
    CHECK(z3.tag == Degeneracy::ProperlyPremodular);
    CHECK(z3.transparent_labels == std::set<long>{0, 1, 2});

    CHECK(mueger_center(fib_datum()).tag == Degeneracy::Modular);
    auto z2 = mueger_center(rep_z2_datum());
    CHECK(z2.tag == Degeneracy::Symmetric);
    CHECK(z2.transparent_labels == std::set<long>{0, 1});

    for (auto& d : {trivial_datum(), rep_z2_datum(), semion_datum(), fib_datum(),
                    rep_z3_case_datum()}) {
        bool modular = mueger_center(d).tag == Degeneracy::Modular;
        CHECK(modular == !detail::cmat_det(d.smatrix).is_zero());
    }
}

TEST_CASE("galois action") {
    auto fib = galois_action(fib_datum());
    CHECK(fib.group_tag == "Z2");
    CHECK(fib.ambiguous_k.empty());
    bool has_swap = false;
    for (auto& act : fib.actions)
        if (act.perm == std::vector<long>{1, 0}) has_swap = true;
    CHECK(has_swap);

    // rational S-matrix: only the identity automorphism
    auto z3 = galois_action(rep_z3_case_datum());
    CHECK(z3.group_tag == "trivial");
}

TEST_CASE("galois two-sided sign relation") {
    auto d = fib_datum();
    auto rep = galois_action(d);
    for (auto& act : rep.actions) {
        long n = d.rank();
        std::vector<long> inv(n);
        for (long i = 0; i < n; ++i) inv[act.perm[i]] = i;
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c) {
                Cyclotomic rhs = Cyclotomic(act.signs[act.perm[b]] * act.signs[c]) *
                                 d.smatrix[act.perm[b]][inv[c]];
                CHECK(d.smatrix[b][c] == rhs);
            }
    }
}

TEST_CASE("deligne product") {
    auto fib = fib_datum();
    auto z2 = rep_z2_datum();
    auto prod = deligne_product(fib, z2);
    CHECK(prod.rank() == 4);
    CHECK(verify_datum(prod).ok());
    CHECK(mueger_center(prod).tag == Degeneracy::ProperlyPremodular);

    // unit of the product
    auto same = deligne_product(fib, trivial_datum());
    CHECK(same.ring == fib.ring);
    CHECK(same.dims == fib.dims);
    CHECK(same.smatrix == fib.smatrix);
    for (long a = 0; a < 2; ++a) CHECK(same.theta(a) == fib.theta(a));

    // Fib x Fib-bar is modular with Galois group of order 2 acting freely
    auto ffbar = deligne_product(fib_datum(2), fib_datum(1));
    CHECK(verify_datum(ffbar).ok());
    CHECK(mueger_center(ffbar).tag == Degeneracy::Modular);
    auto ga = galois_action(ffbar);
    CHECK(ga.group_tag == "Z2");
    for (auto& act : ga.actions)
        if (act.perm != std::vector<long>{0, 1, 2, 3}) {
            for (long i = 0; i < 4; ++i) CHECK(act.perm[i] != i);  // double transposition
        }
}

TEST_CASE("pseudo-unitarity") {
    CHECK(is_pseudo_unitary(fib_datum(2)) == Tristate::True);
    CHECK(is_pseudo_unitary(fib_datum(1)) == Tristate::False);  // d_1 = tau-bar < FP dim
    CHECK(is_pseudo_unitary(semion_datum()) == Tristate::True);
    CHECK(is_pseudo_unitary(rep_z3_case_datum()) == Tristate::True);
}
