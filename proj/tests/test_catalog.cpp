#include <catch2/catch_amalgamated.hpp>

#include "premod/catalog.hpp"

using namespace premod;

TEST_CASE("catalog lookup") {
    auto names = catalog_list();
    REQUIRE(names.size() == catalog().size());
    for (const auto& n : {"trivial", "rep-z2", "svec", "semion", "fib", "rep-s3", "rep-z4",
                          "rep-z2z2", "rep-d10", "rep-a4", "c-sl2-6-ad", "c-so5-10-ad",
                          "c-sl2-8-ad", "fib-rep-z2", "fib-svec", "fib-fib-bar", "psu2-7"})
        REQUIRE(catalog_get(n).name == n);
    REQUIRE_THROWS_AS(catalog_get("nope"), std::out_of_range);
    // names are unique
    std::set<std::string> uniq(names.begin(), names.end());
    REQUIRE(uniq.size() == names.size());
}

TEST_CASE("every catalog entry passes full verification") {
    for (const auto& e : catalog()) {
        INFO(e.name);
        auto rep = verify_fusion_axioms(e.datum.ring);
        REQUIRE(rep.ok());
        auto verdict = verify_datum(e.datum);
        for (const auto& r : verdict.results) {
            INFO(e.name << ": " << r.key);
            REQUIRE(r.passed);
        }
        auto fs = fs_integrality_filter(e.datum);
        INFO(e.name << " FS filter");
        REQUIRE(fs.pass);
        REQUIRE(cyclotomic_dim_check(e.datum));
    }
}

TEST_CASE("degeneracy tags match the classification") {
    auto tag = [](const std::string& n) { return catalog_get(n).tag; };
    for (const auto& n : {"rep-z2", "svec", "rep-z3", "rep-s3", "rep-z4", "rep-z2z2",
                          "rep-d10", "rep-a4"})
        REQUIRE(tag(n) == Degeneracy::Symmetric);
    for (const auto& n : {"c-sl2-6-ad", "c-so5-10-ad", "c-so5-10-ad-t2", "c-so5-10-ad-t3",
                          "c-so5-10-ad-t4", "c-sl2-8-ad", "c-sl2-8-ad-conj", "fib-rep-z2",
                          "fib-svec"})
        REQUIRE(tag(n) == Degeneracy::ProperlyPremodular);
    for (const auto& n : {"trivial", "semion", "semion-bar", "fib", "fib-bar", "fib-gal",
                          "pointed-z4", "pointed-z2z2", "fib-semion", "fib-fib", "fib-fib-rev",
                          "fib-fib-bar", "psu2-7"})
        REQUIRE(tag(n) == Degeneracy::Modular);
}

TEST_CASE("pointedness and pseudo-unitarity flags") {
    REQUIRE(catalog_get("pointed-z4").pointed);
    REQUIRE(catalog_get("rep-z4").pointed);
    REQUIRE_FALSE(catalog_get("rep-a4").pointed);
    REQUIRE_FALSE(catalog_get("fib").pointed);
    REQUIRE(catalog_get("fib").pseudo_unitary == Tristate::True);
    REQUIRE(catalog_get("fib-gal").pseudo_unitary == Tristate::False);
    REQUIRE(catalog_get("c-sl2-8-ad").pseudo_unitary == Tristate::True);
    REQUIRE(catalog_get("c-sl2-8-ad-conj").pseudo_unitary == Tristate::False);
    REQUIRE(catalog_get("fib-fib-bar").pseudo_unitary == Tristate::False);
    REQUIRE(catalog_get("psu2-7").pseudo_unitary == Tristate::True);
}

TEST_CASE("printed S-matrix entries are reproduced") {
    // C(sl2,6)_ad: last row (3,3,3,-3)
    {
        const auto& d = catalog_get("c-sl2-6-ad").datum;
        REQUIRE(d.smatrix[3][0] == Cyclotomic(3));
        REQUIRE(d.smatrix[3][3] == Cyclotomic(-3));
        REQUIRE(d.smatrix[1][2] == Cyclotomic(1));
    }
    // C(so5,10)_ad: s_22 = (2 + 2 theta)/theta^3 with theta = zeta_5
    {
        const auto& d = catalog_get("c-so5-10-ad").datum;
        Cyclotomic th = Cyclotomic::zeta(5);
        Cyclotomic expect = (Cyclotomic(2) + Cyclotomic(2) * th) * th.pow(2);  // /th^3
        REQUIRE(d.smatrix[2][2] == expect);
        Cyclotomic expect23 = (Cyclotomic(2) + Cyclotomic(2) * th.pow(2)) * th.pow(4);
        REQUIRE(d.smatrix[2][3] == expect23);
    }
    // C(sl2,8)_ad: S = [[1, d],[d, -1]] tensor all-ones, d = 1 + sqrt2
    {
        const auto& d = catalog_get("c-sl2-8-ad").datum;
        Cyclotomic dd = Cyclotomic(1) + gauss_sqrt(2);
        REQUIRE(d.smatrix[0][1] == Cyclotomic(1));
        REQUIRE(d.smatrix[0][2] == dd);
        REQUIRE(d.smatrix[1][3] == dd);
        REQUIRE(d.smatrix[2][2] == Cyclotomic(-1));
        REQUIRE(d.smatrix[2][3] == Cyclotomic(-1));
        REQUIRE(d.smatrix[3][3] == Cyclotomic(-1));
    }
    // Fib x Fib-bar: the classification's non-pseudo-unitary modular S-matrix
    {
        const auto& d = catalog_get("fib-fib-bar").datum;
        Cyclotomic tau = -Cyclotomic::zeta(5, 2) - Cyclotomic::zeta(5, 3);
        Cyclotomic tau_bar = Cyclotomic(1) - tau;
        // product label order (0,0),(0,1),(1,0),(1,1); the classification prints the
        // relabeling with the invertible -1 object second
        REQUIRE(d.dims[3] == -Cyclotomic(1));
        REQUIRE(d.smatrix[0][3] == -Cyclotomic(1));
        REQUIRE((d.smatrix[0][1] == tau || d.smatrix[0][1] == tau_bar));
        REQUIRE(d.smatrix[1][2] == -Cyclotomic(1));  // tau * tau_bar
        REQUIRE(d.smatrix[1][1] == -Cyclotomic(1));
        REQUIRE(d.smatrix[2][2] == -Cyclotomic(1));
        REQUIRE(d.smatrix[3][3] == Cyclotomic(1));
        REQUIRE((d.smatrix[2][3] == -tau || d.smatrix[2][3] == -tau_bar));
    }
}

TEST_CASE("Muger centers of the properly premodular entries") {
    auto center = [](const std::string& n) {
        return mueger_center(catalog_get(n).datum).transparent_labels;
    };
    REQUIRE(center("c-sl2-6-ad") == std::set<long>{0, 1, 2});        // Rep(Z3)
    REQUIRE(center("c-so5-10-ad") == std::set<long>{0, 1});          // Rep(Z2)
    REQUIRE(center("c-sl2-8-ad") == std::set<long>{0, 1});           // sVec
    REQUIRE(catalog_get("c-sl2-8-ad").datum.theta(1) == Cyclotomic(-1));
    REQUIRE(center("fib-rep-z2") == std::set<long>{0, 1});
    REQUIRE(catalog_get("fib-rep-z2").datum.theta(1) == Cyclotomic(1));
    REQUIRE(center("fib-svec") == std::set<long>{0, 1});
    REQUIRE(catalog_get("fib-svec").datum.theta(1) == Cyclotomic(-1));
}

TEST_CASE("psu2-7 global dimension and twists") {
    const auto& d = catalog_get("psu2-7").datum;
    // D^2 = sum d_a^2 is totally real of conductor 9; check it is a root of the
    // right minimal polynomial: D^2 = 9 - [3]... verify numerically instead.
    double mid = d.global_dim_sq().embed_complex(64).re.mid();
    // D^2 = (half of the SU(2)_7 global dimension) ~ 19.2344...
    REQUIRE(std::abs(mid - 19.2344224) < 1e-5);
    REQUIRE(d.theta(1) == Cyclotomic::zeta(9).pow(2));
    REQUIRE(d.theta(2) == Cyclotomic::zeta(3).pow(2));
    REQUIRE(d.theta(3) == Cyclotomic::zeta(3));
}
