#pragma once

#include "indicators.hpp"

namespace premod {

struct CatalogEntry {
    std::string name;
    PremodularDatum datum;
    std::string provenance;
    Degeneracy tag = Degeneracy::Symmetric;
    bool pointed = false;
    Tristate pseudo_unitary = Tristate::True;
};

namespace detail {

inline FusionRing cyclic_group_ring(long n) {
    std::vector<long> dual(n);
    for (long a = 0; a < n; ++a) dual[a] = (n - a) % n;
    FusionRing r = FusionRing::empty(n, dual);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) r.N(a, b, (a + b) % n) = 1;
    return r;
}

inline FusionRing klein_group_ring() {
    // labels 0..3 = (0,0),(0,1),(1,0),(1,1) in Z2 x Z2
    FusionRing r = FusionRing::empty(4, {0, 1, 2, 3});
    for (long a = 0; a < 4; ++a)
        for (long b = 0; b < 4; ++b) r.N(a, b, a ^ b) = 1;
    return r;
}

inline FusionRing fib_fusion_ring() {
    FusionRing r = FusionRing::empty(2, {0, 1});
    r.N(0, 0, 0) = r.N(0, 1, 1) = r.N(1, 0, 1) = r.N(1, 1, 0) = r.N(1, 1, 1) = 1;
    return r;
}

// dims (1,1,2): 2 x 2 = 0 + 1 + 2
inline FusionRing rep_s3_fusion_ring() {
    FusionRing r = FusionRing::empty(3, {0, 1, 2});
    for (long b = 0; b < 3; ++b) r.N(0, b, b) = r.N(b, 0, b) = 1;
    r.N(1, 1, 0) = 1;
    r.N(1, 2, 2) = r.N(2, 1, 2) = 1;
    r.N(2, 2, 0) = r.N(2, 2, 1) = r.N(2, 2, 2) = 1;
    return r;
}

// dims (1,1,1,3) with a Z3 of invertibles: the ring of Rep(A4) and C(sl2,6)_ad
inline FusionRing a4_fusion_ring() {
    FusionRing r = FusionRing::empty(4, {0, 2, 1, 3});
    for (long b = 0; b < 4; ++b) r.N(0, b, b) = 1;
    r.N(1, 0, 1) = r.N(1, 1, 2) = r.N(1, 2, 0) = r.N(1, 3, 3) = 1;
    r.N(2, 0, 2) = r.N(2, 1, 0) = r.N(2, 2, 1) = r.N(2, 3, 3) = 1;
    r.N(3, 0, 3) = r.N(3, 1, 3) = r.N(3, 2, 3) = 1;
    r.N(3, 3, 0) = r.N(3, 3, 1) = r.N(3, 3, 2) = 1;
    r.N(3, 3, 3) = 2;
    return r;
}

// dims (1,1,2,2): the ring of Rep(D10) and C(so5,10)_ad
inline FusionRing d10_fusion_ring() {
    FusionRing r = FusionRing::empty(4, {0, 1, 2, 3});
    for (long b = 0; b < 4; ++b) r.N(0, b, b) = r.N(b, 0, b) = 1;
    r.N(1, 1, 0) = 1;
    r.N(1, 2, 2) = r.N(2, 1, 2) = 1;
    r.N(1, 3, 3) = r.N(3, 1, 3) = 1;
    r.N(2, 2, 0) = r.N(2, 2, 1) = r.N(2, 2, 3) = 1;
    r.N(2, 3, 2) = r.N(2, 3, 3) = r.N(3, 2, 2) = r.N(3, 2, 3) = 1;
    r.N(3, 3, 0) = r.N(3, 3, 1) = r.N(3, 3, 2) = 1;
    return r;
}

// dims (1,1,1+sqrt2,1+sqrt2), X1 x X2 = X3: the ring of C(sl2,8)_ad
inline FusionRing sl2_8_fusion_ring() {
    FusionRing r = FusionRing::empty(4, {0, 1, 2, 3});
    for (long b = 0; b < 4; ++b) r.N(0, b, b) = r.N(b, 0, b) = 1;
    r.N(1, 1, 0) = 1;
    r.N(1, 2, 3) = r.N(1, 3, 2) = r.N(2, 1, 3) = r.N(3, 1, 2) = 1;
    r.N(2, 2, 0) = r.N(2, 2, 2) = r.N(2, 2, 3) = 1;
    r.N(2, 3, 1) = r.N(2, 3, 2) = r.N(2, 3, 3) = 1;
    r.N(3, 2, 1) = r.N(3, 2, 2) = r.N(3, 2, 3) = 1;
    r.N(3, 3, 0) = r.N(3, 3, 2) = r.N(3, 3, 3) = 1;
    return r;
}

// even-spin subcategory of SU(2) level 7: labels = spins 0,1,2,3
inline FusionRing psu2_7_fusion_ring() {
    FusionRing r = FusionRing::empty(4, {0, 1, 2, 3});
    auto set = [&](long a, long b, std::initializer_list<long> cs) {
        for (long c : cs) r.N(a, b, c) = r.N(b, a, c) = 1;
    };
    for (long b = 0; b < 4; ++b) r.N(0, b, b) = r.N(b, 0, b) = 1;
    set(1, 1, {0, 1, 2});
    set(1, 2, {1, 2, 3});
    set(1, 3, {2, 3});
    set(2, 2, {0, 1, 2, 3});
    set(2, 3, {1, 2});
    set(3, 3, {0, 1});
    return r;
}

inline RootOfUnity unit_root(long n, long k) { return RootOfUnity::make(n, k); }

inline PremodularDatum pointed_cyclic_datum(long n, long m, long c) {
    // quadratic form theta_a = zeta_m^(c a^2), m a multiple of n (2n for even n)
    std::vector<RootOfUnity> tw(n);
    std::vector<Cyclotomic> dims(n, Cyclotomic(1));
    for (long a = 0; a < n; ++a) tw[a] = unit_root(m, c * a * a);
    return s_from_balancing(cyclic_group_ring(n), tw, dims);
}

inline std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&](const std::string& name, PremodularDatum d, const std::string& prov) {
        CatalogEntry e;
        e.name = name;
        e.tag = mueger_center(d).tag;
        e.pointed = true;
        for (auto& x : d.dims)
            if (x != Cyclotomic(1) && x != Cyclotomic(-1)) e.pointed = false;
        e.pseudo_unitary = is_pseudo_unitary(d);
        e.datum = std::move(d);
        e.provenance = prov;
        out.push_back(std::move(e));
    };
    Cyclotomic one(1);
    Cyclotomic tau = -Cyclotomic::zeta(5, 2) - Cyclotomic::zeta(5, 3);   // (1+sqrt5)/2
    Cyclotomic tau_bar = -Cyclotomic::zeta(5, 1) - Cyclotomic::zeta(5, 4);  // (1-sqrt5)/2
    Cyclotomic rt2 = gauss_sqrt(2);

    // rank 1 and 2
    {
        FusionRing r = FusionRing::empty(1, {0});
        r.N(0, 0, 0) = 1;
        add("trivial", s_from_balancing(r, {unit_root(1, 0)}, {one}), "unit category");
    }
    add("rep-z2", pointed_cyclic_datum(2, 1, 0), "regular representations of Z2, trivial braiding");
    add("svec", pointed_cyclic_datum(2, 4, 2), "super-vector spaces: Z2 with theta_1 = -1");
    add("semion", pointed_cyclic_datum(2, 4, 1), "Z2 with theta_1 = i; fixed quadratic-form braiding");
    add("semion-bar", pointed_cyclic_datum(2, 4, 3), "Z2 with theta_1 = -i; conjugate semion");
    auto fib_variant = [&](long exp) {
        Cyclotomic d = (exp == 2 || exp == 3) ? tau : tau_bar;
        return s_from_balancing(fib_fusion_ring(), {unit_root(1, 0), unit_root(5, exp)}, {one, d});
    };
    add("fib", fib_variant(2), "Fibonacci modular datum, d = golden mean");
    add("fib-bar", fib_variant(3), "Fibonacci, conjugate chirality");
    add("fib-gal", fib_variant(1), "Galois conjugate of Fibonacci, d = (1-sqrt5)/2");
    add("fib-gal-bar", fib_variant(4), "Galois conjugate of Fibonacci, conjugate chirality");

    // rank 3
    add("rep-z3", pointed_cyclic_datum(3, 3, 0), "representations of Z3, trivial braiding");
    add("rep-s3",
        s_from_balancing(rep_s3_fusion_ring(),
                         {unit_root(1, 0), unit_root(1, 0), unit_root(1, 0)},
                         {one, one, Cyclotomic(2)}),
        "representations of S3; symmetric datum from character theory");

    // rank 4 pointed representatives (documented braiding choices)
    add("pointed-z4", pointed_cyclic_datum(4, 8, 1), "Z4 with theta_a = zeta_8^(a^2)");
    {
        FusionRing r = klein_group_ring();
        std::vector<RootOfUnity> tw = {unit_root(1, 0), unit_root(1, 0), unit_root(1, 0),
                                       unit_root(2, 1)};
        add("pointed-z2z2", s_from_balancing(r, tw, {one, one, one, one}),
            "Z2 x Z2 with theta = (1,1,1,-1): toric-code-type quadratic form");
    }

    // rank 4 symmetric (Grothendieck classes of the classification's item 1)
    add("rep-z4", pointed_cyclic_datum(4, 4, 0), "representations of Z4, trivial braiding");
    add("rep-z2z2",
        s_from_balancing(klein_group_ring(),
                         {unit_root(1, 0), unit_root(1, 0), unit_root(1, 0), unit_root(1, 0)},
                         {one, one, one, one}),
        "representations of Z2 x Z2, trivial braiding");
    add("rep-d10",
        s_from_balancing(d10_fusion_ring(),
                         {unit_root(1, 0), unit_root(1, 0), unit_root(1, 0), unit_root(1, 0)},
                         {one, one, Cyclotomic(2), Cyclotomic(2)}),
        "representations of the dihedral group of order 10; standard character theory");
    add("rep-a4",
        s_from_balancing(a4_fusion_ring(),
                         {unit_root(1, 0), unit_root(1, 0), unit_root(1, 0), unit_root(1, 0)},
                         {one, one, one, Cyclotomic(3)}),
        "representations of A4; standard character theory");

    // rank 4 properly premodular
    add("c-sl2-6-ad",
        s_from_balancing(a4_fusion_ring(),
                         {unit_root(1, 0), unit_root(1, 0), unit_root(1, 0), unit_root(2, 1)},
                         {one, one, one, Cyclotomic(3)}),
        "adjoint subcategory of C(sl2,6); printed S and T of the Rep(Z3)-center case");
    for (long j = 1; j <= 4; ++j) {
        std::string name = j == 1 ? "c-so5-10-ad" : "c-so5-10-ad-t" + std::to_string(j);
        add(name,
            s_from_balancing(d10_fusion_ring(),
                             {unit_root(1, 0), unit_root(1, 0), unit_root(5, j), unit_root(5, 5 - j)},
                             {one, one, Cyclotomic(2), Cyclotomic(2)}),
            "adjoint subcategory of C(so5,10); theta a primitive 5th root of unity");
    }
    add("c-sl2-8-ad",
        s_from_balancing(sl2_8_fusion_ring(),
                         {unit_root(1, 0), unit_root(2, 1), unit_root(4, 1), unit_root(4, 3)},
                         {one, one, one + rt2, one + rt2}),
        "adjoint subcategory of C(sl2,8); d = 1 + sqrt2, T = diag(1,-1,i,-i)");
    add("c-sl2-8-ad-conj",
        s_from_balancing(sl2_8_fusion_ring(),
                         {unit_root(1, 0), unit_root(2, 1), unit_root(4, 1), unit_root(4, 3)},
                         {one, one, one - rt2, one - rt2}),
        "Galois conjugate of c-sl2-8-ad; d = 1 - sqrt2");

    // rank 4 Deligne products
    auto get = [&](const std::string& n) -> const PremodularDatum& {
        for (auto& e : out)
            if (e.name == n) return e.datum;
        throw std::logic_error("catalog build order");
    };
    add("fib-rep-z2", deligne_product(get("fib"), get("rep-z2")),
        "Deligne product Fib x Rep(Z2)");
    add("fib-svec", deligne_product(get("fib"), get("svec")), "Deligne product Fib x sVec");
    add("fib-semion", deligne_product(get("fib"), get("semion")),
        "Deligne product Fib x Semion (the SU(2) level-3 datum up to relabeling)");
    add("fib-fib", deligne_product(get("fib"), get("fib")), "Deligne product Fib x Fib");
    add("fib-fib-rev", deligne_product(get("fib"), get("fib-bar")),
        "Deligne product of Fib with its reverse braiding");
    add("fib-fib-bar", deligne_product(get("fib"), get("fib-gal")),
        "Deligne product of Fib with its Galois conjugate; the non-pseudo-unitary modular "
        "S-matrix of the rank-4 classification");

    // even part of SU(2) level 7: dims in Q(zeta_9)
    {
        Cyclotomic z9 = Cyclotomic::zeta(9);
        Cyclotomic d1 = one + z9 + z9.pow(8);
        Cyclotomic d2 = d1 + z9.pow(2) + z9.pow(7);
        Cyclotomic d3 = -z9.pow(4) - z9.pow(5);
        add("psu2-7",
            s_from_balancing(psu2_7_fusion_ring(),
                             {unit_root(1, 0), unit_root(9, 2), unit_root(3, 2), unit_root(3, 1)},
                             {one, d1, d2, d3}),
            "even-spin subcategory of SU(2) level 7; twists theta_j = exp(2 i pi j(j+1)/9)");
    }
    return out;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = detail::build_catalog();
    return entries;
}

inline std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (auto& e : catalog()) names.push_back(e.name);
    return names;
}

inline const CatalogEntry& catalog_get(const std::string& name) {
    for (auto& e : catalog())
        if (e.name == name) return e;
    std::string msg = "unknown catalog entry '" + name + "'; available:";
    for (auto& e : catalog()) msg += " " + e.name;
    throw std::out_of_range(msg);
}

}  // namespace premod
