#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "roots.hpp"

namespace premod {

// Commutative fusion ring: unit label 0, duality involution, nonnegative
// integer structure constants N_ab^c stored row-major (a, b, c).
struct FusionRing {
    long rank = 1;
    std::vector<long> duality{0};
    std::vector<long> coeffs{1};

    long N(long a, long b, long c) const { return coeffs[(a * rank + b) * rank + c]; }
    long& N(long a, long b, long c) { return coeffs[(a * rank + b) * rank + c]; }

    static FusionRing empty(long rank, std::vector<long> duality) {
        FusionRing r;
        r.rank = rank;
        r.duality = std::move(duality);
        r.coeffs.assign(rank * rank * rank, 0);
        return r;
    }

    bool operator==(const FusionRing& o) const {
        return rank == o.rank && duality == o.duality && coeffs == o.coeffs;
    }
    bool operator<(const FusionRing& o) const {
        if (rank != o.rank) return rank < o.rank;
        if (duality != o.duality) return duality < o.duality;
        return coeffs < o.coeffs;
    }
};

struct AxiomReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline AxiomReport verify_fusion_axioms(const FusionRing& r) {
    AxiomReport rep;
    long n = r.rank;
    auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
    if ((long)r.coeffs.size() != n * n * n || (long)r.duality.size() != n)
        throw std::invalid_argument("fusion tensor shape mismatch");
    for (long v : r.coeffs)
        if (v < 0) {
            fail("negative coefficient");
            return rep;
        }
    if (r.duality[0] != 0) fail("duality moves the unit");
    for (long a = 0; a < n; ++a) {
        if (r.duality[a] < 0 || r.duality[a] >= n || r.duality[r.duality[a]] != a) {
            fail("duality is not an involution");
            return rep;
        }
    }
    auto idx3 = [](long a, long b, long c) {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    };
    for (long b = 0; b < n; ++b)
        for (long c = 0; c < n; ++c) {
            if (r.N(0, b, c) != (b == c ? 1 : 0)) fail("unit row at " + idx3(0, b, c));
            if (r.N(b, 0, c) != (b == c ? 1 : 0)) fail("unit column at " + idx3(b, 0, c));
        }
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            if (r.N(a, b, 0) != (b == r.duality[a] ? 1 : 0)) fail("duality pairing at " + idx3(a, b, 0));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c) {
                long v = r.N(a, b, c);
                if (v != r.N(b, a, c)) fail("commutativity at " + idx3(a, b, c));
                if (v != r.N(a, r.duality[c], r.duality[b]))
                    fail("Frobenius symmetry at " + idx3(a, b, c));
                if (v != r.N(r.duality[a], r.duality[b], r.duality[c]))
                    fail("conjugation symmetry at " + idx3(a, b, c));
            }
    // fusion matrices commute pairwise
    for (long a = 1; a < n; ++a)
        for (long b = a + 1; b < n; ++b)
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) {
                    long ab = 0, ba = 0;
                    for (long k = 0; k < n; ++k) {
                        ab += r.N(a, i, k) * r.N(b, k, j);
                        ba += r.N(b, i, k) * r.N(a, k, j);
                    }
                    if (ab != ba) {
                        fail("fusion matrices do not commute at (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
                        return rep;
                    }
                }
    // associativity, and with it the representation property N_a N_b = sum_c N_ab^c N_c
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = 0; c < n; ++c)
                for (long d = 0; d < n; ++d) {
                    long lhs = 0, rhs = 0;
                    for (long e = 0; e < n; ++e) {
                        lhs += r.N(a, b, e) * r.N(e, c, d);
                        rhs += r.N(b, c, e) * r.N(a, e, d);
                    }
                    if (lhs != rhs) {
                        fail("associativity at " + idx3(a, b, c) + "->" + std::to_string(d));
                        return rep;
                    }
                }
    return rep;
}

// char poly det(xI - N_a), monic, integer coefficients
inline QPoly char_poly(const FusionRing& r, long a) {
    long n = r.rank;
    // Leibniz expansion over permutations; fine for rank <= 6
    std::vector<long> perm(n);
    for (long i = 0; i < n; ++i) perm[i] = i;
    QPoly det;
    do {
        // sign of permutation
        long inv = 0;
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        QPoly term = QPoly::constant(inv % 2 ? Rat(-1) : Rat(1));
        for (long i = 0; i < n; ++i) {
            long j = perm[i];
            Rat off = Rat(-r.N(a, i, j));
            QPoly entry =
                (i == j) ? QPoly({off, Rat(1)}) : QPoly::constant(off);
            term = term * entry;
            if (term.is_zero()) break;
        }
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

struct FPDimEntry {
    std::pair<Rat, Rat> interval;  // isolating interval of the largest real eigenvalue
    std::optional<Cyclotomic> exact;
};

struct FPDimData {
    std::vector<FPDimEntry> dims;
    std::pair<Rat, Rat> total;
    std::optional<Cyclotomic> total_exact;
};

// exact membership of a real cyclotomic r in (lo, hi]
inline bool in_interval(const Cyclotomic& r, const Rat& lo, const Rat& hi) {
    return (r - Cyclotomic(lo)).sign_real() > 0 && (r - Cyclotomic(hi)).sign_real() <= 0;
}

inline FPDimData fpdim(const FusionRing& r, long conductor_cap = 200) {
    FPDimData out;
    Rat width = rat(1, 1000000000);
    Rat tlo = 0, thi = 0;
    Cyclotomic texact;
    bool all_exact = true;
    for (long a = 0; a < r.rank; ++a) {
        QPoly p = char_poly(r, a);
        QPoly rep = QPoly::gcd(p, p.derivative());
        if (rep.degree() > 0) p = p.divmod(rep).first;  // squarefree part
        auto iv = isolate_largest_real_root(p, width);
        FPDimEntry e;
        e.interval = iv;
        for (auto& root : cyclotomic_roots(p, conductor_cap)) {
            if (!root.is_real()) continue;
            if (in_interval(root, iv.first, iv.second)) {
                e.exact = root;
                break;
            }
        }
        if (e.exact)
            texact = texact + *e.exact * *e.exact;
        else
            all_exact = false;
        tlo += iv.first * iv.first;
        thi += iv.second * iv.second;
        out.dims.push_back(std::move(e));
    }
    out.total = {tlo, thi};
    if (all_exact) out.total_exact = texact;
    return out;
}

struct CharacterSet {
    std::vector<std::vector<Cyclotomic>> exact;  // each: chi(0..rank-1), chi(0) = 1
    long missing = 0;                            // characters not cyclotomically representable
};

// All exact ring characters as simultaneous eigensystems of the fusion
// matrices. Uses a separating integer combination of the N_a.
inline CharacterSet characters(const FusionRing& r, long conductor_cap = 200) {
    long n = r.rank;
    CharacterSet out;
    if (n == 1) {
        out.exact.push_back({Cyclotomic(1)});
        return out;
    }
    for (long t = 1; t <= 64; ++t) {
        // M = sum_a t^(a-1) N_a over nontrivial labels
        std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n));
        Rat pw = 1;
        for (long a = 1; a < n; ++a) {
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j) M[i][j] += pw * Rat(r.N(a, i, j));
            pw *= Rat(t);
        }
        // char poly by Leibniz
        std::vector<long> perm(n);
        for (long i = 0; i < n; ++i) perm[i] = i;
        QPoly det;
        do {
            long inv = 0;
            for (long i = 0; i < n; ++i)
                for (long j = i + 1; j < n; ++j)
                    if (perm[i] > perm[j]) ++inv;
            QPoly term = QPoly::constant(inv % 2 ? Rat(-1) : Rat(1));
            for (long i = 0; i < n; ++i) {
                long j = perm[i];
                QPoly entry = (i == j) ? QPoly({-M[i][j], Rat(1)}) : QPoly::constant(-M[i][j]);
                term = term * entry;
            }
            det = det + term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (QPoly::gcd(det, det.derivative()).degree() > 0)
            continue;  // repeated eigenvalues: combination does not separate
        auto eig = cyclotomic_roots(det, conductor_cap);
        out.missing = n - (long)eig.size();
        for (auto& lam : eig) {
            // nullspace of (M - lam I) over the cyclotomic field
            std::vector<std::vector<Cyclotomic>> B(n, std::vector<Cyclotomic>(n));
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    B[i][j] = (i == j) ? Cyclotomic(M[i][j]) - lam : Cyclotomic(M[i][j]);
            // gaussian elimination
            long rrow = 0;
            std::vector<long> pivot(n, -1);
            for (long col = 0; col < n && rrow < n; ++col) {
                long pr = -1;
                for (long i = rrow; i < n; ++i)
                    if (!B[i][col].is_zero()) {
                        pr = i;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(B[rrow], B[pr]);
                Cyclotomic inv_p = B[rrow][col].inverse();
                for (long j = col; j < n; ++j) B[rrow][j] = B[rrow][j] * inv_p;
                for (long i = 0; i < n; ++i) {
                    if (i == rrow || B[i][col].is_zero()) continue;
                    Cyclotomic f = B[i][col];
                    for (long j = col; j < n; ++j) B[i][j] = B[i][j] - f * B[rrow][j];
                }
                pivot[col] = rrow++;
            }
            // free column gives the eigenvector
            long free_col = -1;
            for (long col = 0; col < n; ++col)
                if (pivot[col] < 0) {
                    free_col = col;
                    break;
                }
            if (free_col < 0) continue;  // not actually an eigenvalue; skip defensively
            std::vector<Cyclotomic> v(n);
            v[free_col] = Cyclotomic(1);
            for (long col = 0; col < n; ++col)
                if (pivot[col] >= 0) v[col] = -B[pivot[col]][free_col];
            // chi(a) from N_a v = chi(a) v at a coordinate with v != 0
            long nz = free_col;
            std::vector<Cyclotomic> chi(n);
            Cyclotomic invv = v[nz].inverse();
            bool good = true;
            for (long a = 0; a < n && good; ++a) {
                Cyclotomic w;
                for (long j = 0; j < n; ++j)
                    if (r.N(a, nz, j) != 0) w = w + Cyclotomic(Rat(r.N(a, nz, j))) * v[j];
                chi[a] = w * invv;
                // consistency on every coordinate
                for (long i = 0; i < n && good; ++i) {
                    Cyclotomic wi;
                    for (long j = 0; j < n; ++j)
                        if (r.N(a, i, j) != 0) wi = wi + Cyclotomic(Rat(r.N(a, i, j))) * v[j];
                    if (wi != chi[a] * v[i]) good = false;
                }
            }
            if (good && chi[0] == Cyclotomic(1)) out.exact.push_back(std::move(chi));
        }
        // deterministic order
        std::sort(out.exact.begin(), out.exact.end());
        return out;
    }
    throw std::runtime_error("characters: no separating combination found");
}

// Lexicographically minimal coefficient tensor over relabelings fixing 0 and
// commuting with duality; duality itself is unchanged.
inline FusionRing canonical_form(const FusionRing& r) {
    long n = r.rank;
    std::vector<long> perm(n);
    for (long i = 0; i < n; ++i) perm[i] = i;
    FusionRing best = r;
    bool first = true;
    std::vector<long> sub(n - 1);
    for (long i = 1; i < n; ++i) sub[i - 1] = i;
    std::sort(sub.begin(), sub.end());
    do {
        for (long i = 1; i < n; ++i) perm[i] = sub[i - 1];
        bool compat = true;
        for (long a = 0; a < n && compat; ++a)
            if (perm[r.duality[a]] != r.duality[perm[a]]) compat = false;
        if (!compat) continue;
        FusionRing cand = FusionRing::empty(n, r.duality);
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                for (long c = 0; c < n; ++c) cand.N(perm[a], perm[b], perm[c]) = r.N(a, b, c);
        if (first || cand.coeffs < best.coeffs) {
            best = cand;
            first = false;
        }
    } while (std::next_permutation(sub.begin(), sub.end()));
    return best;
}

// Ring isomorphism up to any unit-fixing relabeling, conjugating the duality
// (canonical_form keeps the duality vector fixed, so presentations of one ring
// under conjugate involutions need this check instead).
inline bool rings_isomorphic(const FusionRing& r1, const FusionRing& r2) {
    long n = r1.rank;
    if (r2.rank != n) return false;
    std::vector<long> p(n);
    for (long i = 0; i < n; ++i) p[i] = i;
    do {
        bool ok = true;
        for (long a = 0; a < n && ok; ++a) {
            if (r2.duality[p[a]] != p[r1.duality[a]]) ok = false;
            for (long b = 0; b < n && ok; ++b)
                for (long c = 0; c < n; ++c)
                    if (r1.N(a, b, c) != r2.N(p[a], p[b], p[c])) {
                        ok = false;
                        break;
                    }
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return false;
}

// Every axiom-satisfying ring with coefficients <= nmax for the given duality,
// one representative per canonical class, in deterministic order.
inline std::vector<FusionRing> enumerate_rings(long rank, long nmax,
                                               const std::vector<long>& duality) {
    if (rank < 1 || rank > 6 || nmax < 0 || nmax > 6)
        throw std::invalid_argument("enumerate_rings: rank <= 6 and nmax <= 6 required");
    if ((long)duality.size() != rank || duality[0] != 0)
        throw std::invalid_argument("enumerate_rings: bad duality");
    for (long a = 0; a < rank; ++a)
        if (duality[duality[a]] != a) throw std::invalid_argument("enumerate_rings: not involutive");

    FusionRing base = FusionRing::empty(rank, duality);
    for (long b = 0; b < rank; ++b) base.N(0, b, b) = base.N(b, 0, b) = 1;
    for (long a = 0; a < rank; ++a) base.N(a, duality[a], 0) = 1;
    // N(0, b, 0) handled above: N(0,0,0)=1 etc.

    // free orbit structure over triples with all indices nonzero, c possibly 0
    // handled by the duality pairing; orbits close under the tensor symmetries
    auto dual = [&](long x) { return duality[x]; };
    std::map<std::tuple<long, long, long>, long> orbit_of;
    std::vector<std::vector<std::tuple<long, long, long>>> orbits;
    for (long a = 1; a < rank; ++a)
        for (long b = 1; b < rank; ++b)
            for (long c = 1; c < rank; ++c) {
                if (orbit_of.count({a, b, c})) continue;
                std::vector<std::tuple<long, long, long>> orb{{a, b, c}};
                orbit_of[{a, b, c}] = (long)orbits.size();
                for (size_t i = 0; i < orb.size(); ++i) {
                    auto [x, y, z] = orb[i];
                    for (auto t : {std::tuple<long, long, long>{y, x, z},
                                   std::tuple<long, long, long>{x, dual(z), dual(y)},
                                   std::tuple<long, long, long>{dual(x), dual(y), dual(z)}}) {
                        if (!orbit_of.count(t)) {
                            orbit_of[t] = (long)orbits.size();
                            orb.push_back(t);
                        }
                    }
                }
                orbits.push_back(std::move(orb));
            }

    std::vector<FusionRing> out;
    std::vector<long> val(orbits.size(), 0);
    while (true) {
        FusionRing cand = base;
        for (size_t o = 0; o < orbits.size(); ++o)
            for (auto& [a, b, c] : orbits[o]) cand.N(a, b, c) = val[o];
        if (verify_fusion_axioms(cand).ok() && canonical_form(cand) == cand) out.push_back(cand);
        size_t i = 0;
        for (; i < orbits.size(); ++i) {
            if (++val[i] <= nmax) break;
            val[i] = 0;
        }
        if (i == orbits.size()) break;
    }
    return out;
}

struct StructureProbes {
    bool pointed = false;
    std::set<long> adjoint_sublabels;
    bool z2_graded = false;
    std::vector<std::set<long>> symmetric_subcategory_candidates;
};

// fusion closure of a label set
inline std::set<long> fusion_closure(const FusionRing& r, std::set<long> s) {
    s.insert(0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<long> cur(s.begin(), s.end());
        for (long a : cur)
            for (long b : cur)
                for (long c = 0; c < r.rank; ++c)
                    if (r.N(a, b, c) > 0 && !s.count(c)) {
                        s.insert(c);
                        grew = true;
                    }
    }
    return s;
}

// induced ring on a fusion-closed sublabel set containing 0
inline FusionRing subring(const FusionRing& r, const std::set<long>& labels) {
    std::vector<long> order(labels.begin(), labels.end());
    long m = (long)order.size();
    std::vector<long> pos(r.rank, -1);
    for (long i = 0; i < m; ++i) pos[order[i]] = i;
    std::vector<long> dual(m);
    for (long i = 0; i < m; ++i) dual[i] = pos[r.duality[order[i]]];
    FusionRing s = FusionRing::empty(m, dual);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            for (long k = 0; k < m; ++k) s.N(i, j, k) = r.N(order[i], order[j], order[k]);
    return s;
}

namespace detail {

inline FusionRing group_ring_z(long n) {
    // cyclic group ring Z/n with duality a* = -a
    std::vector<long> dual(n);
    for (long a = 0; a < n; ++a) dual[a] = (n - a) % n;
    FusionRing r = FusionRing::empty(n, dual);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) r.N(a, b, (a + b) % n) = 1;
    return r;
}

inline FusionRing rep_s3_ring() {
    // labels: 0 triv, 1 sign, 2 the 2-dim rep
    FusionRing r = FusionRing::empty(3, {0, 1, 2});
    for (long a = 0; a < 3; ++a) r.N(0, a, a) = r.N(a, 0, a) = 1;
    r.N(1, 1, 0) = 1;
    r.N(1, 2, 2) = r.N(2, 1, 2) = 1;
    r.N(2, 2, 0) = r.N(2, 2, 1) = r.N(2, 2, 2) = 1;
    return r;
}

}  // namespace detail

inline StructureProbes structure_probes(const FusionRing& r) {
    StructureProbes out;
    long n = r.rank;
    // invertible labels: a x a* contains only the unit
    out.pointed = true;
    for (long a = 0; a < n && out.pointed; ++a)
        for (long c = 1; c < n; ++c)
            if (r.N(a, r.duality[a], c) != 0) out.pointed = false;
    // adjoint sublabels: closure of all a x a*
    std::set<long> adj{0};
    for (long a = 0; a < n; ++a)
        for (long c = 0; c < n; ++c)
            if (r.N(a, r.duality[a], c) > 0) adj.insert(c);
    out.adjoint_sublabels = fusion_closure(r, adj);
    // Z2 grading: a partition {L0 containing 0, L1 nonempty} with graded fusion
    for (long mask = 1; mask < (1 << (n - 1)) && !out.z2_graded; ++mask) {
        std::vector<int> g(n, 0);
        for (long a = 1; a < n; ++a) g[a] = (mask >> (a - 1)) & 1;
        bool ok = true;
        for (long a = 0; a < n && ok; ++a)
            for (long b = 0; b < n && ok; ++b)
                for (long c = 0; c < n && ok; ++c)
                    if (r.N(a, b, c) != 0 && (g[a] ^ g[b]) != g[c]) ok = false;
        if (ok) out.z2_graded = true;
    }
    // fusion-closed sublabel sets matching Rep(Z2), Rep(Z3), Rep(S3) rings
    std::vector<FusionRing> targets = {canonical_form(detail::group_ring_z(2)),
                                       canonical_form(detail::group_ring_z(3)),
                                       canonical_form(detail::rep_s3_ring())};
    for (long mask = 1; mask < (1 << (n - 1)); ++mask) {
        std::set<long> s{0};
        for (long a = 1; a < n; ++a)
            if ((mask >> (a - 1)) & 1) s.insert(a);
        if (fusion_closure(r, s) != s) continue;
        FusionRing sub = subring(r, s);
        bool dual_closed = true;
        for (long a : s)
            if (!s.count(r.duality[a])) dual_closed = false;
        if (!dual_closed) continue;
        FusionRing canon = canonical_form(sub);
        for (auto& t : targets)
            if (canon == t) {
                out.symmetric_subcategory_candidates.push_back(s);
                break;
            }
    }
    return out;
}

}  // namespace premod
