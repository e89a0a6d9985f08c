#pragma once

#include "fusion_ring.hpp"

namespace premod {

using CMat = std::vector<std::vector<Cyclotomic>>;

struct DatumError : std::runtime_error {
    explicit DatumError(const std::string& what) : std::runtime_error(what) {}
};

// Premodular datum: fusion ring, ribbon twists, dimensions, normalized
// S-matrix with s_00 = 1 and first row equal to the dimension vector.
struct PremodularDatum {
    FusionRing ring;
    std::vector<RootOfUnity> twists;  // theta_a, theta_0 = 1
    std::vector<Cyclotomic> dims;     // d_a, d_0 = 1
    CMat smatrix;

    long rank() const { return ring.rank; }
    Cyclotomic theta(long a) const { return twists[a].value(); }
    Cyclotomic global_dim_sq() const {  // D^2 = sum d_a^2
        Cyclotomic t;
        for (auto& d : dims) t = t + d * d;
        return t;
    }
};

namespace detail {

inline CMat cmat_mul(const CMat& a, const CMat& b) {
    long n = (long)a.size();
    CMat r(n, std::vector<Cyclotomic>(n));
    for (long i = 0; i < n; ++i)
        for (long k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (long j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

inline CMat cmat_scale(const CMat& a, const Cyclotomic& s) {
    CMat r = a;
    for (auto& row : r)
        for (auto& x : row) x = x * s;
    return r;
}

// exact determinant by Gaussian elimination over the cyclotomic field
inline Cyclotomic cmat_det(CMat a) {
    long n = (long)a.size();
    Cyclotomic det(1);
    for (long col = 0; col < n; ++col) {
        long p = -1;
        for (long i = col; i < n; ++i)
            if (!a[i][col].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return Cyclotomic();
        if (p != col) {
            std::swap(a[p], a[col]);
            det = -det;
        }
        det = det * a[col][col];
        Cyclotomic inv = a[col][col].inverse();
        for (long i = col + 1; i < n; ++i) {
            if (a[i][col].is_zero()) continue;
            Cyclotomic f = a[i][col] * inv;
            for (long j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[col][j];
        }
    }
    return det;
}

}  // namespace detail

// S-matrix from the balancing relation:
//   s_ab = theta_a^-1 theta_b^-1 sum_c N_{a* b}^c theta_c d_c
inline PremodularDatum s_from_balancing(const FusionRing& ring,
                                        const std::vector<RootOfUnity>& twists,
                                        const std::vector<Cyclotomic>& dims) {
    long n = ring.rank;
    if ((long)twists.size() != n || (long)dims.size() != n)
        throw DatumError("balancing: twists/dims length mismatch");
    if (twists[0].value() != Cyclotomic(1)) throw DatumError("balancing: theta_0 != 1");
    if (dims[0] != Cyclotomic(1)) throw DatumError("balancing: d_0 != 1");
    for (long a = 0; a < n; ++a) {
        if (twists[ring.duality[a]].value() != twists[a].value())
            throw DatumError("balancing: theta not duality-invariant at label " + std::to_string(a));
        if (dims[ring.duality[a]] != dims[a])
            throw DatumError("balancing: dims not duality-invariant at label " + std::to_string(a));
    }
    PremodularDatum d;
    d.ring = ring;
    d.twists = twists;
    d.dims = dims;
    d.smatrix.assign(n, std::vector<Cyclotomic>(n));
    for (long a = 0; a < n; ++a) {
        Cyclotomic ita = d.theta(a).inverse();
        for (long b = 0; b < n; ++b) {
            Cyclotomic acc;
            for (long c = 0; c < n; ++c) {
                long m = ring.N(ring.duality[a], b, c);
                if (m) acc = acc + Cyclotomic(m) * d.theta(c) * dims[c];
            }
            d.smatrix[a][b] = ita * d.theta(b).inverse() * acc;
        }
    }
    for (long a = 0; a < n; ++a)
        if (d.smatrix[0][a] != dims[a])
            throw DatumError("balancing inconsistency: s_0a != d_a at label " + std::to_string(a));
    return d;
}

inline std::pair<Cyclotomic, Cyclotomic> gauss_sums(const PremodularDatum& d) {
    Cyclotomic p, m;
    for (long a = 0; a < d.rank(); ++a) {
        Cyclotomic sq = d.dims[a] * d.dims[a];
        p = p + d.theta(a) * sq;
        m = m + d.theta(a).inverse() * sq;
    }
    return {p, m};
}

struct IdentityResult {
    std::string key;
    bool passed = true;
    std::vector<std::string> failures;  // indices of failing entries
};

struct DatumVerdict {
    std::vector<IdentityResult> results;
    bool ok() const {
        for (auto& r : results)
            if (!r.passed) return false;
        return true;
    }
    const IdentityResult* find(const std::string& key) const {
        for (auto& r : results)
            if (r.key == key) return &r;
        return nullptr;
    }
};

inline DatumVerdict verify_datum(const PremodularDatum& d) {
    long n = d.rank();
    DatumVerdict v;
    auto idx2 = [](long a, long b) {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    };

    IdentityResult inv{"invariants"};
    auto bad = [&](IdentityResult& r, const std::string& s) {
        r.passed = false;
        r.failures.push_back(s);
    };
    if ((long)d.twists.size() != n || (long)d.dims.size() != n || (long)d.smatrix.size() != n)
        throw DatumError("verify: shape mismatch");
    if (d.theta(0) != Cyclotomic(1)) bad(inv, "theta_0 != 1");
    if (d.dims[0] != Cyclotomic(1)) bad(inv, "d_0 != 1");
    for (long a = 0; a < n; ++a) {
        long as = d.ring.duality[a];
        if (d.theta(as) != d.theta(a)) bad(inv, "theta_dual at " + std::to_string(a));
        if (d.dims[as] != d.dims[a]) bad(inv, "d_dual at " + std::to_string(a));
        if (d.smatrix[0][a] != d.dims[a]) bad(inv, "s_0a != d_a at " + std::to_string(a));
        for (long b = 0; b < n; ++b) {
            if (d.smatrix[a][b] != d.smatrix[b][a]) bad(inv, "s not symmetric at " + idx2(a, b));
            if (d.smatrix[a][b].conj() != d.smatrix[as][b])
                bad(inv, "conj(s_ab) != s_{a*b} at " + idx2(a, b));
            if (d.smatrix[a][b] != d.smatrix[as][d.ring.duality[b]])
                bad(inv, "s_ab != s_{a*b*} at " + idx2(a, b));
        }
    }
    v.results.push_back(std::move(inv));

    // (i) s_ab s_ac = d_a sum_l N_bc^l s_al
    IdentityResult pv{"preverlinde"};
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long c = b; c < n; ++c) {
                Cyclotomic rhs;
                for (long l = 0; l < n; ++l) {
                    long m = d.ring.N(b, c, l);
                    if (m) rhs = rhs + Cyclotomic(m) * d.smatrix[a][l];
                }
                if (d.smatrix[a][b] * d.smatrix[a][c] != d.dims[a] * rhs)
                    bad(pv, idx2(a, b) + "x" + std::to_string(c));
            }
    v.results.push_back(std::move(pv));

    // (ii) (ST)^3 = p+ S^2 and (iii) (S T^-1)^3 = p- S^2 C
    auto [pp, pm] = gauss_sums(d);
    CMat st(n, std::vector<Cyclotomic>(n)), sti(n, std::vector<Cyclotomic>(n));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            st[a][b] = d.smatrix[a][b] * d.theta(b);
            sti[a][b] = d.smatrix[a][b] * d.theta(b).inverse();
        }
    CMat s2 = detail::cmat_mul(d.smatrix, d.smatrix);
    CMat lhs2 = detail::cmat_mul(detail::cmat_mul(st, st), st);
    CMat rhs2 = detail::cmat_scale(s2, pp);
    IdentityResult stc{"st-cubed"};
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            if (lhs2[a][b] != rhs2[a][b]) bad(stc, idx2(a, b));
    v.results.push_back(std::move(stc));

    CMat lhs3 = detail::cmat_mul(detail::cmat_mul(sti, sti), sti);
    CMat s2c(n, std::vector<Cyclotomic>(n));
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) s2c[a][b] = s2[a][d.ring.duality[b]] * pm;
    IdentityResult stic{"st-inv-cubed"};
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            if (lhs3[a][b] != s2c[a][b]) bad(stic, idx2(a, b));
    v.results.push_back(std::move(stic));

    // (v) modular (det S != 0): S S^dagger = D^2 Id and p+ p- = D^2
    if (!detail::cmat_det(d.smatrix).is_zero()) {
        IdentityResult mod{"modular"};
        Cyclotomic d2 = d.global_dim_sq();
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) {
                Cyclotomic acc;
                for (long c = 0; c < n; ++c) acc = acc + d.smatrix[a][c] * d.smatrix[b][c].conj();
                if (acc != (a == b ? d2 : Cyclotomic())) bad(mod, "ssdagger at " + idx2(a, b));
            }
        if (pp * pm != d2) bad(mod, "p+ p- != D^2");
        v.results.push_back(std::move(mod));
    }
    return v;
}

enum class Degeneracy { Symmetric, ProperlyPremodular, Modular };

struct DegeneracyClass {
    Degeneracy tag;
    std::set<long> transparent_labels;
};

// Transparent labels (s_ab = d_a d_b for all a) with the trichotomy tag.
// Enforces theta = +-1 and integer dimension on the transparent part.
inline DegeneracyClass mueger_center(const PremodularDatum& d) {
    long n = d.rank();
    DegeneracyClass out;
    for (long b = 0; b < n; ++b) {
        bool transparent = true;
        for (long a = 0; a < n && transparent; ++a)
            if (d.smatrix[a][b] != d.dims[a] * d.dims[b]) transparent = false;
        if (!transparent) continue;
        Cyclotomic th = d.theta(b);
        if (th != Cyclotomic(1) && th != Cyclotomic(-1))
            throw DatumError("transparent label " + std::to_string(b) + " has theta != +-1");
        if (!d.dims[b].is_rational_integer())
            throw DatumError("transparent label " + std::to_string(b) + " has non-integer dim");
        out.transparent_labels.insert(b);
    }
    if (out.transparent_labels == std::set<long>{0})
        out.tag = Degeneracy::Modular;  // rank 1 counts as modular (det S = 1)
    else if ((long)out.transparent_labels.size() == n)
        out.tag = Degeneracy::Symmetric;
    else
        out.tag = Degeneracy::ProperlyPremodular;
    return out;
}

struct GaloisAction {
    long k = 1;                // field automorphism zeta -> zeta^k
    std::vector<long> perm;    // sigma on labels
    std::vector<int> signs;    // epsilon_{a,sigma} indexed by label a
};

struct GaloisReport {
    std::vector<GaloisAction> actions;  // one chosen action per automorphism
    std::vector<long> ambiguous_k;      // automorphisms with more than one fitting sigma
    std::string group_tag;              // structure of the permutation group generated
};

namespace detail {

inline std::string perm_group_tag(const std::vector<std::vector<long>>& gens, long n) {
    // closure by repeated multiplication; groups here are tiny and abelian
    std::set<std::vector<long>> g;
    std::vector<long> id(n);
    for (long i = 0; i < n; ++i) id[i] = i;
    g.insert(id);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<long>> cur(g.begin(), g.end());
        for (auto& a : cur)
            for (auto& b : gens) {
                std::vector<long> c(n);
                for (long i = 0; i < n; ++i) c[i] = a[b[i]];
                if (g.insert(c).second) grew = true;
            }
    }
    long ord = (long)g.size();
    long exponent = 1;
    for (auto& p : g) {
        long e = 1;
        std::vector<long> q = p;
        while (q != id) {
            std::vector<long> r(n);
            for (long i = 0; i < n; ++i) r[i] = p[q[i]];
            q = r;
            ++e;
        }
        exponent = llcm(exponent, e);
    }
    if (ord == 1) return "trivial";
    if (ord == exponent) return "Z" + std::to_string(ord);
    return "order " + std::to_string(ord) + " exponent " + std::to_string(exponent);
}

}  // namespace detail

// Galois action on the S-matrix: for each automorphism zeta -> zeta^k of the
// field generated by the datum, find (sigma, epsilon) with
//   sigma_k(s_bc) = (1/d_{sigma(0)}) eps_{sigma(c)} s_{b,sigma(c)}.
inline GaloisReport galois_action(const PremodularDatum& d) {
    long n = d.rank();
    long N = 1;
    for (auto& row : d.smatrix)
        for (auto& x : row) N = llcm(N, x.conductor());
    for (auto& x : d.dims) N = llcm(N, x.conductor());
    GaloisReport out;
    std::vector<std::vector<long>> gens;
    for (long k = 1; k < N || (N == 1 && k == 1); ++k) {
        if (lgcd(k, N) != 1) continue;
        CMat sk(n, std::vector<Cyclotomic>(n));
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) sk[a][b] = d.smatrix[a][b].galois_apply(k);
        // try every permutation sigma; for each, signs must be column-consistent
        std::vector<GaloisAction> fits;
        std::vector<long> sigma(n);
        for (long i = 0; i < n; ++i) sigma[i] = i;
        do {
            Cyclotomic dsig0 = d.dims[sigma[0]];
            if (dsig0.is_zero()) continue;
            std::vector<int> eps(n, 0);
            bool ok = true;
            for (long c = 0; c < n && ok; ++c) {
                int sign = 0;  // epsilon_{sigma(c)}
                for (long b = 0; b < n && ok; ++b) {
                    Cyclotomic lhs = sk[b][c] * dsig0;
                    const Cyclotomic& rhs = d.smatrix[b][sigma[c]];
                    if (lhs.is_zero() && rhs.is_zero()) continue;
                    if (lhs == rhs) {
                        if (sign == -1) ok = false;
                        sign = 1;
                    } else if (lhs == -rhs) {
                        if (sign == 1) ok = false;
                        sign = -1;
                    } else
                        ok = false;
                }
                eps[sigma[c]] = sign == 0 ? 1 : sign;  // zero column: undetermined, pick +1
            }
            if (!ok) continue;
            // sign-fixing lemma: eps_{sigma(0)} = 1 when sigma moves 0
            if (sigma[0] != 0 && eps[sigma[0]] != 1) continue;
            fits.push_back({k, sigma, eps});
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        if (fits.empty())
            throw DatumError("galois_action: no (sigma, eps) for k = " + std::to_string(k));
        if (fits.size() > 1) out.ambiguous_k.push_back(k);
        out.actions.push_back(fits.front());
        gens.push_back(fits.front().perm);
    }
    out.group_tag = detail::perm_group_tag(gens, n);
    return out;
}

// Deligne product: labels (a,b), all data multiply componentwise.
inline PremodularDatum deligne_product(const PremodularDatum& x, const PremodularDatum& y) {
    long nx = x.rank(), ny = y.rank(), n = nx * ny;
    auto id = [&](long a, long b) { return a * ny + b; };
    PremodularDatum d;
    std::vector<long> dual(n);
    for (long a = 0; a < nx; ++a)
        for (long b = 0; b < ny; ++b) dual[id(a, b)] = id(x.ring.duality[a], y.ring.duality[b]);
    d.ring = FusionRing::empty(n, dual);
    for (long a = 0; a < nx; ++a)
        for (long b = 0; b < nx; ++b)
            for (long c = 0; c < nx; ++c)
                for (long e = 0; e < ny; ++e)
                    for (long f = 0; f < ny; ++f)
                        for (long g = 0; g < ny; ++g)
                            d.ring.N(id(a, e), id(b, f), id(c, g)) = x.ring.N(a, b, c) * y.ring.N(e, f, g);
    d.twists.resize(n);
    d.dims.resize(n);
    d.smatrix.assign(n, std::vector<Cyclotomic>(n));
    for (long a = 0; a < nx; ++a)
        for (long b = 0; b < ny; ++b) {
            long o = x.twists[a].order, p = y.twists[b].order;
            long l = llcm(o, p);
            d.twists[id(a, b)] =
                RootOfUnity::make(l, mod_floor(x.twists[a].exp * (l / o) + y.twists[b].exp * (l / p), l));
            d.dims[id(a, b)] = x.dims[a] * y.dims[b];
        }
    for (long a = 0; a < nx; ++a)
        for (long b = 0; b < ny; ++b)
            for (long c = 0; c < nx; ++c)
                for (long e = 0; e < ny; ++e)
                    d.smatrix[id(a, b)][id(c, e)] = x.smatrix[a][c] * y.smatrix[b][e];
    return d;
}

enum class Tristate { True, False, Undecided };

// true iff every d_a equals the FP dimension of label a
inline Tristate is_pseudo_unitary(const PremodularDatum& d) {
    FPDimData fd = fpdim(d.ring);
    bool undecided = false;
    for (long a = 0; a < d.rank(); ++a) {
        if (fd.dims[a].exact) {
            if (d.dims[a] != *fd.dims[a].exact) return Tristate::False;
            continue;
        }
        // rigorous separation: d_a real and inside the isolating interval, or not
        if (!d.dims[a].is_real()) return Tristate::False;
        try {
            Cyclotomic lo = d.dims[a] - Cyclotomic(fd.dims[a].interval.first);
            Cyclotomic hi = d.dims[a] - Cyclotomic(fd.dims[a].interval.second);
            if (lo.sign_real() < 0 || hi.sign_real() > 0) return Tristate::False;
            // d_a lies in the isolating interval but has no exact witness to compare
            undecided = true;
        } catch (const UndecidedSign&) {
            undecided = true;
        }
    }
    return undecided ? Tristate::Undecided : Tristate::True;
}

}  // namespace premod
