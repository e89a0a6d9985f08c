#pragma once

#include "datum.hpp"

namespace premod {

struct IndicatorReport {
    long label = 0;
    bool self_dual = false;
    Cyclotomic first_sum;
    bool integral = false;  // meaningful for self-dual labels
};

// First sum of the 2nd Frobenius-Schur indicator:
//   (1/D^2) sum_{b,c} N_bc^a d_b d_c (theta_b / theta_c)^2
inline Cyclotomic fs_second_sum(const PremodularDatum& d, long a) {
    long n = d.rank();
    Cyclotomic acc;
    for (long b = 0; b < n; ++b) {
        Cyclotomic tb2 = d.theta(b).pow(2);
        for (long c = 0; c < n; ++c) {
            long m = d.ring.N(b, c, a);
            if (!m) continue;
            acc = acc + Cyclotomic(m) * d.dims[b] * d.dims[c] * tb2 * d.theta(c).pow(-2);
        }
    }
    return acc * d.global_dim_sq().inverse();
}

struct IndicatorVerdict {
    std::vector<IndicatorReport> reports;
    bool pass = true;
};

// Reality is required for every label; integrality only for self-dual ones.
inline IndicatorVerdict fs_integrality_filter(const PremodularDatum& d) {
    IndicatorVerdict out;
    for (long a = 0; a < d.rank(); ++a) {
        IndicatorReport r;
        r.label = a;
        r.self_dual = d.ring.duality[a] == a;
        r.first_sum = fs_second_sum(d, a);
        if (!r.first_sum.is_real()) out.pass = false;
        r.integral = r.first_sum.is_rational_integer();
        if (r.self_dual && !r.integral) out.pass = false;
        out.reports.push_back(std::move(r));
    }
    return out;
}

// d_a in Z[zeta_2N] for N = lcm of twist orders: conductor containment plus
// integer coordinates in the integral tensor basis.
inline bool cyclotomic_dim_check(const PremodularDatum& d) {
    long N = 1;
    for (auto& t : d.twists) N = llcm(N, t.order);
    long M = 2 * N;
    if (M % 4 == 2) M /= 2;
    for (auto& x : d.dims) {
        long c = x.conductor();
        if (M % c != 0) return false;
        for (auto& [e, q] : x.terms())
            if (q.get_den() != 1) return false;
    }
    return true;
}

}  // namespace premod
