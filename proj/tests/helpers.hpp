#pragma once

// shared helpers for the unit and acceptance suites

#include <initializer_list>
#include <vector>

#include "christol/christol.hpp"

namespace christol::testing {

inline std::vector<Fq> fq_list(const FieldCtx& F, std::initializer_list<int> v) {
    std::vector<Fq> out;
    for (int x : v) out.push_back(F.from_int(x));
    return out;
}

// stable field contexts; polynomials keep pointers into these
inline const FieldCtx& field_q(std::uint32_t q) {
    static FieldCtx f2 = make_field(2, 1);
    static FieldCtx f3 = make_field(3, 1);
    static FieldCtx f4 = make_field(2, 2);
    static FieldCtx f5 = make_field(5, 1);
    switch (q) {
    case 2: return f2;
    case 3: return f3;
    case 4: return f4;
    case 5: return f5;
    default: raise(errc::field_too_large, "no cached field for this q");
    }
}

// truncation of the series represented by a kernel state, through the same
// diagonal route the proofs use: T + diag(N / D)
inline TruncSeries state_series(const KernelState& st, const Preparation& prep, int L) {
    TruncSeries diag = diagonal(rational_expand(st.N, prep.D, 2 * L));
    const FieldCtx& F = prep.field();
    std::vector<Fq> c(L);
    for (int n = 0; n < L; ++n) c[n] = F.add(st.T.coeff(n), diag.coeff(n));
    return TruncSeries(F, std::move(c));
}

// the worked instances used across the suites
struct Worked {
    const FieldCtx& F;
    BPoly P;
    std::vector<Fq> prefix;
};

inline Worked worked_quadratic() { // y^2+y+x over F_2, root x + x^2 + x^4 + ...
    const FieldCtx& F = field_q(2);
    return Worked{F, parse_bpoly(F, "y^2+y+x"), fq_list(F, {0})};
}

inline Worked worked_thue_morse() { // (1+x)^3 y^2 + (1+x)^2 y + x over F_2
    const FieldCtx& F = field_q(2);
    return Worked{F, parse_bpoly(F, "y^2+x*y^2+x^2*y^2+x^3*y^2+y+x^2*y+x"),
                  fq_list(F, {0})};
}

inline Worked worked_rational() { // (1+x) y + x over F_2, root x/(1+x)
    const FieldCtx& F = field_q(2);
    return Worked{F, parse_bpoly(F, "y+x*y+x"), fq_list(F, {0})};
}

inline Worked worked_shifted() { // y^2 + x y + x^3 over F_2, the r=2 path
    const FieldCtx& F = field_q(2);
    return Worked{F, parse_bpoly(F, "y^2+x*y+x^3"), fq_list(F, {0, 0, 1})};
}

inline Worked worked_sqrt3() { // y^2 - (1+x) over F_3, nonzero constant term
    const FieldCtx& F = field_q(3);
    return Worked{F, parse_bpoly(F, "y^2-1-x"), fq_list(F, {1})};
}

} // namespace christol::testing
