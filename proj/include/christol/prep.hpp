#pragma once

#include <vector>

#include "christol/bounds.hpp"
#include "christol/series.hpp"

namespace christol {

// Separability-gated input data: the polynomial with its bidegree.
struct MinimalData {
    BPoly P;
    int d; // deg_y
    int h; // deg_x
    UPoly res; // resultant_y(P, dP/dy), cached by the gate
};

// d = deg_y, h = deg_x; rejects y-constant and inseparable inputs.
inline MinimalData degree_height(const BPoly& P) {
    require(!P.is_zero() && P.deg_y() >= 1, errc::degree_zero,
            "polynomial must have y-degree >= 1");
    BPoly Py = dpdy(P);
    require(!Py.is_zero(), errc::not_separable,
            "dP/dy vanishes identically (P lies in F_q[x, y^p])");
    UPoly res = resultant_y(P, Py);
    require(!res.is_zero(), errc::not_separable,
            "P and dP/dy share a factor of positive y-degree");
    return MinimalData{P, P.deg_y(), std::max(P.deg_x(), 0), std::move(res)};
}

// r = order at 0 of resultant_y(P, dP/dy); bounded by h(2d-1) through the
// determinantal formula.
inline int resultant_order(const MinimalData& md) {
    int r = valuation(md.res);
    require(r <= md.h * (2 * md.d - 1), errc::invariant_breach,
            "resultant order exceeds the determinantal bound");
    return r;
}

// Complete Furstenberg data for one chosen root. The smooth case is r = 0
// with an empty shift; nothing is special-cased.
//
//   V_r     truncation a_0 + ... + a_r x^r of the root
//   M_r     V_r(x) + x^r y
//   Q_r     P(x, M_r), annihilates the residual series f^{(r)}
//   s       x-valuation of Q_r (equals nu + r, nu = ord dP/dy(x, V_r))
//   Qtilde  x^{-s} Q_r, smooth at the origin
//   D       y^{-1} Qtilde(xy, y), a unit denominator
//   N0      y * dQtilde/dy(xy, y), so that f^{(r)} = diag(N0 / D)
struct Preparation {
    BPoly P;
    int d = 0, h = 0;
    int r = 0;
    std::vector<Fq> prefix; // a_0..a_r
    UPoly V;
    BPoly M;
    BPoly Q;
    int s = 0;
    BPoly Qtilde;
    BPoly D;
    BPoly N0;
    BPoly Dq1; // D^{q-1}, shared by every transition
    int t0 = -1;        // floor(log_q r); -1 sentinel when r = 0
    bool smooth = false; // a_0 = 0 and dP/dy(0,0) != 0
    int x_cap = 0, y_cap = 0; // degree fixpoint caps for kernel numerators

    explicit Preparation(const FieldCtx& F)
        : P(F), V(F), M(F), Q(F), Qtilde(F), D(F), N0(F), Dq1(F) {}

    const FieldCtx& field() const { return P.field(); }
};

inline Preparation prepare(const MinimalData& md, const std::vector<Fq>& prefix) {
    const FieldCtx& F = md.P.field();
    const int r = resultant_order(md);
    require(static_cast<int>(prefix.size()) == r + 1, errc::invalid_prefix,
            "prefix must have length exactly r+1");

    UPoly V(F, std::vector<Fq>(prefix));
    {
        UPoly at_prefix = md.P.eval_y(V);
        require(at_prefix.is_zero() || at_prefix.valuation() >= r + 1,
                errc::invalid_prefix, "prefix is not a root prefix at depth r");
    }

    Preparation prep(F);
    prep.P = md.P;
    prep.d = md.d;
    prep.h = md.h;
    prep.r = r;
    prep.prefix = prefix;
    prep.V = V;
    prep.M = BPoly::from_x_poly(V) + BPoly::monomial(F, r, 1, F.one());
    prep.Q = substitute_y(md.P, prep.M);

    require(!prep.Q.is_zero(), errc::invariant_breach, "Q_r vanished");
    int s = prep.Q.terms().begin()->first.first;
    for (const auto& [ij, c] : prep.Q.terms()) s = std::min(s, ij.first);
    prep.s = s;
    prep.Qtilde = shift_out_x(prep.Q, s);

    // Constructive smoothness of the shifted polynomial: for genuine root
    // prefixes both conditions hold; failure means the prefix does not
    // extend to a power-series root.
    BPoly Qty = dpdy(prep.Qtilde);
    require(prep.Qtilde.coeff(0, 0).is_zero(), errc::smoothness_check_failed,
            "Qtilde(0,0) != 0 after the x^s shift");
    require(!Qty.coeff(0, 0).is_zero(), errc::smoothness_check_failed,
            "dQtilde/dy(0,0) = 0 after the x^s shift");

    prep.D = substitute_x_to_xy(prep.Qtilde).shifted(0, -1);
    prep.N0 = substitute_x_to_xy(Qty).shifted(0, 1);
    require(!prep.D.coeff(0, 0).is_zero(), errc::invariant_breach,
            "denominator is not a unit");
    prep.Dq1 = prep.D.pow(F.q() - 1);
    prep.t0 = t0_of(F.q(), r);
    prep.smooth = prefix[0].is_zero() && !dpdy(md.P).coeff(0, 0).is_zero();

    const int nx = prep.N0.is_zero() ? 0 : prep.N0.deg_x() + r;
    const int ny = prep.N0.is_zero() ? 0 : prep.N0.deg_y() + r;
    prep.x_cap = std::max(nx, std::max(prep.D.deg_x(), 0));
    prep.y_cap = std::max(ny, std::max(prep.D.deg_y(), 0));
    return prep;
}

// f^{(r)} = x^{-r} (f - V_r), at precision f.prec - r.
inline TruncSeries residual_series(const Preparation& prep, const TruncSeries& f) {
    const int r = prep.r;
    require(f.prec() > r, errc::prefix_mismatch,
            "series too short to strip the prefix");
    for (int n = 0; n <= r; ++n)
        require(f.coeff(n) == prep.prefix[n], errc::prefix_mismatch,
                "series does not extend the preparation prefix");
    std::vector<Fq> c(f.prec() - r);
    for (int n = 1; n < static_cast<int>(c.size()); ++n) c[n] = f.coeff(n + r);
    return TruncSeries(f.field(), std::move(c));
}

} // namespace christol
