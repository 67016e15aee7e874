#pragma once

#include <utility>
#include <vector>

#include "christol/prep.hpp"

namespace christol {

// Lambda_{i,j} on polynomials: the term (n,m) survives iff n = i and m = j
// mod q, and moves to ((n-i)/q, (m-j)/q).
inline BPoly cartier2_poly(const BPoly& B, std::uint32_t i, std::uint32_t j) {
    const int q = static_cast<int>(B.field().q());
    require(i < static_cast<std::uint32_t>(q) && j < static_cast<std::uint32_t>(q),
            errc::digit_out_of_range, "digits must be < q");
    BPoly r(B.field());
    for (const auto& [nm, c] : B.terms()) {
        if (nm.first % q != static_cast<int>(i) || nm.second % q != static_cast<int>(j))
            continue;
        r.add_term((nm.first - static_cast<int>(i)) / q,
                   (nm.second - static_cast<int>(j)) / q, c);
    }
    return r;
}

// Exact symbolic kernel element: represents the series T(x) + diag(N / D)
// with D fixed by the Preparation. Equality is syntactic (canonical
// polynomial forms), so distinct pairs may denote equal series; Moore
// minimization downstream removes that slack.
struct KernelState {
    UPoly T;
    BPoly N;

    friend bool operator==(const KernelState& a, const KernelState& b) {
        return a.T == b.T && a.N == b.N;
    }
    friend bool operator<(const KernelState& a, const KernelState& b) {
        if (a.T < b.T) return true;
        if (b.T < a.T) return false;
        return a.N < b.N;
    }
};

// T = V_r, N = (xy)^r N0: the x^r shift of the residual diagonal is
// absorbed into the numerator through x diag(u) = diag(xy u).
inline KernelState initial_state(const Preparation& prep) {
    return KernelState{prep.V, prep.N0.shifted(prep.r, prep.r)};
}

// constant coefficient of the represented series
inline Fq state_output(const KernelState& st, const Preparation& prep) {
    const FieldCtx& F = prep.field();
    Fq diag0 = F.div(st.N.coeff(0, 0), prep.D.coeff(0, 0));
    return F.add(st.T.coeff(0), diag0);
}

// Lambda_digit on the represented series: polynomial part via the
// one-dimensional operator, diagonal part via
// Lambda_d(diag(N/D)) = diag(Lambda_{d,d}(N D^{q-1}) / D).
inline KernelState transition(const KernelState& st, std::uint32_t digit,
                              const Preparation& prep) {
    return KernelState{st.T.cartier(digit),
                       cartier2_poly(st.N * prep.Dq1, digit, digit)};
}

// all q successors off a single shared product N * D^{q-1}
inline std::vector<KernelState> transition_all(const KernelState& st,
                                               const Preparation& prep) {
    const std::uint32_t q = prep.field().q();
    BPoly prod = st.N * prep.Dq1;
    std::vector<KernelState> out;
    out.reserve(q);
    for (std::uint32_t digit = 0; digit < q; ++digit)
        out.push_back(KernelState{st.T.cartier(digit), cartier2_poly(prod, digit, digit)});
    return out;
}

// dense coefficient vector of a state: T-part (r+1 slots) then the
// numerator grid ((x_cap+1) x (y_cap+1) slots)
inline std::vector<Fq> flatten_state(const KernelState& st, const Preparation& prep) {
    const std::size_t t_slots = static_cast<std::size_t>(prep.r) + 1;
    const std::size_t ny = static_cast<std::size_t>(prep.y_cap) + 1;
    std::vector<Fq> v(t_slots + (static_cast<std::size_t>(prep.x_cap) + 1) * ny);
    require(st.T.degree() <= prep.r, errc::invariant_breach,
            "state polynomial part exceeds degree r");
    require(st.N.is_zero() ||
                (st.N.deg_x() <= prep.x_cap && st.N.deg_y() <= prep.y_cap),
            errc::invariant_breach, "state numerator exceeds the degree fixpoint");
    for (int n = 0; n <= st.T.degree(); ++n) v[n] = st.T.coeff(n);
    for (const auto& [ij, c] : st.N.terms())
        v[t_slots + static_cast<std::size_t>(ij.first) * ny + ij.second] = c;
    return v;
}

// Incremental span of F_q vectors with coordinates relative to the chosen
// basis vectors (Gaussian elimination with bookkeeping rows).
class FqSpan {
public:
    explicit FqSpan(const FieldCtx& F) : F_(&F) {}

    int dim() const { return static_cast<int>(rows_.size()); }

    // add v to the span if independent; returns (was_new, coordinates of v
    // in the chosen basis)
    std::pair<bool, std::vector<Fq>> insert(const std::vector<Fq>& v) {
        auto [rem, alpha] = reduce(v);
        int piv = first_nonzero(rem);
        if (piv < 0) return {false, combine(alpha)};
        const FieldCtx& F = *F_;
        Fq scale = F.inv(rem[piv]);
        for (auto& x : rem) x = F.mul(x, scale);
        std::vector<Fq> combo(rows_.size() + 1);
        combo.back() = scale;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Fq t = F.mul(scale, alpha[k]);
            if (t.is_zero()) continue;
            for (std::size_t c = 0; c < bookkeeping_[k].size(); ++c)
                combo[c] = F.sub(combo[c], F.mul(t, bookkeeping_[k][c]));
        }
        rows_.push_back(std::move(rem));
        pivots_.push_back(piv);
        bookkeeping_.push_back(std::move(combo));
        std::vector<Fq> coords(rows_.size());
        coords.back() = F.one();
        return {true, std::move(coords)};
    }

    // coordinates of a vector already known to lie in the span
    std::vector<Fq> coords_of(const std::vector<Fq>& v) const {
        auto [rem, alpha] = reduce(v);
        require(first_nonzero(rem) < 0, errc::invariant_breach,
                "vector escapes the orbit span");
        return combine(alpha);
    }

private:
    std::pair<std::vector<Fq>, std::vector<Fq>> reduce(std::vector<Fq> w) const {
        const FieldCtx& F = *F_;
        std::vector<Fq> alpha(rows_.size());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Fq a = w[pivots_[k]];
            alpha[k] = a;
            if (a.is_zero()) continue;
            const auto& row = rows_[k];
            for (std::size_t c = 0; c < w.size(); ++c)
                w[c] = F.sub(w[c], F.mul(a, row[c]));
        }
        return {std::move(w), std::move(alpha)};
    }

    std::vector<Fq> combine(const std::vector<Fq>& alpha) const {
        const FieldCtx& F = *F_;
        std::vector<Fq> coords(rows_.size());
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k].is_zero()) continue;
            for (std::size_t c = 0; c < bookkeeping_[k].size(); ++c)
                coords[c] = F.add(coords[c], F.mul(alpha[k], bookkeeping_[k][c]));
        }
        return coords;
    }

    static int first_nonzero(const std::vector<Fq>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) return static_cast<int>(i);
        return -1;
    }

    const FieldCtx* F_;
    std::vector<std::vector<Fq>> rows_;      // echelon rows, pivot-normalized
    std::vector<int> pivots_;
    std::vector<std::vector<Fq>> bookkeeping_; // row k as a combination of basis vectors
};

// Basis of the linear span of the states plus exact coordinates for each;
// transitions are linear in these coordinates.
struct StateSpan {
    FqSpan span;
    std::vector<int> basis_states;            // indices into the input list
    std::vector<std::vector<Fq>> coords;      // per input state, length dim

    int dim() const { return span.dim(); }
};

inline StateSpan state_vectorize(const std::vector<KernelState>& states,
                                 const Preparation& prep) {
    require(!states.empty(), errc::invariant_breach, "state list must be nonempty");
    StateSpan out{FqSpan(prep.field()), {}, {}};
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [fresh, coords] = out.span.insert(flatten_state(states[i], prep));
        if (fresh) out.basis_states.push_back(static_cast<int>(i));
        out.coords.push_back(std::move(coords));
    }
    // earlier states have shorter coordinate vectors; pad to the final dim
    for (auto& c : out.coords) c.resize(out.span.dim());
    return out;
}

} // namespace christol
