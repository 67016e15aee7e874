#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "christol/poly.hpp"

namespace christol {

// Power series known to finite precision: coeffs[n] for n < prec, prec >= 1.
class TruncSeries {
public:
    TruncSeries(const FieldCtx& F, std::vector<Fq> coeffs) : F_(&F), c_(std::move(coeffs)) {
        require(!c_.empty(), errc::precision_exhausted, "series needs precision >= 1");
    }

    const FieldCtx& field() const { return *F_; }
    int prec() const { return static_cast<int>(c_.size()); }
    Fq coeff(int n) const {
        require(n >= 0 && n < prec(), errc::precision_exhausted,
                "coefficient index beyond known precision");
        return c_[n];
    }
    const std::vector<Fq>& coeffs() const { return c_; }

    TruncSeries truncated(int L) const {
        require(L >= 1 && L <= prec(), errc::precision_exhausted, "bad truncation length");
        return TruncSeries(*F_, std::vector<Fq>(c_.begin(), c_.begin() + L));
    }

    // equality on the shared known prefix
    bool agrees_with(const TruncSeries& o) const {
        int L = std::min(prec(), o.prec());
        for (int n = 0; n < L; ++n)
            if (c_[n] != o.c_[n]) return false;
        return true;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.c_ == b.c_;
    }

private:
    const FieldCtx* F_;
    std::vector<Fq> c_;
};

// Bivariate series truncated by total degree: keys (n,m) with n+m < prec,
// zero values not stored.
class BiTruncSeries {
public:
    using Terms = std::map<std::pair<int, int>, Fq>;

    BiTruncSeries(const FieldCtx& F, int prec) : F_(&F), prec_(prec) {
        require(prec >= 1, errc::precision_exhausted, "series needs precision >= 1");
    }

    const FieldCtx& field() const { return *F_; }
    int prec() const { return prec_; }
    const Terms& terms() const { return t_; }

    Fq coeff(int n, int m) const {
        require(n >= 0 && m >= 0 && n + m < prec_, errc::precision_exhausted,
                "coefficient beyond known precision");
        auto it = t_.find({n, m});
        return it == t_.end() ? Fq{} : it->second;
    }

    void set(int n, int m, Fq c) {
        require(n >= 0 && m >= 0 && n + m < prec_, errc::precision_exhausted,
                "coefficient beyond known precision");
        if (c.is_zero())
            t_.erase({n, m});
        else
            t_[{n, m}] = c;
    }

private:
    const FieldCtx* F_;
    int prec_;
    Terms t_;
};

// ---------------------------------------------------------------------------
// operators on truncations

// Lambda_digit: picks the arithmetic progression q*n + digit of coefficients.
inline TruncSeries cartier1(const TruncSeries& g, std::uint32_t digit) {
    const std::uint32_t q = g.field().q();
    require(digit < q, errc::digit_out_of_range, "digit must be < q");
    const int prec = g.prec();
    require(prec > static_cast<int>(digit), errc::precision_exhausted,
            "cartier1 would produce an empty truncation");
    const int out_prec = (prec - static_cast<int>(digit) + static_cast<int>(q) - 1) /
                         static_cast<int>(q);
    std::vector<Fq> c(out_prec);
    for (int n = 0; n < out_prec; ++n)
        c[n] = g.coeff(n * static_cast<int>(q) + static_cast<int>(digit));
    return TruncSeries(g.field(), std::move(c));
}

// Lambda_{i,j} on a total-degree truncation.
inline BiTruncSeries cartier2_trunc(const BiTruncSeries& g, std::uint32_t i, std::uint32_t j) {
    const int q = static_cast<int>(g.field().q());
    require(i < static_cast<std::uint32_t>(q) && j < static_cast<std::uint32_t>(q),
            errc::digit_out_of_range, "digits must be < q");
    const int drop = static_cast<int>(i) + static_cast<int>(j);
    require(g.prec() > drop, errc::precision_exhausted,
            "cartier2 would produce an empty truncation");
    const int out_prec = (g.prec() - drop + q - 1) / q;
    BiTruncSeries r(g.field(), out_prec);
    for (const auto& [nm, c] : g.terms()) {
        if (nm.first % q != static_cast<int>(i) || nm.second % q != static_cast<int>(j))
            continue;
        int n = (nm.first - static_cast<int>(i)) / q;
        int m = (nm.second - static_cast<int>(j)) / q;
        if (n + m < out_prec) r.set(n, m, c);
    }
    return r;
}

inline TruncSeries diagonal(const BiTruncSeries& g) {
    const int out_prec = (g.prec() + 1) / 2;
    std::vector<Fq> c(out_prec);
    for (int n = 0; n < out_prec; ++n) c[n] = g.coeff(n, n);
    return TruncSeries(g.field(), std::move(c));
}

// Truncation of N/D in F_q[[x,y]] for a unit denominator, by the linear
// recurrence D*S = N solved in total-degree order.
inline BiTruncSeries rational_expand(const BPoly& N, const BPoly& D, int prec) {
    detail::check_same_field(&N.field(), &D.field());
    const FieldCtx& F = N.field();
    require(prec >= 1, errc::precision_exhausted, "precision must be >= 1");
    const Fq d00 = D.coeff(0, 0);
    require(!d00.is_zero(), errc::non_unit_denominator, "D(0,0) must be a unit");
    const Fq inv_d00 = F.inv(d00);

    std::vector<std::vector<Fq>> S(prec);
    for (int n = 0; n < prec; ++n) S[n].assign(prec - n, Fq{});

    for (int total = 0; total < prec; ++total) {
        for (int n = 0; n <= total; ++n) {
            const int m = total - n;
            Fq acc = N.coeff(n, m);
            for (const auto& [ij, c] : D.terms()) {
                if (ij.first == 0 && ij.second == 0) continue;
                if (ij.first > n || ij.second > m) continue;
                acc = F.sub(acc, F.mul(c, S[n - ij.first][m - ij.second]));
            }
            S[n][m] = F.mul(acc, inv_d00);
        }
    }

    BiTruncSeries r(F, prec);
    for (int n = 0; n < prec; ++n)
        for (int m = 0; m + n < prec; ++m)
            if (!S[n][m].is_zero()) r.set(n, m, S[n][m]);
    return r;
}

// ---------------------------------------------------------------------------
// algebraic root expansion

// All coefficient lists (a_0,...,a_depth) with P(x, sum a_n x^n) = 0 mod
// x^{depth+1}; exhaustive branch-and-prune, lexicographic output order.
inline std::vector<std::vector<Fq>> enumerate_prefixes(const BPoly& P, int depth) {
    const FieldCtx& F = P.field();
    require(P.deg_y() >= 1, errc::degree_zero, "polynomial must involve y");
    require(depth >= 0, errc::invalid_prefix, "depth must be >= 0");
    std::vector<std::vector<Fq>> out;
    std::vector<Fq> cur;

    auto passes = [&](int k) {
        UPoly v(F, std::vector<Fq>(cur));
        UPoly e = P.eval_y(v);
        return e.is_zero() || e.valuation() >= k + 1;
    };

    auto rec = [&](auto&& self, int k) -> void {
        if (k > depth) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t vv = 0; vv < F.q(); ++vv) {
            cur.push_back(F.from_packed(vv));
            if (passes(k)) self(self, k + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Unique continuation of a root prefix to n_coeffs coefficients, by
// successive linearization against the Hasse derivatives of P at the
// current truncation. Each accepted coefficient a_k cancels the lowest
// undetermined term of P(x, V); non-unique steps raise
// AmbiguousContinuation, inconsistent ones NoContinuation.
inline TruncSeries expand_root(const BPoly& P, const std::vector<Fq>& prefix, int n_coeffs) {
    const FieldCtx& F = P.field();
    const int d = P.deg_y();
    require(d >= 1, errc::degree_zero, "polynomial must involve y");
    require(!prefix.empty(), errc::invalid_prefix, "prefix must be nonempty");
    require(n_coeffs >= static_cast<int>(prefix.size()), errc::invalid_prefix,
            "requested precision shorter than prefix");

    const int h = std::max(P.deg_x(), 0);
    const int margin = std::max(h * (2 * d - 1) + 2, 16);
    const int cap = n_coeffs + margin;

    // Pascal triangle mod p for the Hasse-derivative updates
    const std::uint32_t p = F.p();
    std::vector<std::vector<std::uint32_t>> binom(d + 1);
    for (int i = 0; i <= d; ++i) {
        binom[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j)
            binom[i][j] = (binom[i - 1][j - 1] + binom[i - 1][j]) % p;
    }

    // B[j] = coefficient of z^j in P(x, V + z), truncated to length cap
    std::vector<std::vector<Fq>> B(d + 1, std::vector<Fq>(cap));
    {
        UPoly V(F, std::vector<Fq>(prefix));
        auto layers = P.y_coeffs();
        for (int j = 0; j <= d; ++j) {
            UPoly acc = UPoly::zero(F);
            UPoly vpow = UPoly::one(F);
            for (int i = j; i <= d; ++i) {
                Fq bc = F.from_int(binom[i][j]);
                if (!bc.is_zero() && i < static_cast<int>(layers.size()))
                    acc = acc + (layers[i] * vpow).scaled(bc);
                vpow = vpow * V;
            }
            for (int n = 0; n <= acc.degree() && n < cap; ++n) B[j][n] = acc.coeff(n);
        }
    }

    int nu = -1;
    for (int n = 0; n < cap; ++n)
        if (!B[1][n].is_zero()) { nu = n; break; }
    require(nu >= 0 && nu < static_cast<int>(prefix.size()), errc::ambiguous_continuation,
            "next coefficient is not determined by a linear step");
    const Fq pivot_inv = F.inv(B[1][nu]);

    std::vector<Fq> a(prefix);
    a.reserve(n_coeffs);
    int verified = 0;
    for (int k = static_cast<int>(prefix.size()); k < n_coeffs; ++k) {
        for (; verified < nu + k; ++verified)
            require(B[0][verified].is_zero(), errc::no_continuation,
                    "prefix does not extend to a power-series root");
        Fq ak = F.neg(F.mul(B[0][nu + k], pivot_inv));
        a.push_back(ak);
        if (ak.is_zero()) continue;

        // B[j] += sum_m C(j+m,j) B[j+m] (ak x^k)^m, ascending j so the
        // higher-index entries read are still the old values
        for (int j = 0; j <= d; ++j) {
            Fq apow = F.one();
            for (int m = 1; j + m <= d; ++m) {
                apow = F.mul(apow, ak);
                Fq s = F.mul(apow, F.from_int(binom[j + m][j]));
                if (s.is_zero()) continue;
                const auto& src = B[j + m];
                auto& dst = B[j];
                for (int n = 0; n + m * k < cap; ++n) {
                    if (src[n].is_zero()) continue;
                    dst[n + m * k] = F.add(dst[n + m * k], F.mul(s, src[n]));
                }
            }
        }
    }
    // final window: the expansion must annihilate P through x^{n_coeffs}
    for (; verified < std::min(nu + n_coeffs, cap); ++verified)
        require(B[0][verified].is_zero(), errc::no_continuation,
                "prefix does not extend to a power-series root");

    a.resize(n_coeffs, Fq{});
    return TruncSeries(F, std::move(a));
}

// ---------------------------------------------------------------------------
// brute-force kernel oracle

struct OracleResult {
    long long count = 0;
    bool exact = false;
    std::vector<TruncSeries> classes;
};

// BFS closure of the truncation of the root under cartier1 for all digits.
// Two nodes are identified iff they agree on their common known prefix and
// that prefix has length >= l_min; runs with shorter evidence report
// exact = false.
inline OracleResult kernel_oracle(const BPoly& P, const std::vector<Fq>& prefix,
                                  int n_coeffs, int l_min) {
    const FieldCtx& F = P.field();
    const int q = static_cast<int>(F.q());
    require(l_min >= 1, errc::precision_exhausted, "l_min must be >= 1");
    require(n_coeffs >= q * l_min, errc::precision_exhausted,
            "precision too small for one confident level");

    OracleResult res;
    res.exact = true;
    res.classes.push_back(expand_root(P, prefix, n_coeffs));
    std::deque<std::size_t> frontier{0};

    auto note_precision = [&](int prec) {
        if (prec < l_min) res.exact = false;
    };
    note_precision(res.classes[0].prec());

    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (int digit = 0; digit < q; ++digit) {
            TruncSeries child = cartier1(res.classes[cur], digit);
            note_precision(child.prec());
            bool fresh = true;
            for (const auto& rep : res.classes) {
                int common = std::min(rep.prec(), child.prec());
                if (common >= l_min && rep.agrees_with(child)) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) {
                res.classes.push_back(child);
                frontier.push_back(res.classes.size() - 1);
            }
        }
    }
    res.count = static_cast<long long>(res.classes.size());
    return res;
}

} // namespace christol
