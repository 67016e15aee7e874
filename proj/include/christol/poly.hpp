#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "christol/gf.hpp"

namespace christol {

// degree of the zero polynomial; distinct marker, never mixed with real degrees
constexpr int kDegZero = INT_MIN;
// valuation of the zero polynomial
constexpr int kValInf = INT_MAX;

namespace detail {
inline void check_same_field(const FieldCtx* a, const FieldCtx* b) {
    require(a == b || *a == *b, errc::field_mismatch,
            "operands belong to different fields");
}
} // namespace detail

// Dense univariate polynomial over F_q, low-to-high coefficients, no
// trailing zeros. References its field context; the context must outlive
// the polynomial.
class UPoly {
public:
    explicit UPoly(const FieldCtx& F) : F_(&F) {}
    UPoly(const FieldCtx& F, std::vector<Fq> coeffs) : F_(&F), c_(std::move(coeffs)) {
        trim();
    }

    static UPoly zero(const FieldCtx& F) { return UPoly(F); }
    static UPoly one(const FieldCtx& F) { return constant(F, F.one()); }
    static UPoly constant(const FieldCtx& F, Fq a) {
        return UPoly(F, std::vector<Fq>{a});
    }
    static UPoly monomial(const FieldCtx& F, int k, Fq a) {
        std::vector<Fq> c(k + 1);
        c[k] = a;
        return UPoly(F, std::move(c));
    }

    const FieldCtx& field() const { return *F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kDegZero : static_cast<int>(c_.size()) - 1; }

    int valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return kValInf;
    }

    Fq coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Fq{};
    }
    const std::vector<Fq>& coeffs() const { return c_; }
    Fq lc() const { return c_.empty() ? Fq{} : c_.back(); }

    friend bool operator==(const UPoly& a, const UPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }
    friend bool operator<(const UPoly& a, const UPoly& b) { return a.c_ < b.c_; }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        const FieldCtx& F = *a.F_;
        std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        return UPoly(F, std::move(c));
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        const FieldCtx& F = *a.F_;
        std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        return UPoly(F, std::move(c));
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        const FieldCtx& F = *a.F_;
        if (a.is_zero() || b.is_zero()) return UPoly(F);
        std::vector<Fq> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
        }
        return UPoly(F, std::move(c));
    }

    UPoly scaled(Fq a) const {
        std::vector<Fq> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = F_->mul(c_[i], a);
        return UPoly(*F_, std::move(c));
    }

    UPoly negated() const { return scaled(F_->from_int(-1)); }

    UPoly pow(unsigned n) const {
        UPoly r = one(*F_), base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // multiply by x^k
    UPoly shifted_up(int k) const {
        if (is_zero()) return *this;
        std::vector<Fq> c(c_.size() + k);
        std::copy(c_.begin(), c_.end(), c.begin() + k);
        return UPoly(*F_, std::move(c));
    }

    // exact division by x^k
    UPoly shifted_down(int k) const {
        if (is_zero()) return *this;
        require(valuation() >= k, errc::not_divisible, "x^k does not divide polynomial");
        return UPoly(*F_, std::vector<Fq>(c_.begin() + k, c_.end()));
    }

    // exact division; the remainder must vanish (used by the fraction-free
    // resultant elimination)
    UPoly divexact(const UPoly& b) const {
        detail::check_same_field(F_, b.F_);
        const FieldCtx& F = *F_;
        require(!b.is_zero(), errc::division_by_zero, "division by zero polynomial");
        if (is_zero()) return UPoly(F);
        std::vector<Fq> rem = c_;
        int dr = degree(), db = b.degree();
        require(dr >= db, errc::not_divisible, "inexact polynomial division");
        std::vector<Fq> q(dr - db + 1);
        const Fq lb = F.inv(b.lc());
        for (int k = dr - db; k >= 0; --k) {
            Fq f = F.mul(rem[k + db], lb);
            q[k] = f;
            if (f.is_zero()) continue;
            for (int i = 0; i <= db; ++i)
                rem[k + i] = F.sub(rem[k + i], F.mul(f, b.coeff(i)));
        }
        for (const Fq& r : rem)
            require(r.is_zero(), errc::not_divisible, "inexact polynomial division");
        return UPoly(F, std::move(q));
    }

    // one-dimensional Cartier operator on polynomial coefficients:
    // coefficient n of the result is coefficient q*n + digit of *this
    UPoly cartier(std::uint32_t digit) const {
        const std::uint32_t q = F_->q();
        require(digit < q, errc::digit_out_of_range, "digit must be < q");
        std::vector<Fq> c;
        for (std::size_t i = digit; i < c_.size(); i += q) c.push_back(c_[i]);
        return UPoly(*F_, std::move(c));
    }

    Fq eval(Fq x) const {
        Fq r{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            r = F_->add(F_->mul(r, x), *it);
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const FieldCtx* F_;
    std::vector<Fq> c_;
};

// Sparse bivariate polynomial over F_q: map from exponent pairs (x-exp,
// y-exp) to nonzero coefficients, iterated lexicographically.
class BPoly {
public:
    using Terms = std::map<std::pair<int, int>, Fq>;

    explicit BPoly(const FieldCtx& F) : F_(&F) {}

    static BPoly zero(const FieldCtx& F) { return BPoly(F); }
    static BPoly one(const FieldCtx& F) { return monomial(F, 0, 0, F.one()); }
    static BPoly monomial(const FieldCtx& F, int i, int j, Fq c) {
        BPoly r(F);
        r.add_term(i, j, c);
        return r;
    }
    static BPoly from_x_poly(const UPoly& u) {
        BPoly r(u.field());
        for (int i = 0; i <= u.degree(); ++i) r.add_term(i, 0, u.coeff(i));
        return r;
    }
    // rebuild from dense y-layers: v[j] is the UPoly coefficient of y^j
    static BPoly from_y_coeffs(const FieldCtx& F, const std::vector<UPoly>& v) {
        BPoly r(F);
        for (std::size_t j = 0; j < v.size(); ++j)
            for (int i = 0; i <= v[j].degree(); ++i)
                r.add_term(i, static_cast<int>(j), v[j].coeff(i));
        return r;
    }

    const FieldCtx& field() const { return *F_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t n_terms() const { return t_.size(); }

    int deg_x() const {
        if (t_.empty()) return kDegZero;
        int d = 0;
        for (const auto& [ij, c] : t_) d = std::max(d, ij.first);
        return d;
    }
    int deg_y() const {
        if (t_.empty()) return kDegZero;
        int d = 0;
        for (const auto& [ij, c] : t_) d = std::max(d, ij.second);
        return d;
    }

    Fq coeff(int i, int j) const {
        auto it = t_.find({i, j});
        return it == t_.end() ? Fq{} : it->second;
    }

    void add_term(int i, int j, Fq c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.emplace(std::make_pair(i, j), c);
        if (!inserted) {
            it->second = F_->add(it->second, c);
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend bool operator==(const BPoly& a, const BPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        return a.t_ == b.t_;
    }
    friend bool operator!=(const BPoly& a, const BPoly& b) { return !(a == b); }
    friend bool operator<(const BPoly& a, const BPoly& b) { return a.t_ < b.t_; }

    friend BPoly operator+(const BPoly& a, const BPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        BPoly r = a;
        for (const auto& [ij, c] : b.t_) r.add_term(ij.first, ij.second, c);
        return r;
    }

    friend BPoly operator-(const BPoly& a, const BPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        BPoly r = a;
        for (const auto& [ij, c] : b.t_)
            r.add_term(ij.first, ij.second, a.F_->neg(c));
        return r;
    }

    // dense-grid product; exponent boxes at desk scale keep this small
    friend BPoly operator*(const BPoly& a, const BPoly& b) {
        detail::check_same_field(a.F_, b.F_);
        const FieldCtx& F = *a.F_;
        if (a.is_zero() || b.is_zero()) return BPoly(F);
        const int nx = a.deg_x() + b.deg_x() + 1;
        const int ny = a.deg_y() + b.deg_y() + 1;
        std::vector<Fq> grid(static_cast<std::size_t>(nx) * ny);
        for (const auto& [ia, ca] : a.t_)
            for (const auto& [ib, cb] : b.t_) {
                std::size_t k = static_cast<std::size_t>(ia.first + ib.first) * ny +
                                (ia.second + ib.second);
                grid[k] = F.add(grid[k], F.mul(ca, cb));
            }
        BPoly r(F);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const Fq& c = grid[static_cast<std::size_t>(i) * ny + j];
                if (!c.is_zero()) r.t_.emplace(std::make_pair(i, j), c);
            }
        return r;
    }

    BPoly scaled(Fq a) const {
        BPoly r(*F_);
        for (const auto& [ij, c] : t_) r.add_term(ij.first, ij.second, F_->mul(c, a));
        return r;
    }

    BPoly pow(unsigned n) const {
        BPoly r = one(*F_), base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // multiply by x^a y^b
    BPoly shifted(int a, int b) const {
        BPoly r(*F_);
        for (const auto& [ij, c] : t_)
            r.t_.emplace(std::make_pair(ij.first + a, ij.second + b), c);
        return r;
    }

    // dense list of y-layer coefficients, index j in 0..deg_y
    std::vector<UPoly> y_coeffs() const {
        int dy = std::max(deg_y(), 0);
        std::vector<std::vector<Fq>> raw(dy + 1);
        for (const auto& [ij, c] : t_) {
            auto& row = raw[ij.second];
            if (static_cast<int>(row.size()) <= ij.first) row.resize(ij.first + 1);
            row[ij.first] = c;
        }
        std::vector<UPoly> out;
        out.reserve(raw.size());
        for (auto& row : raw) out.emplace_back(*F_, std::move(row));
        return out;
    }

    // exact evaluation of y at a univariate polynomial: P(x, v(x))
    UPoly eval_y(const UPoly& v) const {
        detail::check_same_field(F_, &v.field());
        auto layers = y_coeffs();
        UPoly r = UPoly::zero(*F_);
        for (auto it = layers.rbegin(); it != layers.rend(); ++it) r = r * v + *it;
        return r;
    }

private:
    const FieldCtx* F_;
    Terms t_;
};

// formal partial derivative in y; the term (i,j) maps to (i,j-1) scaled by
// j mod p
inline BPoly dpdy(const BPoly& P) {
    BPoly r(P.field());
    for (const auto& [ij, c] : P.terms()) {
        if (ij.second == 0) continue;
        Fq f = P.field().from_int(ij.second);
        if (f.is_zero()) continue;
        r.add_term(ij.first, ij.second - 1, P.field().mul(c, f));
    }
    return r;
}

// Sylvester-determinant resultant with respect to y, computed by Bareiss
// fraction-free elimination over F_q[x].
inline UPoly resultant_y(const BPoly& A, const BPoly& B) {
    detail::check_same_field(&A.field(), &B.field());
    const FieldCtx& F = A.field();
    require(!A.is_zero() && !B.is_zero(), errc::both_constant_in_y,
            "resultant of zero polynomial");
    const int da = A.deg_y(), db = B.deg_y();
    require(da >= 1 || db >= 1, errc::both_constant_in_y,
            "both arguments constant in y");
    auto va = A.y_coeffs(), vb = B.y_coeffs();
    const int n = da + db;
    std::vector<std::vector<UPoly>> S(n, std::vector<UPoly>(n, UPoly::zero(F)));
    for (int r = 0; r < db; ++r)
        for (int k = 0; k <= da; ++k) S[r][r + k] = va[da - k];
    for (int r = 0; r < da; ++r)
        for (int k = 0; k <= db; ++k) S[db + r][r + k] = vb[db - k];

    UPoly prev = UPoly::one(F);
    bool negate = false;
    for (int k = 0; k + 1 < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!S[i][k].is_zero()) { piv = i; break; }
        if (piv < 0) return UPoly::zero(F);
        if (piv != k) {
            std::swap(S[piv], S[k]);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                S[i][j] = (S[k][k] * S[i][j] - S[i][k] * S[k][j]).divexact(prev);
            S[i][k] = UPoly::zero(F);
        }
        prev = S[k][k];
    }
    UPoly det = S[n - 1][n - 1];
    return negate ? det.negated() : det;
}

inline int valuation(const UPoly& u) { return u.valuation(); }

// P(xy, y): the term (i,j) maps to (i, i+j)
inline BPoly substitute_x_to_xy(const BPoly& P) {
    BPoly r(P.field());
    for (const auto& [ij, c] : P.terms()) r.add_term(ij.first, ij.first + ij.second, c);
    return r;
}

// P(x, M(x,y)) by Horner over the y-layers of P
inline BPoly substitute_y(const BPoly& P, const BPoly& M) {
    detail::check_same_field(&P.field(), &M.field());
    const FieldCtx& F = P.field();
    auto layers = P.y_coeffs();
    BPoly r(F);
    for (auto it = layers.rbegin(); it != layers.rend(); ++it)
        r = r * M + BPoly::from_x_poly(*it);
    return r;
}

// exact division by x^s
inline BPoly shift_out_x(const BPoly& P, int s) {
    BPoly r(P.field());
    for (const auto& [ij, c] : P.terms()) {
        require(ij.first >= s, errc::not_divisible, "x^s does not divide polynomial");
        r.add_term(ij.first - s, ij.second, c);
    }
    return r;
}

namespace detail {

using LatticePoint = std::pair<long long, long long>;

inline long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

// strictly convex hull (collinear boundary points dropped), CCW order
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<LatticePoint> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

} // namespace detail

// number of lattice points strictly inside the Newton polygon of P,
// via Pick's theorem on the convex hull of the exponent set
inline long long newton_interior(const BPoly& P) {
    require(!P.is_zero(), errc::invariant_breach, "Newton polygon of zero polynomial");
    std::vector<detail::LatticePoint> pts;
    pts.reserve(P.n_terms());
    for (const auto& [ij, c] : P.terms()) pts.push_back({ij.first, ij.second});
    auto hull = detail::convex_hull(std::move(pts));
    if (hull.size() < 3) return 0; // degenerate: segment or point
    long long twice_area = 0, boundary = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        twice_area += a.first * b.second - b.first * a.second;
        boundary += std::gcd(std::abs(b.first - a.first), std::abs(b.second - a.second));
    }
    twice_area = std::abs(twice_area);
    return (twice_area - boundary + 2) / 2;
}

} // namespace christol
