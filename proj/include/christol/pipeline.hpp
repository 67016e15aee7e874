#pragma once

#include <optional>
#include <string>

#include "christol/automaton.hpp"
#include "christol/bounds.hpp"

namespace christol {

struct VerifyInfo {
    long long horizon = 0; // 0: verification skipped
    bool agree = false;
    long long oracle_count = 0;
    bool oracle_exact = false;
    bool ok = false;
};

struct Report {
    std::uint32_t p = 0, e = 0, q = 0;
    int d = 0, h = 0, r = 0, s = 0;
    long long g_P = 0;
    bool smooth = false;
    long long states_raw = 0;
    long long comp_reverse = 0;
    std::optional<long long> comp_forward;
    int span_dim = 0;
    BoundSet bounds;
    VerifyInfo verification;
};

struct PipelineOptions {
    bool forward = true;
    long long verify_horizon = 4096; // eval-vs-expansion agreement range; 0 skips
    int precision = 4096;            // oracle expansion length
    int l_min = 16;
    std::size_t state_cap = 1000000;
};

// Depth-r prefixes that genuinely extend to power-series roots. The
// enumeration can contain spurious candidates past singular branch points;
// the shifted-polynomial smoothness check is an exact certificate, so
// filtering by a trial preparation keeps exactly the real roots.
inline std::vector<std::vector<Fq>> valid_root_prefixes(const MinimalData& md) {
    const int r = resultant_order(md);
    std::vector<std::vector<Fq>> out;
    for (auto& prefix : enumerate_prefixes(md.P, r)) {
        try {
            (void)prepare(md, prefix);
            out.push_back(std::move(prefix));
        } catch (const error& e) {
            if (e.code() != errc::smoothness_check_failed) throw;
        }
    }
    return out;
}

struct PipelineResult {
    Preparation prep;
    OrbitResult orbit;
    Dfao min_reverse;
    std::optional<ForwardResult> forward;
    std::optional<Dfao> min_forward;
    Report report;

    explicit PipelineResult(const FieldCtx& F) : prep(F) {}
};

// prepare -> orbit -> minimize -> forward -> bounds -> verify, with the
// source inequalities asserted along the way
inline PipelineResult run_pipeline(const BPoly& P, const std::vector<Fq>& prefix,
                                   const PipelineOptions& opt = {}) {
    const FieldCtx& F = P.field();
    PipelineResult res(F);

    MinimalData md = degree_height(P);
    res.prep = prepare(md, prefix);
    res.orbit = orbit_closure(res.prep, opt.state_cap);
    res.min_reverse = minimize(res.orbit.raw);

    Report& rep = res.report;
    rep.p = F.p();
    rep.e = F.e();
    rep.q = F.q();
    rep.d = res.prep.d;
    rep.h = res.prep.h;
    rep.r = res.prep.r;
    rep.s = res.prep.s;
    rep.g_P = newton_interior(P);
    rep.smooth = res.prep.smooth;
    rep.states_raw = res.orbit.raw.n_states();
    rep.comp_reverse = res.min_reverse.n_states();

    if (opt.forward) {
        res.forward = forward_construct(res.orbit.states, res.orbit.raw, res.prep,
                                        opt.state_cap);
        res.min_forward = minimize(res.forward->raw);
        rep.comp_forward = res.min_forward->n_states();
        rep.span_dim = res.forward->span_dim;
    } else {
        rep.span_dim = state_vectorize(res.orbit.states, res.prep).dim();
    }

    rep.bounds = compute_bounds(rep.q, rep.d, rep.h, rep.r, res.prep.t0, rep.g_P,
                                rep.smooth);

    require(rep.comp_reverse <= rep.states_raw, errc::invariant_breach,
            "minimization increased the state count");
    if (rep.bounds.has_smooth && rep.bounds.smooth_bound.exact)
        require(static_cast<std::uint64_t>(rep.comp_reverse) <=
                    rep.bounds.smooth_bound.value,
                errc::invariant_breach, "smooth bound violated");
    if (rep.bounds.general_bound.exact)
        require(static_cast<std::uint64_t>(rep.comp_reverse) <=
                    rep.bounds.general_bound.value,
                errc::invariant_breach, "general bound violated");
    if (rep.comp_forward) {
        std::uint64_t fcap = 0;
        if (rep.span_dim <= 64 &&
            detail::checked_pow_u64(rep.q, rep.span_dim, fcap))
            require(static_cast<std::uint64_t>(*rep.comp_forward) <= fcap,
                    errc::invariant_breach, "forward q^m bound violated");
    }

    if (opt.verify_horizon > 0) {
        const long long H = opt.verify_horizon;
        const int N = std::max(opt.precision, static_cast<int>(H));
        require(N >= static_cast<int>(F.q()) * opt.l_min, errc::precision_exhausted,
                "precision too small for a confident oracle run");
        VerifyInfo& v = rep.verification;
        v.horizon = H;
        TruncSeries f = expand_root(P, prefix, N);
        v.agree = true;
        for (long long n = 0; n < H && v.agree; ++n) {
            if (eval(res.min_reverse, static_cast<std::uint64_t>(n)) !=
                f.coeff(static_cast<int>(n)))
                v.agree = false;
            if (res.min_forward &&
                eval(*res.min_forward, static_cast<std::uint64_t>(n)) !=
                    f.coeff(static_cast<int>(n)))
                v.agree = false;
        }
        OracleResult oracle = kernel_oracle(P, prefix, N, opt.l_min);
        v.oracle_count = oracle.count;
        v.oracle_exact = oracle.exact;
        v.ok = v.agree && oracle.exact && oracle.count == rep.comp_reverse;
    }
    return res;
}

// ---------------------------------------------------------------------------
// report JSON (fixed key order, byte-stable)

namespace detail {

inline std::string bound_value_json(const BoundValue& b) {
    if (b.exact) return std::to_string(b.value);
    std::string s = "{\"base\":" + std::to_string(b.base) +
                    ",\"exponent\":" + std::to_string(b.exponent);
    if (b.plus_exponent >= 0) s += ",\"plus_exponent\":" + std::to_string(b.plus_exponent);
    return s + "}";
}

} // namespace detail

inline std::string report_to_json(const Report& r) {
    std::string s = "{";
    s += "\"p\":" + std::to_string(r.p);
    s += ",\"e\":" + std::to_string(r.e);
    s += ",\"q\":" + std::to_string(r.q);
    s += ",\"d\":" + std::to_string(r.d);
    s += ",\"h\":" + std::to_string(r.h);
    s += ",\"r\":" + std::to_string(r.r);
    s += ",\"s\":" + std::to_string(r.s);
    s += ",\"g_P\":" + std::to_string(r.g_P);
    s += std::string(",\"smooth\":") + (r.smooth ? "true" : "false");
    s += ",\"states_raw\":" + std::to_string(r.states_raw);
    s += ",\"comp_reverse\":" + std::to_string(r.comp_reverse);
    s += ",\"comp_forward\":" +
         (r.comp_forward ? std::to_string(*r.comp_forward) : std::string("null"));
    s += ",\"span_dim\":" + std::to_string(r.span_dim);
    s += ",\"bounds\":{";
    if (r.bounds.has_smooth)
        s += "\"smooth_bound\":" + detail::bound_value_json(r.bounds.smooth_bound) + ",";
    s += "\"general_bound\":" + detail::bound_value_json(r.bounds.general_bound);
    s += ",\"forward_smooth\":" + std::to_string(r.bounds.forward_smooth);
    s += ",\"forward_general\":" + std::to_string(r.bounds.forward_general);
    s += ",\"forward_general_worstcase\":" +
         std::to_string(r.bounds.forward_general_worstcase);
    s += ",\"ore_baseline_exponent\":" + std::to_string(r.bounds.ore_baseline_exponent);
    s += ",\"bridy_exponent\":" + std::to_string(r.bounds.bridy_exponent);
    s += ",\"bridy_rect_exponent\":" + std::to_string(r.bounds.bridy_rect_exponent);
    s += ",\"riemann_gP_cap\":" + std::to_string(r.bounds.riemann_gP_cap);
    s += "},\"verification\":{";
    s += "\"horizon\":" + std::to_string(r.verification.horizon);
    if (r.verification.horizon > 0) {
        s += std::string(",\"agree\":") + (r.verification.agree ? "true" : "false");
        s += ",\"oracle_count\":" + std::to_string(r.verification.oracle_count);
        s += std::string(",\"oracle_exact\":") +
             (r.verification.oracle_exact ? "true" : "false");
        s += std::string(",\"ok\":") + (r.verification.ok ? "true" : "false");
    } else {
        s += ",\"agree\":null,\"oracle_count\":null,\"oracle_exact\":null,\"ok\":null";
    }
    s += "}}";
    return s;
}

} // namespace christol
