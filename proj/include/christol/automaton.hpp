#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "christol/cartier.hpp"
#include "christol/text.hpp"

namespace christol {

enum class Reading { reverse, forward };

// Deterministic finite automaton with output over the digit alphabet
// 0..q-1. reverse automata consume base-q digits least-significant first,
// forward automata most-significant first; n = 0 is the empty string.
struct Dfao {
    std::uint32_t q = 0;
    Reading reading = Reading::reverse;
    int initial = 0;
    std::vector<Fq> out;
    std::vector<std::vector<int>> delta; // [state][digit]

    int n_states() const { return static_cast<int>(out.size()); }

    friend bool operator==(const Dfao& a, const Dfao& b) {
        return a.q == b.q && a.reading == b.reading && a.initial == b.initial &&
               a.out == b.out && a.delta == b.delta;
    }
};

// run the automaton on digits in feeding order
inline Fq run_digits(const Dfao& a, const std::vector<int>& digits) {
    int s = a.initial;
    for (int d : digits) {
        require(d >= 0 && d < static_cast<int>(a.q), errc::digit_out_of_range,
                "digit outside alphabet");
        s = a.delta[s][d];
    }
    return a.out[s];
}

inline std::vector<int> base_q_digits_lsb_first(std::uint64_t n, std::uint32_t q) {
    std::vector<int> digits;
    while (n) {
        digits.push_back(static_cast<int>(n % q));
        n /= q;
    }
    return digits;
}

inline Fq eval(const Dfao& a, std::uint64_t n) {
    std::vector<int> digits = base_q_digits_lsb_first(n, a.q);
    if (a.reading == Reading::forward) std::reverse(digits.begin(), digits.end());
    return run_digits(a, digits);
}

// ---------------------------------------------------------------------------
// orbit closure

struct OrbitResult {
    std::vector<KernelState> states;
    Dfao raw; // reverse reading, state ids in first-discovery order
};

inline OrbitResult orbit_closure_from(const KernelState& init, const Preparation& prep,
                                      std::size_t cap = 1000000) {
    const FieldCtx& F = prep.field();
    const std::uint32_t q = F.q();
    OrbitResult res;
    std::map<KernelState, int> index;
    std::deque<int> todo;

    auto intern = [&](const KernelState& st) {
        auto it = index.find(st);
        if (it != index.end()) return it->second;
        require(res.states.size() < cap, errc::state_explosion,
                "orbit exceeded the state cap (broken invariant?)");
        // degree fixpoint: flatten_state asserts the caps
        (void)flatten_state(st, prep);
        int id = static_cast<int>(res.states.size());
        res.states.push_back(st);
        index.emplace(st, id);
        todo.push_back(id);
        return id;
    };

    intern(init);
    std::vector<std::vector<int>> delta;
    while (!todo.empty()) {
        int s = todo.front();
        todo.pop_front();
        auto children = transition_all(res.states[s], prep);
        std::vector<int> row(q);
        for (std::uint32_t digit = 0; digit < q; ++digit)
            row[digit] = intern(children[digit]);
        if (static_cast<int>(delta.size()) <= s) delta.resize(s + 1, std::vector<int>{});
        delta[s] = std::move(row);
    }
    delta.resize(res.states.size());

    std::vector<Fq> outs;
    outs.reserve(res.states.size());
    for (const auto& st : res.states) outs.push_back(state_output(st, prep));
    res.raw = Dfao{q, Reading::reverse, 0, std::move(outs), std::move(delta)};
    return res;
}

inline OrbitResult orbit_closure(const Preparation& prep, std::size_t cap = 1000000) {
    return orbit_closure_from(initial_state(prep), prep, cap);
}

// ---------------------------------------------------------------------------
// Moore minimization

// Partition refinement: split by output, then by transition signatures
// until stable; unreachable classes are dropped by the BFS renumbering.
inline Dfao minimize(const Dfao& a) {
    const int n = a.n_states();
    require(n > 0, errc::invariant_breach, "automaton has no states");
    const int q = static_cast<int>(a.q);

    std::vector<int> cls(n);
    int n_cls = 0;
    {
        std::map<Fq, int> by_out;
        for (int s = 0; s < n; ++s) {
            auto [it, fresh] = by_out.emplace(a.out[s], n_cls);
            if (fresh) ++n_cls;
            cls[s] = it->second;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig(q + 1);
            sig[0] = cls[s];
            for (int d = 0; d < q; ++d) sig[d + 1] = cls[a.delta[s][d]];
            auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
            (void)fresh;
            next[s] = it->second;
        }
        bool stable = static_cast<int>(ids.size()) == n_cls;
        n_cls = static_cast<int>(ids.size());
        cls = std::move(next);
        if (stable) break;
    }

    // renumber classes by BFS from the initial class, digits ascending
    std::vector<int> order(n_cls, -1);
    std::vector<int> rep(n_cls, -1);
    for (int s = 0; s < n; ++s)
        if (rep[cls[s]] < 0) rep[cls[s]] = s;
    std::deque<int> todo{cls[a.initial]};
    int next_id = 0;
    order[cls[a.initial]] = next_id++;
    while (!todo.empty()) {
        int c = todo.front();
        todo.pop_front();
        for (int d = 0; d < q; ++d) {
            int t = cls[a.delta[rep[c]][d]];
            if (order[t] < 0) {
                order[t] = next_id++;
                todo.push_back(t);
            }
        }
    }

    Dfao m;
    m.q = a.q;
    m.reading = a.reading;
    m.initial = 0;
    m.out.resize(next_id);
    m.delta.assign(next_id, std::vector<int>(q));
    for (int c = 0; c < n_cls; ++c) {
        if (order[c] < 0) continue; // unreachable
        int s = rep[c];
        m.out[order[c]] = a.out[s];
        for (int d = 0; d < q; ++d) m.delta[order[c]][d] = order[cls[a.delta[s][d]]];
    }
    return m;
}

// ---------------------------------------------------------------------------
// forward (most-significant-first) construction by functional duality

struct ForwardResult {
    Dfao raw;     // forward reading, functional states in discovery order
    int span_dim; // dimension of the orbit span
};

// BFS over output functionals psi -> psi . M_digit on the orbit span; the
// reachable functional count is capped by q^span_dim.
inline ForwardResult forward_construct(const std::vector<KernelState>& states,
                                       const Dfao& raw, const Preparation& prep,
                                       std::size_t cap = 1000000) {
    const FieldCtx& F = prep.field();
    const int q = static_cast<int>(F.q());
    StateSpan span = state_vectorize(states, prep);
    const int m = span.dim();

    if (m == 0) {
        // the orbit is the zero space; one dead state computing 0
        Dfao fwd{F.q(), Reading::forward, 0, {Fq{}},
                 {std::vector<int>(static_cast<std::size_t>(q), 0)}};
        return ForwardResult{std::move(fwd), 0};
    }

    // transition matrices in span coordinates, stored column-wise
    std::vector<std::vector<std::vector<Fq>>> M(q);
    for (int d = 0; d < q; ++d) {
        M[d].resize(m);
        for (int c = 0; c < m; ++c) {
            int b = span.basis_states[c];
            int img = raw.delta[b][d];
            M[d][c] = span.span.coords_of(flatten_state(states[img], prep));
        }
    }
    std::vector<Fq> psi0(m);
    for (int c = 0; c < m; ++c) psi0[c] = state_output(states[span.basis_states[c]], prep);
    const std::vector<Fq>& v_init = span.coords[raw.initial];

    auto apply = [&](const std::vector<Fq>& psi, int d) {
        std::vector<Fq> out(m);
        for (int j = 0; j < m; ++j) {
            Fq acc{};
            for (int i = 0; i < m; ++i) acc = F.add(acc, F.mul(psi[i], M[d][j][i]));
            out[j] = acc;
        }
        return out;
    };
    auto pair_with = [&](const std::vector<Fq>& psi, const std::vector<Fq>& v) {
        Fq acc{};
        for (int i = 0; i < m; ++i) acc = F.add(acc, F.mul(psi[i], v[i]));
        return acc;
    };

    // leading-zero invariance: Lambda_0 preserves constant terms
    require(apply(psi0, 0) == psi0, errc::invariant_breach,
            "output functional is not fixed by the zero digit");

    std::map<std::vector<Fq>, int> index;
    std::vector<std::vector<Fq>> funcs;
    std::deque<int> todo;
    auto intern = [&](std::vector<Fq> psi) {
        auto it = index.find(psi);
        if (it != index.end()) return it->second;
        require(funcs.size() < cap, errc::state_explosion,
                "functional orbit exceeded the state cap");
        int id = static_cast<int>(funcs.size());
        index.emplace(psi, id);
        funcs.push_back(std::move(psi));
        todo.push_back(id);
        return id;
    };

    intern(psi0);
    std::vector<std::vector<int>> delta;
    while (!todo.empty()) {
        int s = todo.front();
        todo.pop_front();
        std::vector<int> row(q);
        for (int d = 0; d < q; ++d) row[d] = intern(apply(funcs[s], d));
        if (static_cast<int>(delta.size()) <= s) delta.resize(s + 1);
        delta[s] = std::move(row);
    }
    delta.resize(funcs.size());

    std::vector<Fq> outs;
    outs.reserve(funcs.size());
    for (const auto& psi : funcs) outs.push_back(pair_with(psi, v_init));

    Dfao fwd{F.q(), Reading::forward, 0, std::move(outs), std::move(delta)};
    return ForwardResult{std::move(fwd), m};
}

// ---------------------------------------------------------------------------
// serialization

// byte-stable JSON with fixed field order
inline std::string to_json(const Dfao& a, const FieldCtx& F) {
    std::string s = "{\"q\":" + std::to_string(a.q) + ",\"reading\":\"" +
                    (a.reading == Reading::reverse ? "reverse" : "forward") +
                    "\",\"initial\":" + std::to_string(a.initial) + ",\"outputs\":[";
    for (int i = 0; i < a.n_states(); ++i) {
        if (i) s += ',';
        s += '"' + fq_to_string(F, a.out[i]) + '"';
    }
    s += "],\"delta\":[";
    for (int i = 0; i < a.n_states(); ++i) {
        if (i) s += ',';
        s += '[';
        for (std::uint32_t d = 0; d < a.q; ++d) {
            if (d) s += ',';
            s += std::to_string(a.delta[i][d]);
        }
        s += ']';
    }
    s += "]}";
    return s;
}

inline Dfao dfao_from_json(const std::string& text, const FieldCtx& F) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        raise(errc::parse_error, std::string("bad automaton JSON: ") + ex.what());
    }
    Dfao a;
    try {
        a.q = j.at("q").get<std::uint32_t>();
        std::string reading = j.at("reading").get<std::string>();
        require(reading == "reverse" || reading == "forward", errc::parse_error,
                "reading must be reverse or forward");
        a.reading = reading == "reverse" ? Reading::reverse : Reading::forward;
        a.initial = j.at("initial").get<int>();
        for (const auto& o : j.at("outputs")) a.out.push_back(parse_fq(F, o.get<std::string>()));
        for (const auto& row : j.at("delta")) {
            std::vector<int> r;
            for (const auto& t : row) r.push_back(t.get<int>());
            a.delta.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& ex) {
        raise(errc::parse_error, std::string("bad automaton JSON: ") + ex.what());
    }
    require(a.q == F.q(), errc::parse_error, "automaton alphabet does not match the field");
    require(a.delta.size() == a.out.size(), errc::parse_error, "delta/outputs size mismatch");
    require(a.initial >= 0 && a.initial < a.n_states(), errc::parse_error,
            "initial state out of range");
    for (const auto& row : a.delta) {
        require(row.size() == a.q, errc::parse_error, "delta row has wrong arity");
        for (int t : row)
            require(t >= 0 && t < a.n_states(), errc::parse_error,
                    "transition target out of range");
    }
    return a;
}

// DOT text: nodes by state id, then the start marker edge, then edges by
// (state, digit)
inline std::string to_dot(const Dfao& a, const FieldCtx& F) {
    std::string s = "digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n"
                    "  start [shape=point];\n";
    for (int i = 0; i < a.n_states(); ++i)
        s += "  s" + std::to_string(i) + " [label=\"s" + std::to_string(i) + "/" +
             fq_to_string(F, a.out[i]) + "\"];\n";
    s += "  start -> s" + std::to_string(a.initial) + ";\n";
    for (int i = 0; i < a.n_states(); ++i)
        for (std::uint32_t d = 0; d < a.q; ++d)
            s += "  s" + std::to_string(i) + " -> s" + std::to_string(a.delta[i][d]) +
                 " [label=\"" + std::to_string(d) + "\"];\n";
    s += "}\n";
    return s;
}

} // namespace christol
