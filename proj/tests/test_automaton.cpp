#include <catch2/catch_amalgamated.hpp>

#include "christol/automaton.hpp"
#include "helpers.hpp"

using namespace christol;
using namespace christol::testing;

TEST_CASE("orbit closure computes the root coefficients (raw reverse)") {
    Worked w = worked_quadratic();
    Preparation prep = prepare(degree_height(w.P), w.prefix);
    OrbitResult orbit = orbit_closure(prep);
    CHECK(orbit.raw.n_states() >= 3);

    TruncSeries f = expand_root(w.P, w.prefix, 4096);
    for (std::uint64_t n = 0; n < 4096; ++n)
        REQUIRE(eval(orbit.raw, n) == f.coeff(static_cast<int>(n)));
}

TEST_CASE("orbit closure on the rational instance") {
    Worked w = worked_rational();
    Preparation prep = prepare(degree_height(w.P), w.prefix);
    OrbitResult orbit = orbit_closure(prep);
    TruncSeries f = expand_root(w.P, w.prefix, 512);
    // x/(1+x) = x + x^2 + x^3 + ...
    for (int n = 1; n < 512; ++n) CHECK(f.coeff(n) == w.F.one());
    for (std::uint64_t n = 0; n < 512; ++n)
        REQUIRE(eval(orbit.raw, n) == f.coeff(static_cast<int>(n)));
}

TEST_CASE("artificial zero state closes to a one-state loop") {
    Worked w = worked_quadratic();
    Preparation prep = prepare(degree_height(w.P), w.prefix);
    KernelState zero{UPoly::zero(w.F), BPoly::zero(w.F)};
    OrbitResult orbit = orbit_closure_from(zero, prep);
    REQUIRE(orbit.raw.n_states() == 1);
    CHECK(orbit.raw.out[0] == w.F.zero());
    CHECK(orbit.raw.delta[0] == std::vector<int>{0, 0});
}

TEST_CASE("minimize reaches the kernel sizes") {
    struct Case {
        Worked w;
        int expect;
    };
    for (auto& [w, expect] : {Case{worked_quadratic(), 3}, Case{worked_thue_morse(), 2},
                              Case{worked_shifted(), 5}}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        OrbitResult orbit = orbit_closure(prep);
        Dfao m = minimize(orbit.raw);
        CHECK(m.n_states() == expect);
        // minimization preserves behavior
        for (std::uint64_t n = 0; n < 512; ++n)
            REQUIRE(eval(m, n) == eval(orbit.raw, n));
        // idempotence
        CHECK(minimize(m).n_states() == m.n_states());
    }
}

TEST_CASE("state explosion cap raises") {
    Worked w = worked_quadratic();
    Preparation prep = prepare(degree_height(w.P), w.prefix);
    CHECK_THROWS_MATCHES(orbit_closure(prep, 2), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::state_explosion;
                         }));
}

TEST_CASE("forward construction agrees with reverse evaluation") {
    for (const Worked& w : {worked_thue_morse(), worked_quadratic(), worked_shifted(),
                            worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        OrbitResult orbit = orbit_closure(prep);
        ForwardResult fwd = forward_construct(orbit.states, orbit.raw, prep);
        Dfao mf = minimize(fwd.raw);
        Dfao mr = minimize(orbit.raw);

        // q^{m_span} caps the forward size
        std::uint64_t cap = 1;
        for (int i = 0; i < fwd.span_dim; ++i) cap *= w.F.q();
        CHECK(static_cast<std::uint64_t>(mf.n_states()) <= cap);

        for (std::uint64_t n = 0; n < 4096; ++n)
            REQUIRE(eval(mf, n) == eval(mr, n));
    }
}

TEST_CASE("eval pinned examples") {
    Worked tm = worked_thue_morse();
    Preparation prep = prepare(degree_height(tm.P), tm.prefix);
    OrbitResult orbit = orbit_closure(prep);
    Dfao mr = minimize(orbit.raw);
    ForwardResult fwd = forward_construct(orbit.states, orbit.raw, prep);
    Dfao mf = minimize(fwd.raw);
    // t_3 = 0 (binary 11)
    CHECK(eval(mr, 3) == tm.F.zero());
    CHECK(eval(mf, 3) == tm.F.zero());
    CHECK(eval(mr, 0) == mr.out[mr.initial]);

    Worked w = worked_quadratic();
    Preparation wprep = prepare(degree_height(w.P), w.prefix);
    Dfao wm = minimize(orbit_closure(wprep).raw);
    CHECK(eval(wm, 8) == w.F.one());  // 8 = 2^3
    CHECK(eval(wm, 6) == w.F.zero());
}

TEST_CASE("padding invariance of eval") {
    for (const Worked& w : {worked_quadratic(), worked_thue_morse(), worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        OrbitResult orbit = orbit_closure(prep);
        Dfao mr = minimize(orbit.raw);
        ForwardResult fwd = forward_construct(orbit.states, orbit.raw, prep);
        Dfao mf = minimize(fwd.raw);
        for (std::uint64_t n = 0; n < 200; ++n) {
            auto digits = base_q_digits_lsb_first(n, mr.q);
            // reverse reading: most-significant padding goes at the end
            auto padded = digits;
            padded.insert(padded.end(), 3, 0);
            CHECK(run_digits(mr, padded) == eval(mr, n));
            // forward reading: most-significant padding goes up front
            auto fdigits = digits;
            std::reverse(fdigits.begin(), fdigits.end());
            fdigits.insert(fdigits.begin(), 3, 0);
            CHECK(run_digits(mf, fdigits) == eval(mf, n));
        }
    }
}

TEST_CASE("JSON serialization is byte-stable and round-trips") {
    FieldCtx f2 = make_field(2, 1);
    Dfao zero{2, Reading::reverse, 0, {f2.zero()}, {{0, 0}}};
    CHECK(to_json(zero, f2) ==
          "{\"q\":2,\"reading\":\"reverse\",\"initial\":0,\"outputs\":[\"0\"],"
          "\"delta\":[[0,0]]}");

    for (const Worked& w : {worked_thue_morse(), worked_shifted(), worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        Dfao m = minimize(orbit_closure(prep).raw);
        Dfao back = dfao_from_json(to_json(m, w.F), w.F);
        CHECK(back == m);
        CHECK(to_json(back, w.F) == to_json(m, w.F));
    }

    // extension-field outputs survive the round trip
    FieldCtx f4 = make_field(2, 2);
    Dfao ext{4, Reading::forward, 0,
             {f4.gen(), f4.add(f4.gen(), f4.one())},
             {{0, 1, 1, 0}, {1, 1, 0, 0}}};
    CHECK(dfao_from_json(to_json(ext, f4), f4) == ext);
}

TEST_CASE("DOT output of the Thue-Morse kernel") {
    Worked tm = worked_thue_morse();
    Preparation prep = prepare(degree_height(tm.P), tm.prefix);
    Dfao m = minimize(orbit_closure(prep).raw);
    REQUIRE(m.n_states() == 2);
    CHECK(to_dot(m, tm.F) ==
          "digraph dfao {\n"
          "  rankdir=LR;\n"
          "  node [shape=circle];\n"
          "  start [shape=point];\n"
          "  s0 [label=\"s0/0\"];\n"
          "  s1 [label=\"s1/1\"];\n"
          "  start -> s0;\n"
          "  s0 -> s0 [label=\"0\"];\n"
          "  s0 -> s1 [label=\"1\"];\n"
          "  s1 -> s1 [label=\"0\"];\n"
          "  s1 -> s0 [label=\"1\"];\n"
          "}\n");
}

TEST_CASE("minimized reverse counts match the kernel oracle") {
    for (const Worked& w : {worked_quadratic(), worked_thue_morse(), worked_shifted(),
                            worked_rational(), worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        Dfao m = minimize(orbit_closure(prep).raw);
        OracleResult oracle = kernel_oracle(w.P, w.prefix, 4096, 16);
        REQUIRE(oracle.exact);
        CHECK(oracle.count == m.n_states());
    }
}
