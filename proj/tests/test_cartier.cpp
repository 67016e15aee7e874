#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "christol/automaton.hpp"
#include "helpers.hpp"

using namespace christol;
using namespace christol::testing;

namespace {

BPoly random_bpoly(const FieldCtx& F, std::mt19937& rng, int max_dx, int max_dy) {
    std::uniform_int_distribution<std::uint32_t> coeff(0, F.q() - 1);
    BPoly r(F);
    for (int i = 0; i <= max_dx; ++i)
        for (int j = 0; j <= max_dy; ++j) r.add_term(i, j, F.from_packed(coeff(rng)));
    return r;
}

} // namespace

TEST_CASE("cartier2_poly pinned examples") {
    FieldCtx f2 = make_field(2, 1);
    // Lambda_{1,1}(x^3 y + x y + x^2 y^2): x^3 y -> (1,0), x y -> (0,0)
    BPoly B = parse_bpoly(f2, "x^3*y+x*y+x^2*y^2");
    CHECK(cartier2_poly(B, 1, 1) == parse_bpoly(f2, "1+x"));

    CHECK(cartier2_poly(BPoly::one(f2), 0, 0) == BPoly::one(f2));

    CHECK(cartier2_poly(parse_bpoly(f2, "x^2*y^3"), 0, 1) == parse_bpoly(f2, "x*y"));

    CHECK_THROWS_MATCHES(cartier2_poly(B, 2, 0), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::digit_out_of_range;
                         }));
}

TEST_CASE("product rule Lambda_{i,j}(F G^q) = Lambda_{i,j}(F) G") {
    std::mt19937 rng(4242);
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const FieldCtx& F = field_q(q);
        for (int it = 0; it < 70; ++it) {
            BPoly A = random_bpoly(F, rng, 3, 3);
            BPoly G = random_bpoly(F, rng, 2, 2);
            BPoly AGq = A * G.pow(q);
            for (std::uint32_t i = 0; i < q; ++i)
                for (std::uint32_t j = 0; j < q; ++j)
                    CHECK(cartier2_poly(AGq, i, j) == cartier2_poly(A, i, j) * G);
        }
    }
}

TEST_CASE("degree contraction under Lambda_{i,j}") {
    std::mt19937 rng(515);
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const FieldCtx& F = field_q(q);
        for (int it = 0; it < 50; ++it) {
            BPoly A = random_bpoly(F, rng, 7, 7);
            if (A.is_zero()) continue;
            for (std::uint32_t i = 0; i < q; ++i)
                for (std::uint32_t j = 0; j < q; ++j) {
                    BPoly L = cartier2_poly(A, i, j);
                    if (L.is_zero()) continue;
                    CHECK(L.deg_x() <= A.deg_x() / static_cast<int>(q));
                    CHECK(L.deg_y() <= A.deg_y() / static_cast<int>(q));
                }
        }
    }
}

TEST_CASE("partition identity reconstructs the polynomial") {
    std::mt19937 rng(616);
    for (std::uint32_t q : {2u, 3u}) {
        const FieldCtx& F = field_q(q);
        for (int it = 0; it < 30; ++it) {
            BPoly A = random_bpoly(F, rng, 5, 5);
            BPoly recon(F);
            for (std::uint32_t i = 0; i < q; ++i)
                for (std::uint32_t j = 0; j < q; ++j) {
                    BPoly part = cartier2_poly(A, i, j);
                    // x^i y^j part(x^q, y^q)
                    BPoly lifted(F);
                    for (const auto& [nm, c] : part.terms())
                        lifted.add_term(static_cast<int>(q) * nm.first + static_cast<int>(i),
                                        static_cast<int>(q) * nm.second + static_cast<int>(j),
                                        c);
                    recon = recon + lifted;
                }
            CHECK(recon == A);
        }
    }
}

TEST_CASE("transition reproduces coefficients of the root") {
    Worked w = worked_quadratic();
    Preparation prep = prepare(degree_height(w.P), w.prefix);
    KernelState st = initial_state(prep);
    CHECK(st.T.is_zero());
    CHECK(st.N == parse_bpoly(w.F, "y"));

    // digits of 3 least-significant first: (1,1); a_3 = 0
    KernelState s1 = transition(st, 1, prep);
    KernelState s2 = transition(s1, 1, prep);
    CHECK(state_output(s2, prep) == w.F.zero());

    // zero state is absorbing under every digit
    KernelState zero{UPoly::zero(w.F), BPoly::zero(w.F)};
    for (std::uint32_t digit = 0; digit < 2; ++digit) {
        KernelState img = transition(zero, digit, prep);
        CHECK(img == zero);
    }
}

TEST_CASE("transition matches cartier1 on state series (worked instances)") {
    const int L = 64;
    for (const Worked& w : {worked_quadratic(), worked_thue_morse(), worked_rational(),
                            worked_shifted(), worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        OrbitResult orbit = orbit_closure(prep);
        for (const KernelState& st : orbit.states) {
            TruncSeries base = state_series(st, prep, L * static_cast<int>(w.F.q()));
            for (std::uint32_t digit = 0; digit < w.F.q(); ++digit) {
                TruncSeries expected = cartier1(base, digit);
                TruncSeries got =
                    state_series(transition(st, digit, prep), prep, expected.prec());
                CHECK(got == expected);
            }
        }
    }
}

TEST_CASE("initial state series equals the root itself") {
    for (const Worked& w : {worked_quadratic(), worked_shifted(), worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        TruncSeries f = expand_root(w.P, w.prefix, 48);
        CHECK(state_series(initial_state(prep), prep, 48) == f);
    }
}

TEST_CASE("state_output pinned examples") {
    Worked w = worked_quadratic();
    Preparation prep = prepare(degree_height(w.P), w.prefix);
    CHECK(state_output(initial_state(prep), prep) == w.F.zero());

    Worked s3 = worked_sqrt3();
    Preparation prep3 = prepare(degree_height(s3.P), s3.prefix);
    KernelState init3 = initial_state(prep3);
    CHECK(init3.N.coeff(0, 0).is_zero());
    CHECK(state_output(init3, prep3) == s3.F.one());

    KernelState tonly{UPoly::one(w.F), BPoly::zero(w.F)};
    CHECK(state_output(tonly, prep) == w.F.one());
}

TEST_CASE("state_vectorize pinned examples") {
    Worked w = worked_quadratic();
    Preparation prep = prepare(degree_height(w.P), w.prefix);

    KernelState zero{UPoly::zero(w.F), BPoly::zero(w.F)};
    StateSpan s0 = state_vectorize({zero}, prep);
    CHECK(s0.dim() == 0);
    CHECK(s0.basis_states.empty());

    const FieldCtx& f3 = field_q(3);
    Worked s3 = worked_sqrt3();
    Preparation prep3 = prepare(degree_height(s3.P), s3.prefix);
    KernelState a{UPoly::one(f3), parse_bpoly(f3, "y")};
    KernelState b{UPoly::constant(f3, f3.from_int(2)), parse_bpoly(f3, "2*y")};
    StateSpan s1 = state_vectorize({a, b}, prep3);
    CHECK(s1.dim() == 1);
    // b = 2a in coordinates
    CHECK(s1.coords[1] == std::vector<Fq>{f3.from_int(2)});

    Worked tm = worked_thue_morse();
    Preparation ptm = prepare(degree_height(tm.P), tm.prefix);
    OrbitResult orbit = orbit_closure(ptm);
    StateSpan span = state_vectorize(orbit.states, ptm);
    CHECK(span.dim() <= (tm.P.deg_x() + 1) * tm.P.deg_y() + 1); // (h+1)d + 1 = 9
    // coordinates reproduce the flattened vectors
    for (std::size_t i = 0; i < orbit.states.size(); ++i) {
        auto flat = flatten_state(orbit.states[i], ptm);
        std::vector<Fq> rebuilt(flat.size());
        for (int c = 0; c < span.dim(); ++c) {
            if (span.coords[i][c].is_zero()) continue;
            auto bflat = flatten_state(orbit.states[span.basis_states[c]], ptm);
            for (std::size_t k = 0; k < flat.size(); ++k)
                rebuilt[k] = tm.F.add(rebuilt[k], tm.F.mul(span.coords[i][c], bflat[k]));
        }
        CHECK(rebuilt == flat);
    }
}

TEST_CASE("degree fixpoint holds on every reachable state") {
    for (const Worked& w : {worked_quadratic(), worked_thue_morse(), worked_shifted(),
                            worked_sqrt3()}) {
        Preparation prep = prepare(degree_height(w.P), w.prefix);
        OrbitResult orbit = orbit_closure(prep);
        for (const KernelState& st : orbit.states) {
            CHECK(st.T.degree() <= prep.r);
            if (!st.N.is_zero()) {
                CHECK(st.N.deg_x() <= prep.x_cap);
                CHECK(st.N.deg_y() <= prep.y_cap);
            }
        }
    }
}

#include "corpus.hpp"

TEST_CASE("transition matches cartier1 across the corpus (sampled states)") {
    // initial state plus its immediate successors on every corpus instance;
    // full orbits are covered on the worked instances above
    auto corpus = build_corpus(8);
    REQUIRE(corpus.size() >= 200);
    const int L = 24;
    for (const auto& inst : corpus) {
        Preparation prep = prepare(degree_height(inst.P), inst.prefix);
        std::vector<KernelState> sample{initial_state(prep)};
        for (std::uint32_t digit = 0; digit < inst.F->q(); ++digit)
            sample.push_back(transition(sample[0], digit, prep));
        for (const KernelState& st : sample) {
            TruncSeries base = state_series(st, prep, L * static_cast<int>(inst.F->q()));
            for (std::uint32_t digit = 0; digit < inst.F->q(); ++digit) {
                TruncSeries expected = cartier1(base, digit);
                TruncSeries got =
                    state_series(transition(st, digit, prep), prep, expected.prec());
                REQUIRE(got == expected);
            }
        }
    }
}
