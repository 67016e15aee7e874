#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "christol/gf.hpp"

using namespace christol;

TEST_CASE("make_field basic contexts") {
    FieldCtx f2 = make_field(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.p() == 2);

    FieldCtx f4 = make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f4.q() == 4);

    // default modulus search is deterministic: smallest lexicographic
    FieldCtx f4d = make_field(2, 2);
    CHECK(f4d.modulus() == std::vector<std::uint32_t>{1, 1, 1});

    CHECK_THROWS_MATCHES(make_field(4, 1), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::not_prime; }));
    CHECK_THROWS_MATCHES(make_field(2, 2, std::vector<std::uint32_t>{1, 0, 1}), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::reducible_modulus;
                         }));
    CHECK_THROWS_MATCHES(make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1, 1}), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::degree_mismatch;
                         }));
    // desk scale only
    CHECK_THROWS_MATCHES(make_field(2, 17), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::field_too_large;
                         }));
}

TEST_CASE("field arithmetic on pinned examples") {
    FieldCtx f2 = make_field(2, 1);
    CHECK(f2.add(f2.one(), f2.one()) == f2.zero());

    FieldCtx f4 = make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    Fq g = f4.gen();
    Fq g1 = f4.add(g, f4.one());
    CHECK(f4.mul(g, g1) == f4.one()); // g*(g+1) = g^2+g = 1 under g^2+g+1=0

    FieldCtx f3 = make_field(3, 1);
    CHECK(f3.inv(f3.from_int(2)) == f3.from_int(2)); // 2*2 = 4 = 1 mod 3
}

TEST_CASE("frobenius on pinned examples") {
    FieldCtx f4 = make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    Fq g = f4.gen();
    CHECK(f4.frobenius(g) == f4.add(g, f4.one())); // g^2 = g+1
    CHECK(f4.frobenius(f4.frobenius(g, true)) == g);

    FieldCtx f2 = make_field(2, 1);
    CHECK(f2.frobenius(f2.one(), true) == f2.one());
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(12345);
    for (const auto& [p, e] : {std::pair{2u, 4u}, {3u, 2u}, {5u, 1u}, {7u, 2u}}) {
        FieldCtx F = make_field(p, e);
        std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
        for (int it = 0; it < 200; ++it) {
            Fq a = F.from_packed(pick(rng));
            Fq b = F.from_packed(pick(rng));
            Fq c = F.from_packed(pick(rng));
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            if (!a.is_zero()) CHECK(F.mul(a, F.inv(a)) == F.one());
            // frobenius is additive
            CHECK(F.frobenius(F.add(a, b)) ==
                  F.add(F.frobenius(a), F.frobenius(b)));
        }
    }
}

TEST_CASE("frobenius round-trip, exhaustive small fields") {
    for (const auto& [p, e] : {std::pair{2u, 1u}, {2u, 2u}, {2u, 3u}, {2u, 4u},
                               {2u, 5u}, {2u, 6u}, {3u, 1u}, {3u, 2u}, {3u, 3u},
                               {5u, 2u}, {7u, 2u}}) {
        FieldCtx F = make_field(p, e);
        REQUIRE(F.q() <= 64);
        for (std::uint32_t v = 0; v < F.q(); ++v) {
            Fq a = F.from_packed(v);
            CHECK(F.frobenius(F.frobenius(a, true)) == a);
            CHECK(F.frobenius(F.frobenius(a), true) == a);
        }
    }
}

TEST_CASE("division by zero is rejected") {
    FieldCtx f3 = make_field(3, 1);
    CHECK_THROWS_MATCHES(f3.inv(f3.zero()), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::division_by_zero;
                         }));
}
