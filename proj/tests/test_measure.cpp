#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dudleylab/measure.hpp"
#include "support/generators.hpp"

using namespace dudleylab;

TEST_CASE("point_mass basics") {
    auto single = from_real_points({3.0});
    CHECK(point_mass(single, 0).mass() == std::vector<double>{1.0});

    auto two = from_real_points({0.0, 1.0});
    CHECK(point_mass(two, 0).mass() == std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS(point_mass(two, 2), InputError);
    CHECK_THROWS_AS(point_mass(two, -1), InputError);
}

TEST_CASE("integrate against point masses and mixtures") {
    auto two = from_real_points({0.0, 1.0});
    SplitMix64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = dltest::random_function(rng, two, 5.0);
        CHECK(integrate(point_mass(two, 0), f) == f[0]);
        CHECK(integrate(point_mass(two, 1), f) == f[1]);
    }

    ProbabilityMeasure half(two, {0.5, 0.5});
    CHECK(integrate(half, TabulatedFunction(two, {1.0, 1.0})) == 1.0);
    CHECK(integrate(half, TabulatedFunction(two, {0.0, 1.0})) == 0.5);

    auto other = from_real_points({0.0, 2.0});
    CHECK_THROWS_AS(integrate(half, TabulatedFunction(other, {0.0, 1.0})), InputError);
}

TEST_CASE("probability construction tolerates file rounding, rejects drift") {
    auto two = from_real_points({0.0, 1.0});
    ProbabilityMeasure ok(two, {0.5, 0.5 + 5e-10});
    CHECK(std::fabs(ok[0] + ok[1] - 1.0) <= 1e-12);

    CHECK_THROWS_AS(ProbabilityMeasure(two, {0.5, 0.6}), InputError);
    CHECK_THROWS_AS(ProbabilityMeasure(two, {-0.1, 1.1}), InputError);
    ProbabilityMeasure clamped(two, {1.0, -1e-13}); // sign dust is clamped
    CHECK(clamped[1] == 0.0);
}

TEST_CASE("pushforward on identity, constant and merging maps") {
    auto three = from_real_points({0.0, 1.0, 2.0});
    SignedMeasure mu(three, {0.3, 0.2, 0.5});

    PointMap identity(three, three, {0, 1, 2});
    CHECK(pushforward(identity, mu).mass() == mu.mass());

    auto single = from_real_points({9.0});
    PointMap constant(three, single, {0, 0, 0});
    ProbabilityMeasure p(three, {0.3, 0.2, 0.5});
    CHECK(pushforward(constant, p).mass() == std::vector<double>{1.0});

    auto two = from_real_points({0.0, 1.0});
    PointMap merge(three, two, {0, 0, 1}); // first two points merge
    CHECK(pushforward(merge, mu).mass() == std::vector<double>{0.5, 0.5});
}

TEST_CASE("total variation norm") {
    auto two = from_real_points({0.0, 1.0});
    CHECK(total_variation_norm(SignedMeasure(two, {0.0, 0.0})) == 0.0);
    CHECK(total_variation_norm(point_mass(two, 0) - point_mass(two, 1)) == 2.0);
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto space = dltest::random_space(rng, rng.uniform_int(1, 8));
        CHECK(total_variation_norm(dltest::random_prob(rng, space).as_signed()) ==
              Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("property: pushforward is linear and functorial, and adjoint to composition") {
    SplitMix64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        auto A = dltest::random_space(rng, rng.uniform_int(1, 6));
        auto B = dltest::random_space(rng, rng.uniform_int(1, 6));
        auto C = dltest::random_space(rng, rng.uniform_int(1, 6));
        std::vector<int> ab(A->size()), bc(B->size());
        for (int& v : ab) v = rng.uniform_int(0, B->size() - 1);
        for (int& v : bc) v = rng.uniform_int(0, C->size() - 1);
        PointMap psi(A, B, ab), phi(B, C, bc);

        auto mu = dltest::random_signed(rng, A);
        auto nu = dltest::random_signed(rng, A);
        const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);

        // Linearity, exactly.
        auto lhs = pushforward(psi, a * mu + b * nu);
        auto rhs = a * pushforward(psi, mu) + b * pushforward(psi, nu);
        for (int i = 0; i < lhs.size(); ++i)
            CHECK(lhs[i] == Catch::Approx(rhs[i]).margin(1e-12));

        // Functoriality, exactly: both sides add the same masses.
        auto once = pushforward(compose(phi, psi), mu);
        auto twice = pushforward(phi, pushforward(psi, mu));
        CHECK(once.mass() == twice.mass());

        // Adjoint identity <phi# mu, g> = <mu, g o phi>.
        auto g = dltest::random_function(rng, B, 2.0);
        std::vector<double> pulled(A->size());
        for (int i = 0; i < A->size(); ++i) pulled[i] = g[psi.apply(i)];
        CHECK(integrate(pushforward(psi, mu), g) ==
              Catch::Approx(integrate(mu, TabulatedFunction(A, pulled))).margin(1e-12));
    }
}

TEST_CASE("property: integral bound |<mu,f>| <= sup|f| tv(mu)") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        auto space = dltest::random_space(rng, rng.uniform_int(1, 8));
        auto mu = dltest::random_signed(rng, space, 2.0);
        auto f = dltest::random_function(rng, space, 3.0);
        CHECK(std::fabs(integrate(mu, f)) <=
              f.sup_norm() * total_variation_norm(mu) + 1e-12);
    }
}

TEST_CASE("coupling validation") {
    auto two = from_real_points({0.0, 1.0});
    ProbabilityMeasure mu(two, {0.5, 0.5});
    ProbabilityMeasure nu(two, {1.0, 0.0});

    Coupling ok(mu, nu, {{0.5, 0.0}, {0.5, 0.0}});
    CHECK(ok.tail_mass(0.5) == 0.5);
    CHECK(ok.expected_truncated_distance(2.0) == 0.5);

    CHECK_THROWS_AS(Coupling(mu, nu, Matrix{{0.5, 0.0}, {0.0, 0.5}}), InputError);
    CHECK_THROWS_AS(Coupling(mu, nu, Matrix{{-0.5, 1.0}, {0.5, 0.0}}), InputError);

    Coupling t = ok.transposed();
    CHECK(t.plan()[0][0] == 0.5);
    CHECK(t.plan()[0][1] == 0.5);
}
