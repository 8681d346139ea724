#include <catch2/catch_amalgamated.hpp>

#include "netlocc/obstruction.hpp"

using namespace netlocc;

TEST_CASE("obstruction value at the identity") {
    // first bracket vanishes at the identity; second is (0 + 4) * prod alpha
    double v = obstruction_value(Matrix2::Identity(), {0.1, 0.1, 0.1});
    REQUIRE(std::abs(v - 0.004) < 1e-15);
}

TEST_CASE("obstruction value for a diagonal filter") {
    Matrix2 x = (Matrix2() << 2.0, 0, 0, 0.5).finished();
    double v = obstruction_value(x, {0.1, 0.1, 0.1});
    // (1/64)(4.25^2 - 4) + ((4 - 0.25)^2 + 4) * 0.001, computed independently
    double expect = (4.25 * 4.25 - 4.0) / 64.0 + (3.75 * 3.75 + 4.0) * 0.001;
    REQUIRE(std::abs(v - expect) < 1e-12);
    REQUIRE(v > 0);
}

TEST_CASE("obstruction value positive on random unit-determinant samples") {
    Rng rng(601);
    std::vector<double> alphas = {0.1, 0.1, 0.1};
    double min_seen = 1e300;
    for (int t = 0; t < 10000; ++t) {
        Matrix2 x = random_sl2(rng);
        double v = obstruction_value(x, alphas);
        min_seen = std::min(min_seen, v);
    }
    REQUIRE(min_seen > 0);
}

TEST_CASE("obstruction rejects non-unit determinant") {
    REQUIRE_THROWS_AS(obstruction_value(Matrix2(2.0 * Matrix2::Identity()), {0.1}), DetNotOne);
}

TEST_CASE("cycle certificate") {
    auto c = zz_cycle_certificate({0.1, 0.1, 0.1});
    REQUIRE(c.status == ReachStatus::Unreachable);

    c = zz_cycle_certificate({0.1, -0.1, 0.1});
    REQUIRE(c.status == ReachStatus::Inconclusive);

    c = zz_cycle_certificate({0.2, 0.2, 0.05, 0.05});
    REQUIRE(c.status == ReachStatus::Unreachable);

    REQUIRE_THROWS_AS(zz_cycle_certificate({0.3, 0.1, 0.1}), NotPositiveDefinite);
}

TEST_CASE("alpha extraction from a matching spec") {
    TargetSpec spec;
    spec.graph = cycle_graph(3, SourceKind::PsiMinus);
    for (int p = 1; p <= 3; ++p)
        spec.party_h[p] = 0.25 * Matrix4::Identity() + 0.1 * kron(sigma_z(), sigma_z());
    auto alphas = extract_zz_alphas(spec);
    REQUIRE(alphas.has_value());
    for (double a : *alphas) REQUIRE(std::abs(a - 0.1) < 1e-12);

    // scale invariance per party
    spec.party_h[2] *= 3.0;
    alphas = extract_zz_alphas(spec);
    REQUIRE(alphas.has_value());
    REQUIRE(std::abs((*alphas)[1] - 0.1) < 1e-12);

    // non-matching pattern
    spec.party_h[1] += 0.05 * kron(sigma_x(), sigma_x());
    REQUIRE_FALSE(extract_zz_alphas(spec).has_value());
}
