#include <catch2/catch_amalgamated.hpp>

#include "netlocc/lp.hpp"

using namespace netlocc;

TEST_CASE("simple feasible system") {
    Eigen::MatrixXd a(2, 3);
    a << 1, 1, 0,
         0, 1, 1;
    Eigen::VectorXd b(2);
    b << 1, 1;
    auto r = solve_nonnegative(a, b);
    REQUIRE(r.feasible);
    REQUIRE(r.residual < 1e-10);
    REQUIRE(r.q.minCoeff() >= 0);
}

TEST_CASE("infeasible by sign") {
    Eigen::MatrixXd a(1, 2);
    a << 1, 2;
    Eigen::VectorXd b(1);
    b << -1;
    auto r = solve_nonnegative(a, b);
    REQUIRE_FALSE(r.feasible);
}

TEST_CASE("equality forcing a unique combination") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 0,
         0, 1;
    Eigen::VectorXd b(2);
    b << 0.25, 0.75;
    auto r = solve_nonnegative(a, b);
    REQUIRE(r.feasible);
    REQUIRE(std::abs(r.q(0) - 0.25) < 1e-10);
    REQUIRE(std::abs(r.q(1) - 0.75) < 1e-10);
}

TEST_CASE("infeasible within the nonnegative cone") {
    // b outside the cone of the columns
    Eigen::MatrixXd a(2, 2);
    a << 1, 0,
         0, 1;
    Eigen::VectorXd b(2);
    b << 1, -0.5;
    auto r = solve_nonnegative(a, b);
    REQUIRE_FALSE(r.feasible);
}

TEST_CASE("random feasibility round trips") {
    Rng rng(509);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        int m = 5, n = 8;
        Eigen::MatrixXd a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = 2.0 * u(rng) - 1.0;
        Eigen::VectorXd q0(n);
        for (int j = 0; j < n; ++j) q0(j) = u(rng);
        Eigen::VectorXd b = a * q0;
        auto r = solve_nonnegative(a, b);
        REQUIRE(r.feasible);
        REQUIRE(r.residual < 1e-8);
    }
}

TEST_CASE("degenerate rows are tolerated") {
    Eigen::MatrixXd a(3, 2);
    a << 1, 1,
         1, 1,
         0, 1;
    Eigen::VectorXd b(3);
    b << 2, 2, 1;
    auto r = solve_nonnegative(a, b);
    REQUIRE(r.feasible);
    REQUIRE(std::abs(r.q(0) - 1.0) < 1e-9);
    REQUIRE(std::abs(r.q(1) - 1.0) < 1e-9);
}
