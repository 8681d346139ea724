// Dense phase-1 simplex for the tiny feasibility problems in this project:
// find q >= 0 with A q = b. Bland's rule, artificial-variable start.
#pragma once

#include "netlocc/core.hpp"

namespace netlocc {

struct LpResult {
    bool feasible = false;
    Eigen::VectorXd q;       // nonnegative solution when feasible
    double phase1_objective = 0.0;
    double residual = 0.0;   // ||A q - b||
};

inline LpResult solve_nonnegative(Eigen::MatrixXd a, Eigen::VectorXd b,
                                  double tol = 1e-9) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());

    // row scaling for conditioning
    for (int i = 0; i < m; ++i) {
        double s = std::max(a.row(i).cwiseAbs().maxCoeff(), std::abs(b(i)));
        if (s > 0) {
            a.row(i) /= s;
            b(i) /= s;
        }
    }
    for (int i = 0; i < m; ++i)
        if (b(i) < 0) {
            a.row(i) *= -1;
            b(i) *= -1;
        }

    // tableau with artificial identity block
    Eigen::MatrixXd t(m, n + m);
    t.leftCols(n) = a;
    t.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd rhs = b;
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
    cost.tail(m).setOnes();

    const int max_iter = 20000;
    const double piv_tol = 1e-11;
    for (int it = 0; it < max_iter; ++it) {
        // reduced costs: c_j - c_B^T B^{-1} A_j; with explicit tableau the basis
        // columns stay as updated columns, so track y = c_B applied to rows
        Eigen::VectorXd cb(m);
        for (int i = 0; i < m; ++i) cb(i) = cost(basis[i]);
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            double rc = cost(j) - cb.dot(t.col(j));
            if (rc < -tol * 1e-2) { enter = j; break; }  // Bland: smallest index
        }
        if (enter < 0) break;
        int leave = -1;
        double best = 0;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) > piv_tol) {
                double ratio = rhs(i) / t(i, enter);
                if (leave < 0 || ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) break;  // unbounded direction cannot happen in phase 1
        // pivot
        double p = t(leave, enter);
        t.row(leave) /= p;
        rhs(leave) /= p;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            double f = t(i, enter);
            if (f != 0.0) {
                t.row(i) -= f * t.row(leave);
                rhs(i) -= f * rhs(leave);
            }
        }
        basis[leave] = enter;
    }

    LpResult out;
    double artificial_sum = 0;
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        if (basis[i] >= n)
            artificial_sum += rhs(i);
        else
            q(basis[i]) = rhs(i);
    }
    out.phase1_objective = artificial_sum;
    out.q = q.cwiseMax(0.0);
    out.residual = (a * out.q - b).norm();
    out.feasible = artificial_sum <= tol && out.residual <= std::sqrt(tol);
    return out;
}

}  // namespace netlocc
