// Operator Schmidt decompositions via realignment, and the constructive
// factorization solver: if X_{AB} Z_{BC} = Y_{AC} (x) 1_B with B a qubit and
// X, Z invertible, both X and Z factorize across their cuts; the solver
// recovers the factors and reports a violated premise otherwise.
#pragma once

#include "netlocc/core.hpp"
#include "netlocc/register.hpp"

namespace netlocc {

// Realigned matrix R[(a,a'),(b,b')] = X[(a,b),(a',b')] for X on A (x) B.
inline Matrix realign(const Matrix& x, Eigen::Index da, Eigen::Index db) {
    if (x.rows() != da * db || x.cols() != da * db)
        throw ValidationError("realign: dimension mismatch");
    Matrix r(da * da, db * db);
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index ap = 0; ap < da; ++ap)
            for (Eigen::Index b = 0; b < db; ++b)
                for (Eigen::Index bp = 0; bp < db; ++bp)
                    r(a * da + ap, b * db + bp) = x(a * db + b, ap * db + bp);
    return r;
}

struct OperatorSchmidt {
    std::vector<double> weights;   // singular values, descending
    std::vector<Matrix> a_factors; // on A, Frobenius-normalized
    std::vector<Matrix> b_factors; // on B, Frobenius-normalized
};

// X = sum_i weights[i] * A_i (x) B_i with <A_i,A_j> = <B_i,B_j> = delta_ij.
inline OperatorSchmidt operator_schmidt(const Matrix& x, Eigen::Index da, Eigen::Index db) {
    Matrix r = realign(x, da, db);
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    OperatorSchmidt out;
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        out.weights.push_back(s(i));
        Matrix a(da, da), b(db, db);
        for (Eigen::Index p = 0; p < da; ++p)
            for (Eigen::Index q = 0; q < da; ++q) a(p, q) = svd.matrixU()(p * da + q, i);
        for (Eigen::Index p = 0; p < db; ++p)
            for (Eigen::Index q = 0; q < db; ++q) b(p, q) = std::conj(svd.matrixV()(p * db + q, i));
        out.a_factors.push_back(std::move(a));
        out.b_factors.push_back(std::move(b));
    }
    return out;
}

// Number of operator Schmidt coefficients above tol (relative to the largest).
inline int operator_schmidt_rank(const Matrix& x, Eigen::Index da, Eigen::Index db,
                                 double tol = kDefaultTol) {
    auto os = operator_schmidt(x, da, db);
    if (os.weights.empty() || os.weights[0] == 0) return 0;
    int rank = 0;
    for (double w : os.weights)
        if (w > tol * os.weights[0]) ++rank;
    return rank;
}

// Cut given by labels: A = labels in `first`, B = the rest, both contiguous in
// register order is NOT required; the operator is permuted internally.
inline int operator_schmidt_rank(const Matrix& op, const std::vector<std::string>& first,
                                 const QubitRegister& reg, double tol = kDefaultTol) {
    std::vector<std::string> order = first;
    for (const auto& l : reg.labels())
        if (std::find(first.begin(), first.end(), l) == first.end()) order.push_back(l);
    QubitRegister permuted(order);
    // Permute by embedding the operator into the permuted register.
    Matrix op2 = embed(op, reg.labels(), permuted);
    return operator_schmidt_rank(op2, Eigen::Index(1) << first.size(),
                                 Eigen::Index(1) << (reg.size() - first.size()), tol);
}

struct ProductFactors {
    Matrix a, b;
    double residual;  // || X - a (x) b || / || X ||
};

// Factor X ~ a (x) b by rank-1 operator Schmidt truncation. Gauge: the B-side
// factor has Frobenius norm sqrt(dim_B) and its largest entry is real positive.
inline ProductFactors factor_product_operator(const Matrix& x, Eigen::Index da,
                                              Eigen::Index db) {
    auto os = operator_schmidt(x, da, db);
    if (os.weights.empty() || os.weights[0] == 0)
        throw ValidationError("factor_product_operator: zero operator");
    Matrix a = os.weights[0] * os.a_factors[0];
    Matrix b = os.b_factors[0];
    // gauge fixing
    double target = std::sqrt(static_cast<double>(db));
    double nb = b.norm();
    a *= nb / target;
    b *= target / nb;
    Eigen::Index bi = 0, bj = 0;
    b.cwiseAbs().maxCoeff(&bi, &bj);
    Complex ph = b(bi, bj) / std::abs(b(bi, bj));
    b /= ph;
    a *= ph;
    double res = (x - kron(a, b)).norm() / x.norm();
    return {std::move(a), std::move(b), res};
}

struct BipartiteFactorization {
    Matrix x_a, x_b;  // X ~ x_a (x) x_b
    Matrix z_b, z_c;  // Z ~ z_b (x) z_c
    double premise_residual;        // || X Z - Y (x) 1_B || / || X Z ||
    double reconstruction_residual; // max of the two product residuals
};

// Solves the factorization problem for X on A|B and Z on B|C (B a qubit).
// Premise: (X (x) 1_C)(1_A (x) Z) = Y_{AC} (x) 1_B for some Y. Throws
// PremiseViolated (with the residual in the message) when the product fails
// that form, NotInvertible when X or Z is singular.
inline BipartiteFactorization factorize_bipartite(const Matrix& x, const Matrix& z,
                                                  Eigen::Index da, Eigen::Index dc,
                                                  double tol = kDefaultTol) {
    const Eigen::Index db = 2;
    if (x.rows() != da * db || z.rows() != db * dc)
        throw ValidationError("factorize_bipartite: dimension mismatch");
    if (!is_invertible(x)) throw NotInvertible("factorize_bipartite: X is singular");
    if (!is_invertible(z)) throw NotInvertible("factorize_bipartite: Z is singular");

    // Product on A (x) B (x) C, then test the Y (x) 1_B form across the B cut.
    Matrix xe = kron(x, Matrix::Identity(dc, dc));
    Matrix ze = kron(Matrix::Identity(da, da), z);
    Matrix p = xe * ze;

    // Reduce over B: indices (a,b,c). Y[(a,c),(a',c')] = (1/2) sum_b P[(a,b,c),(a',b,c')].
    Matrix y = Matrix::Zero(da * dc, da * dc);
    auto idx = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) {
        return (a * db + b) * dc + c;
    };
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index ap = 0; ap < da; ++ap)
            for (Eigen::Index c = 0; c < dc; ++c)
                for (Eigen::Index cp = 0; cp < dc; ++cp) {
                    Complex acc(0, 0);
                    for (Eigen::Index b = 0; b < db; ++b)
                        acc += p(idx(a, b, c), idx(ap, b, cp));
                    y(a * dc + c, ap * dc + cp) = acc / 2.0;
                }
    Matrix yfull = Matrix::Zero(p.rows(), p.cols());
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index ap = 0; ap < da; ++ap)
            for (Eigen::Index c = 0; c < dc; ++c)
                for (Eigen::Index cp = 0; cp < dc; ++cp)
                    for (Eigen::Index b = 0; b < db; ++b)
                        yfull(idx(a, b, c), idx(ap, b, cp)) = y(a * dc + c, ap * dc + cp);
    double premise_res = (p - yfull).norm() / p.norm();
    if (premise_res > tol)
        throw PremiseViolated("factorize_bipartite: product is not of the form Y (x) 1_B, residual " +
                              std::to_string(premise_res));

    auto fx = factor_product_operator(x, da, db);
    auto fz = factor_product_operator(z, db, dc);
    if (fx.residual > tol || fz.residual > tol)
        throw PremiseViolated("factorize_bipartite: operand does not factorize, residuals " +
                              std::to_string(fx.residual) + ", " + std::to_string(fz.residual));
    return {fx.a, fx.b, fz.a, fz.b, premise_res, std::max(fx.residual, fz.residual)};
}

}  // namespace netlocc
