// Separability-style necessary condition for finite-round reachability: a
// probability mixture of symmetry-conjugated copies of H = (x)_j H_j must
// reproduce the identity, sum_i p_i S_i^dag H S_i = r 1. For product H and
// product candidates the feasibility problem is solved in a Gram-coordinate
// basis, so the full network operators are never formed.
#pragma once

#include "netlocc/lp.hpp"
#include "netlocc/target.hpp"

namespace netlocc {

struct SepResult {
    bool feasible = false;
    Eigen::VectorXd probabilities;  // over the candidate list
    double r = 0.0;
    double residual = 0.0;          // || sum p S^dag H S - r 1 || / || r 1 ||
};

namespace detail {

// Per-party conjugated blocks A^{(j)} = S^{(j) dag} H_j S^{(j)} for one edge
// assignment, in (forward, backward) slot order.
inline std::vector<Matrix4> party_blocks(const TargetSpec& spec, const CycleLayout& lay,
                                         const EdgeSymmetry& sym) {
    std::vector<Matrix4> blocks;
    for (int k = 0; k < lay.size(); ++k) {
        int fwd_edge = lay.edge_ids[k];
        int bwd_edge = lay.edge_ids[lay.prev(k)];
        const Edge& fe = spec.graph.edge(fwd_edge);
        const Edge& be = spec.graph.edge(bwd_edge);
        // factor on this party's slot of each edge: first endpoint carries X,
        // second carries the partner
        Matrix2 xf = (fe.a == lay.parties[k])
                         ? sym.at(fwd_edge)
                         : EdgeSymmetry::partner(sym.at(fwd_edge), fe.source);
        Matrix2 xb = (be.a == lay.parties[k])
                         ? sym.at(bwd_edge)
                         : EdgeSymmetry::partner(sym.at(bwd_edge), be.source);
        Matrix4 s = kron(xf, xb);
        blocks.push_back(s.adjoint() * spec.h_of(lay.parties[k]) * s);
    }
    return blocks;
}

}  // namespace detail

// LP feasibility of the mixture condition over a finite candidate list.
// Every candidate must already be a verified symmetry of the network state.
inline SepResult check_sep_condition(const TargetSpec& spec,
                                     const std::vector<EdgeSymmetry>& candidates,
                                     double tol = 1e-9, bool verify_candidates = true) {
    if (candidates.empty())
        throw EmptyCandidateSet("check_sep_condition: no candidate symmetries");
    spec.validate();
    CycleLayout lay = cycle_layout(spec.graph);
    const int m = static_cast<int>(candidates.size());
    const int np = lay.size();

    if (verify_candidates)
        for (const auto& s : candidates) {
            auto chk = verify_symmetry(s, spec.graph, 1e-8);
            if (!chk.holds)
                throw ValidationError(
                    "check_sep_condition: candidate is not a symmetry, residual " +
                    std::to_string(chk.residual));
        }

    // blocks[i][j]: party-j block of candidate i; index m is the identity target
    std::vector<std::vector<Matrix4>> blocks;
    blocks.reserve(m + 1);
    for (const auto& cand : candidates)
        blocks.push_back(detail::party_blocks(spec, lay, cand));
    blocks.push_back(std::vector<Matrix4>(np, Matrix4::Identity()));

    // Gram matrix of the tensor-product vectors: inner products multiply per party
    Eigen::MatrixXd gram(m + 1, m + 1);
    for (int i = 0; i <= m; ++i)
        for (int j = i; j <= m; ++j) {
            double val = 1.0;
            for (int k = 0; k < np; ++k)
                val *= ((blocks[i][k].adjoint() * blocks[j][k]).trace()).real();
            gram(i, j) = gram(j, i) = val;
        }

    // coordinates: gram = C^T C via eigendecomposition, drop null directions
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 1e-12 * scale) keep.push_back(i);
    Eigen::MatrixXd coords(static_cast<int>(keep.size()), m + 1);
    for (size_t r = 0; r < keep.size(); ++r)
        coords.row(static_cast<int>(r)) =
            std::sqrt(es.eigenvalues()(keep[r])) * es.eigenvectors().col(keep[r]).transpose();

    // find q >= 0 with sum_i q_i v_i = v_identity
    Eigen::MatrixXd a = coords.leftCols(m);
    Eigen::VectorXd b = coords.col(m);
    LpResult lp = solve_nonnegative(a, b, tol);

    SepResult out;
    if (!lp.feasible) return out;
    double qsum = lp.q.sum();
    if (qsum <= 0) return out;
    out.feasible = true;
    out.probabilities = lp.q / qsum;
    out.r = 1.0 / qsum;

    // Residual of the defining equation. The solution is basic, hence sparse;
    // accumulate the mixed operator directly over the support when the
    // network is small enough, otherwise fall back on the Gram quadratic form
    // (which carries cancellation noise of order eps * ||v||^2).
    const Eigen::Index dim = Eigen::Index(1) << (2 * np);
    std::vector<int> support;
    for (int i = 0; i < m; ++i)
        if (lp.q(i) > 1e-14 * lp.q.maxCoeff()) support.push_back(i);
    if (dim <= 1024 && support.size() <= 512) {
        Matrix mixed = Matrix::Zero(dim, dim);
        for (int i : support) {
            Matrix acc = Matrix::Identity(1, 1);
            for (int k = 0; k < np; ++k) acc = kron(acc, blocks[i][k]);
            mixed += lp.q(i) * acc;
        }
        mixed -= Matrix::Identity(dim, dim);
        out.residual = mixed.norm() / std::sqrt(static_cast<double>(dim));
    } else {
        Eigen::VectorXd qx(m + 1);
        qx.head(m) = lp.q;
        qx(m) = -1.0;
        double err2 = qx.dot(gram * qx);
        out.residual = std::sqrt(std::max(0.0, err2) / gram(m, m));
    }
    return out;
}

// All Pauli edge assignments (X_e in {1, i sx, i sy, i sz}); 4^|E| candidates.
inline std::vector<EdgeSymmetry> pauli_grid_candidates(const NetworkGraph& graph) {
    const std::vector<Matrix2> options = {
        Matrix2::Identity(), Complex(0, 1) * sigma_x(), Complex(0, 1) * sigma_y(),
        Complex(0, 1) * sigma_z()};
    size_t ne = graph.edges().size();
    size_t total = 1;
    for (size_t i = 0; i < ne; ++i) total *= options.size();
    std::vector<EdgeSymmetry> out;
    out.reserve(total);
    for (size_t code = 0; code < total; ++code) {
        std::map<int, Matrix2> assign;
        size_t c = code;
        for (const auto& e : graph.edges()) {
            assign[e.id] = options[c % options.size()];
            c /= options.size();
        }
        out.emplace_back(graph, std::move(assign));
    }
    return out;
}

}  // namespace netlocc
