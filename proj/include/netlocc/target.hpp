// Target specifications on cycle networks: the graph, one positive-definite
// 4x4 operator H_j per party on that party's two cycle qubits, and the
// derived cycle layout. Party slot order is (forward, backward): the first
// slot holds the qubit shared with the next party around the cycle, the
// second the qubit shared with the previous party.
#pragma once

#include "netlocc/network.hpp"
#include "netlocc/standard_form.hpp"

namespace netlocc {

struct CycleLayout {
    std::vector<int> parties;    // cyclic order, starting at the smallest node id
    std::vector<int> edge_ids;   // edge_ids[k] joins parties[k] and parties[k+1 mod N]
    std::vector<bool> oriented;  // true when the edge is stored as (parties[k], next)

    int size() const { return static_cast<int>(parties.size()); }
    int index_of(int party) const {
        for (int i = 0; i < size(); ++i)
            if (parties[i] == party) return i;
        throw ValidationError("CycleLayout: unknown party " + std::to_string(party));
    }
    int next(int k) const { return (k + 1) % size(); }
    int prev(int k) const { return (k + size() - 1) % size(); }

    // qubit of parties[k] on its forward/backward edge
    std::string forward_label(int k) const {
        return NetworkGraph::qubit_label(edge_ids[k], parties[k]);
    }
    std::string backward_label(int k) const {
        return NetworkGraph::qubit_label(edge_ids[prev(k)], parties[k]);
    }
    std::vector<std::string> party_labels(int k) const {
        return {forward_label(k), backward_label(k)};
    }
};

inline CycleLayout cycle_layout(const NetworkGraph& g) {
    if (!g.is_cycle()) throw NotACycle("graph is not a single cycle");
    CycleLayout lay;
    int start = *std::min_element(g.nodes().begin(), g.nodes().end());
    int cur = start, prev_edge = -1;
    do {
        lay.parties.push_back(cur);
        for (const auto& e : g.edges()) {
            if (e.id == prev_edge) continue;
            if (e.a == cur || e.b == cur) {
                lay.edge_ids.push_back(e.id);
                lay.oriented.push_back(e.a == cur);
                prev_edge = e.id;
                cur = (e.a == cur) ? e.b : e.a;
                break;
            }
        }
    } while (cur != start);
    if (lay.parties.size() != g.nodes().size())
        throw NotACycle("cycle walk failed to cover all nodes");
    return lay;
}

struct TargetSpec {
    NetworkGraph graph;
    std::map<int, Matrix4> party_h;  // party -> H_j on (forward, backward); identity if absent

    Matrix4 h_of(int party) const {
        auto it = party_h.find(party);
        return it == party_h.end() ? Matrix4(Matrix4::Identity()) : it->second;
    }

    void validate() const {
        for (const auto& [p, h] : party_h) {
            bool found = false;
            for (int n : graph.nodes()) found = found || n == p;
            if (!found)
                throw ValidationError("TargetSpec: operator for unknown party " +
                                      std::to_string(p));
            if (!is_hermitian(h, 1e-8))
                throw ValidationError("TargetSpec: H for party " + std::to_string(p) +
                                      " is not Hermitian");
            Eigen::SelfAdjointEigenSolver<Matrix4> es(h);
            if (es.eigenvalues().minCoeff() <= 0)
                throw NotPositiveDefinite("TargetSpec: H for party " + std::to_string(p) +
                                          " is not positive definite");
        }
    }
};

// Normalized target state (tensor of h_j = sqrt(H_j) applied to the network).
inline PureState target_state(const TargetSpec& spec) {
    PureState psi = build_network_state(spec.graph);
    CycleLayout lay = cycle_layout(spec.graph);
    for (int k = 0; k < lay.size(); ++k) {
        Matrix4 h = spec.h_of(lay.parties[k]);
        apply_local(psi, sqrt_psd(h), lay.party_labels(k));
    }
    psi.normalize();
    return psi;
}

// ---------------------------------------------------------------------------
// Source-convention canonicalization. |Phi+> = (1 (x) eps)|Psi->, so a Phi+
// edge becomes a Psi- edge by absorbing eps = [[0,1],[-1,0]] into the party
// holding the edge's second endpoint. The returned per-party unitaries W_j
// relate the states: |net_original> = (x)_j W_j |net_psi-> and
// h_j^psi = h_j W_j, i.e. H_j^psi = W_j^dag H_j W_j.

struct PsiMinusForm {
    TargetSpec spec;                 // all edges Psi-
    std::map<int, Matrix4> twists;   // W_j on party slots (forward, backward)
};

inline PsiMinusForm to_psi_minus(const TargetSpec& in) {
    CycleLayout lay = cycle_layout(in.graph);
    std::map<int, Matrix4> twists;
    for (int p : in.graph.nodes()) twists[p] = Matrix4::Identity();

    std::vector<Edge> new_edges;
    for (const auto& e : in.graph.edges()) {
        Edge ne = e;
        if (e.source == SourceKind::PhiPlus) {
            ne.source = SourceKind::PsiMinus;
            // eps acts on the qubit e^{b}: find whether that is the forward or
            // backward slot of party e.b
            int k = lay.index_of(e.b);
            bool is_forward = lay.forward_label(k) == NetworkGraph::qubit_label(e.id, e.b);
            Matrix4 w = is_forward ? kron(epsilon(), Matrix2::Identity())
                                   : kron(Matrix2::Identity(), epsilon());
            twists[e.b] = twists[e.b] * w;
        }
        new_edges.push_back(ne);
    }

    PsiMinusForm out;
    out.spec.graph = NetworkGraph(in.graph.nodes(), new_edges);
    for (int p : in.graph.nodes()) {
        Matrix4 h = in.h_of(p);
        out.spec.party_h[p] = twists[p].adjoint() * h * twists[p];
    }
    out.twists = std::move(twists);
    return out;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class ReachStatus { Unreachable, SimpleReachable, NotSimpleReachable, Inconclusive };

inline std::string to_string(ReachStatus s) {
    switch (s) {
        case ReachStatus::Unreachable: return "Unreachable";
        case ReachStatus::SimpleReachable: return "SimpleReachable";
        case ReachStatus::NotSimpleReachable: return "NotSimpleReachable";
        case ReachStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

// One mixing element: a full edge assignment together with its restriction to
// the measuring party (pair on (backward, forward) slots as (x_prev, x_fwd)).
struct MixingElement {
    std::map<int, Matrix2> edge_assignment;  // det-normalized values per edge id
    Matrix2 x_forward;   // value on edge e_k (party k's forward slot)
    Matrix2 x_backward;  // value on edge e_{k-1} (party k's backward slot)
};

struct MixingSolution {
    int party_k = 0;
    std::vector<MixingElement> elements;
    Eigen::VectorXd probabilities;  // sum 1
    double r = 1.0;
    Matrix4 g;                      // target of the mixing, r g = sum p S^dag H S
    double residual = 0.0;          // defining-equation residual, relative
};

struct Verdict {
    ReachStatus status = ReachStatus::Inconclusive;
    int party_k = -1;                   // for SimpleReachable
    Matrix2 a, b;                       // product factors of G_k (backward/forward)
    std::optional<MixingSolution> mixing;
    std::map<std::string, double> residuals;
    std::vector<std::string> notes;     // per-party exactness ledger and remarks
};

}  // namespace netlocc
