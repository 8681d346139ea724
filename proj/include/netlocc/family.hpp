// Consistent final-round symmetry families around a cycle. Fixing the
// measuring party k, a network symmetry assigns one matrix per edge and must
// stabilize H_j at every other party j; the stabilizer structure links each
// party's backward edge value to its forward edge value, either
// deterministically (conjugation) or through a fresh free parameter. The
// family is a finite union of components, each a chain of rules over the
// edges e_k, e_{k+1}, ..., e_{k-1}.
#pragma once

#include "netlocc/stabilizer.hpp"
#include "netlocc/target.hpp"

namespace netlocc {

struct FamilyComponent {
    // One rule per chain edge. rules[0] always starts a generator.
    struct EdgeRule {
        bool starts_generator;
        MatrixSet set;   // generator value set (post intersection)
        Matrix2 conj;    // dependent edges: value = conj * previous * conj^{-1}
    };
    std::vector<EdgeRule> rules;

    int last_generator() const {
        for (int t = static_cast<int>(rules.size()) - 1; t >= 0; --t)
            if (rules[t].starts_generator) return t;
        return 0;
    }
    // true when one generator drives both chain ends
    bool linked() const { return last_generator() == 0; }
    // conjugator carrying the last generator's value to the final edge
    Matrix2 end_conjugator() const {
        Matrix2 c = Matrix2::Identity();
        for (size_t t = last_generator() + 1; t < rules.size(); ++t) c = rules[t].conj * c;
        return c;
    }
};

struct SymmetryFamily {
    int party_k;                 // measuring party (node id)
    int k_index;                 // its index in the cycle layout
    std::vector<int> chain_edges;  // edge ids, e_k first, e_{k-1} last
    std::vector<FamilyComponent> components;
    std::map<int, StabilizerGroup> stabilizers;  // per constrained party
};

// Computes the family for measuring party k on a Psi- cycle spec. Standard
// forms of the other parties are computed on the way (degeneracy_tol feeds
// the classification).
inline SymmetryFamily final_round_candidates(const TargetSpec& spec, int party_k,
                                             double tol = 1e-9,
                                             double degeneracy_tol = kDegeneracyTol) {
    spec.validate();
    CycleLayout lay = cycle_layout(spec.graph);
    for (const auto& e : spec.graph.edges())
        if (e.source != SourceKind::PsiMinus)
            throw ValidationError(
                "final_round_candidates: spec must be in the Psi- convention "
                "(use to_psi_minus first)");
    const int n = lay.size();
    const int kx = lay.index_of(party_k);

    SymmetryFamily fam;
    fam.party_k = party_k;
    fam.k_index = kx;
    for (int t = 0; t < n; ++t) fam.chain_edges.push_back(lay.edge_ids[(kx + t) % n]);

    for (int t = 1; t < n; ++t) {
        int party = lay.parties[(kx + t) % n];
        fam.stabilizers.emplace(party,
                                stabilizer(bell_diagonalize(spec.h_of(party), tol,
                                                            degeneracy_tol)));
    }

    // seed components from the first constrained party's branches
    struct Partial {
        FamilyComponent comp;
        int active_gen;       // rule index of the active generator
        Matrix2 from_gen;     // conjugator from the active generator to the current edge
    };
    std::vector<Partial> work;
    {
        int party1 = lay.parties[(kx + 1) % n];
        for (const auto& br : fam.stabilizers.at(party1).propagation_branches()) {
            Partial p;
            p.comp.rules.push_back({true, br.y_set, Matrix2::Identity()});
            p.active_gen = 0;
            p.from_gen = Matrix2::Identity();
            if (br.deterministic) {
                p.comp.rules.push_back({false, {}, br.conj});
                p.from_gen = br.conj;
            } else {
                p.comp.rules.push_back({true, br.x_set, Matrix2::Identity()});
                p.active_gen = 1;
                p.from_gen = Matrix2::Identity();
            }
            work.push_back(std::move(p));
        }
    }

    for (int t = 2; t < n; ++t) {
        int party = lay.parties[(kx + t) % n];
        const auto& grp = fam.stabilizers.at(party);
        std::vector<Partial> next;
        for (const auto& partial : work) {
            for (const auto& br : grp.propagation_branches()) {
                // the incoming value is from_gen * g * from_gen^{-1}; constrain it
                MatrixSet image = partial.comp.rules[partial.active_gen].set.conjugated(
                    partial.from_gen);
                for (const auto& piece : intersect(image, br.y_set, tol)) {
                    Partial p = partial;
                    p.comp.rules[p.active_gen].set =
                        piece.conjugated(Matrix2(partial.from_gen.inverse()));
                    if (br.deterministic) {
                        p.comp.rules.push_back({false, {}, br.conj});
                        p.from_gen = br.conj * p.from_gen;
                    } else {
                        p.comp.rules.push_back({true, br.x_set, Matrix2::Identity()});
                        p.active_gen = static_cast<int>(p.comp.rules.size()) - 1;
                        p.from_gen = Matrix2::Identity();
                    }
                    next.push_back(std::move(p));
                }
            }
        }
        work = std::move(next);
    }

    for (auto& p : work) fam.components.push_back(std::move(p.comp));
    return fam;
}

// ---------------------------------------------------------------------------
// Concrete members. Generators at the chain ends are sampled on grids (the
// induced action on party k only depends on those); interior generators take
// a single representative.

struct FamilyColumnOptions {
    int circle_points = 8;
    size_t max_columns = 4096;
    bool clifford_grid_for_linked = true;
};

inline std::vector<MixingElement> family_columns(const SymmetryFamily& fam,
                                                 const TargetSpec& spec,
                                                 const FamilyColumnOptions& opts = {},
                                                 bool* capped = nullptr) {
    CycleLayout lay = cycle_layout(spec.graph);
    const int n = lay.size();
    std::vector<MixingElement> columns;
    if (capped) *capped = false;

    auto push_column = [&](const std::vector<Matrix2>& values) {
        if (columns.size() >= opts.max_columns) {
            if (capped) *capped = true;
            return;
        }
        MixingElement el;
        for (int t = 0; t < n; ++t)
            el.edge_assignment[fam.chain_edges[t]] = normalize_det(values[t]);
        el.x_forward = el.edge_assignment.at(fam.chain_edges.front());
        el.x_backward = el.edge_assignment.at(fam.chain_edges.back());
        // drop projective duplicates of the induced pair
        for (const auto& have : columns)
            if (proj_equal(have.x_forward, el.x_forward) &&
                proj_equal(have.x_backward, el.x_backward))
                return;
        columns.push_back(std::move(el));
    };

    for (const auto& comp : fam.components) {
        const int last_gen = comp.last_generator();
        // choose grids per generator
        std::vector<int> gens;
        for (int t = 0; t < static_cast<int>(comp.rules.size()); ++t)
            if (comp.rules[t].starts_generator) gens.push_back(t);

        std::vector<std::vector<Matrix2>> grids(gens.size());
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            int t = gens[gi];
            bool endpoint = (t == 0 || t == last_gen);
            if (!endpoint) {
                auto grid = comp.rules[t].set.sample_grid(1, false);
                grids[gi] = {grid.front()};
                continue;
            }
            bool use_cliffords =
                comp.linked() && opts.clifford_grid_for_linked &&
                comp.rules[t].set.kind == MatrixSet::Kind::UnitaryConj;
            grids[gi] = comp.rules[t].set.sample_grid(opts.circle_points, use_cliffords);
        }

        // cartesian product over generator grids
        std::vector<size_t> idx(gens.size(), 0);
        for (;;) {
            std::vector<Matrix2> values(comp.rules.size());
            size_t gi = 0;
            for (int t = 0; t < static_cast<int>(comp.rules.size()); ++t) {
                if (comp.rules[t].starts_generator) {
                    values[t] = grids[gi][idx[gi]];
                    ++gi;
                } else {
                    values[t] = comp.rules[t].conj * values[t - 1] *
                                comp.rules[t].conj.inverse();
                }
            }
            push_column(values);
            // advance
            size_t pos = 0;
            while (pos < idx.size()) {
                if (++idx[pos] < grids[pos].size()) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos == idx.size()) break;
            if (columns.size() >= opts.max_columns) break;
        }
    }
    return columns;
}

// Proportionality check of one assignment at every constrained party;
// returns the worst residual.
inline double family_member_residual(const TargetSpec& spec, const SymmetryFamily& fam,
                                     const MixingElement& el) {
    CycleLayout lay = cycle_layout(spec.graph);
    const int n = lay.size();
    double worst = 0;
    for (int t = 1; t < n; ++t) {
        int pi = (fam.k_index + t) % n;
        int party = lay.parties[pi];
        Matrix2 xf = el.edge_assignment.at(lay.edge_ids[pi]);
        Matrix2 xb = el.edge_assignment.at(lay.edge_ids[lay.prev(pi)]);
        worst = std::max(worst, stabilizer_residual(spec.h_of(party), xf, xb));
    }
    return worst;
}

}  // namespace netlocc
