// Qubit-labeled registers, pure states, and index bookkeeping: operator
// embedding, matrix-free local application, partial trace and partial
// transpose. Register order is canonical; labels[0] is the most significant
// bit of the amplitude index.
#pragma once

#include <algorithm>
#include <unordered_map>

#include "netlocc/core.hpp"

namespace netlocc {

class QubitRegister {
public:
    QubitRegister() = default;
    explicit QubitRegister(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second)
                throw ValidationError("QubitRegister: duplicate label '" + labels_[i] + "'");
        }
    }

    size_t size() const { return labels_.size(); }
    Eigen::Index dim() const { return Eigen::Index(1) << labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(size_t i) const { return labels_.at(i); }

    bool contains(const std::string& l) const { return index_.count(l) != 0; }
    size_t position(const std::string& l) const {
        auto it = index_.find(l);
        if (it == index_.end()) throw ValidationError("QubitRegister: unknown label '" + l + "'");
        return it->second;
    }

    bool operator==(const QubitRegister& o) const { return labels_ == o.labels_; }
    bool operator!=(const QubitRegister& o) const { return !(*this == o); }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, size_t> index_;
};

struct PureState {
    QubitRegister reg;
    Vector amplitudes;

    PureState() = default;
    PureState(QubitRegister r, Vector a) : reg(std::move(r)), amplitudes(std::move(a)) {
        if (amplitudes.size() != reg.dim())
            throw ValidationError("PureState: amplitude count does not match register");
    }

    double norm() const { return amplitudes.norm(); }
    void normalize() {
        double n = norm();
        if (n < 1e-300) throw ValidationError("PureState: cannot normalize zero vector");
        amplitudes /= n;
    }
};

namespace detail {

// Bit of label position p (0 = most significant) within index i of an n-qubit register.
inline int bit_at(Eigen::Index i, size_t p, size_t n) {
    return static_cast<int>((i >> (n - 1 - p)) & 1);
}

inline std::vector<size_t> positions_of(const QubitRegister& reg,
                                        const std::vector<std::string>& labels) {
    std::vector<size_t> pos;
    pos.reserve(labels.size());
    for (const auto& l : labels) pos.push_back(reg.position(l));
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    if (pos.size() != labels.size())
        throw ValidationError("label list contains duplicates");
    // re-derive in caller order
    pos.clear();
    for (const auto& l : labels) pos.push_back(reg.position(l));
    return pos;
}

}  // namespace detail

// Operator acting as `op` on the named qubits (in the order given) and as the
// identity elsewhere, in register ordering.
inline Matrix embed(const Matrix& op, const std::vector<std::string>& on,
                    const QubitRegister& reg) {
    const size_t n = reg.size(), m = on.size();
    if (op.rows() != op.cols() || op.rows() != (Eigen::Index(1) << m))
        throw ValidationError("embed: operator dimension does not match label count");
    const auto pos = detail::positions_of(reg, on);

    const Eigen::Index dim = reg.dim(), dsub = Eigen::Index(1) << m;
    Matrix out = Matrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        Eigen::Index rt = 0;
        for (size_t k = 0; k < m; ++k) rt = (rt << 1) | detail::bit_at(r, pos[k], n);
        Eigen::Index rest = r;
        for (size_t k = 0; k < m; ++k)
            rest &= ~(Eigen::Index(1) << (n - 1 - pos[k]));
        for (Eigen::Index ct = 0; ct < dsub; ++ct) {
            if (op(rt, ct) == Complex(0, 0)) continue;
            Eigen::Index c = rest;
            for (size_t k = 0; k < m; ++k)
                if ((ct >> (m - 1 - k)) & 1) c |= Eigen::Index(1) << (n - 1 - pos[k]);
            out(r, c) = op(rt, ct);
        }
    }
    return out;
}

// Matrix-free application of a local operator to a state (used by the
// simulator and symmetry checks at sizes where embedding is wasteful).
inline void apply_local(PureState& state, const Matrix& op,
                        const std::vector<std::string>& on) {
    const size_t n = state.reg.size(), m = on.size();
    if (op.rows() != op.cols() || op.rows() != (Eigen::Index(1) << m))
        throw ValidationError("apply_local: operator dimension does not match label count");
    const auto pos = detail::positions_of(state.reg, on);

    const Eigen::Index dim = state.reg.dim(), dsub = Eigen::Index(1) << m;
    Vector out = Vector::Zero(dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        Eigen::Index rt = 0;
        for (size_t k = 0; k < m; ++k) rt = (rt << 1) | detail::bit_at(r, pos[k], n);
        Eigen::Index rest = r;
        for (size_t k = 0; k < m; ++k)
            rest &= ~(Eigen::Index(1) << (n - 1 - pos[k]));
        Complex acc(0, 0);
        for (Eigen::Index ct = 0; ct < dsub; ++ct) {
            const Complex o = op(rt, ct);
            if (o == Complex(0, 0)) continue;
            Eigen::Index c = rest;
            for (size_t k = 0; k < m; ++k)
                if ((ct >> (m - 1 - k)) & 1) c |= Eigen::Index(1) << (n - 1 - pos[k]);
            acc += o * state.amplitudes(c);
        }
        out(r) = acc;
    }
    state.amplitudes.swap(out);
}

// Reduced operator on the labels not in `over`.
inline Matrix partial_trace(const Matrix& op, const std::vector<std::string>& over,
                            const QubitRegister& reg) {
    const size_t n = reg.size();
    if (op.rows() != op.cols() || op.rows() != reg.dim())
        throw ValidationError("partial_trace: operator must be square on the full register");
    auto traced = detail::positions_of(reg, over);
    std::sort(traced.begin(), traced.end());
    std::vector<size_t> kept;
    for (size_t p = 0; p < n; ++p)
        if (!std::binary_search(traced.begin(), traced.end(), p)) kept.push_back(p);

    const size_t nk = kept.size(), nt = traced.size();
    const Eigen::Index dk = Eigen::Index(1) << nk, dt = Eigen::Index(1) << nt;
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index rk = 0; rk < dk; ++rk)
        for (Eigen::Index ck = 0; ck < dk; ++ck) {
            Complex acc(0, 0);
            for (Eigen::Index t = 0; t < dt; ++t) {
                Eigen::Index r = 0, c = 0;
                for (size_t k = 0; k < nk; ++k) {
                    Eigen::Index b = (rk >> (nk - 1 - k)) & 1;
                    r |= b << (n - 1 - kept[k]);
                    b = (ck >> (nk - 1 - k)) & 1;
                    c |= b << (n - 1 - kept[k]);
                }
                for (size_t k = 0; k < nt; ++k) {
                    Eigen::Index b = (t >> (nt - 1 - k)) & 1;
                    r |= b << (n - 1 - traced[k]);
                    c |= b << (n - 1 - traced[k]);
                }
                acc += op(r, c);
            }
            out(rk, ck) = acc;
        }
    return out;
}

// Labels remaining after a partial trace, in register order.
inline QubitRegister traced_register(const QubitRegister& reg,
                                     const std::vector<std::string>& over) {
    std::vector<std::string> kept;
    for (const auto& l : reg.labels())
        if (std::find(over.begin(), over.end(), l) == over.end()) kept.push_back(l);
    return QubitRegister(kept);
}

inline Matrix partial_transpose(const Matrix& op, const std::vector<std::string>& on,
                                const QubitRegister& reg) {
    const size_t n = reg.size();
    if (op.rows() != op.cols() || op.rows() != reg.dim())
        throw ValidationError("partial_transpose: operator must be square on the full register");
    auto pos = detail::positions_of(reg, on);
    std::sort(pos.begin(), pos.end());

    const Eigen::Index dim = reg.dim();
    Matrix out(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
            Eigen::Index rr = r, cc = c;
            for (size_t p : pos) {
                const Eigen::Index mask = Eigen::Index(1) << (n - 1 - p);
                const Eigen::Index rb = r & mask, cb = c & mask;
                rr = (rr & ~mask) | cb;
                cc = (cc & ~mask) | rb;
            }
            out(rr, cc) = op(r, c);
        }
    return out;
}

// Same state expressed on a permuted register (same label set).
inline PureState reorder(const PureState& state, const QubitRegister& target) {
    const size_t n = state.reg.size();
    if (target.size() != n)
        throw ValidationError("reorder: register size mismatch");
    std::vector<size_t> src(n);
    for (size_t k = 0; k < n; ++k) src[k] = state.reg.position(target.label(k));

    Vector out(state.amplitudes.size());
    const Eigen::Index dim = state.reg.dim();
    for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index j = 0;
        for (size_t k = 0; k < n; ++k)
            j |= Eigen::Index(detail::bit_at(i, src[k], n)) << (n - 1 - k);
        out(j) = state.amplitudes(i);
    }
    return PureState(target, std::move(out));
}

// |<s1|s2>| with a same-labels requirement; reorders s2 if needed.
struct Overlap {
    double fidelity;  // |<s1|s2>| for normalized inputs
    Complex phase;    // arg-aligned inner product
};

inline Overlap overlap_up_to_phase(const PureState& a, const PureState& b) {
    if (a.reg == b.reg) {
        Complex ip = a.amplitudes.dot(b.amplitudes);
        return {std::abs(ip), ip};
    }
    PureState b2 = reorder(b, a.reg);
    Complex ip = a.amplitudes.dot(b2.amplitudes);
    return {std::abs(ip), ip};
}

inline bool states_equal_up_to_phase(const PureState& a, const PureState& b,
                                     double tol, double* fidelity_out = nullptr) {
    if (a.reg.size() != b.reg.size())
        throw ValidationError("states_equal_up_to_phase: register mismatch");
    for (const auto& l : a.reg.labels())
        if (!b.reg.contains(l))
            throw ValidationError("states_equal_up_to_phase: register mismatch");
    Overlap o = overlap_up_to_phase(a, b);
    if (fidelity_out) *fidelity_out = o.fidelity;
    return o.fidelity >= 1.0 - tol;
}

}  // namespace netlocc
