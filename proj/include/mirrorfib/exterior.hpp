#pragma once

// Exterior algebra of a rank-n lattice and its dual, over exact rationals.
// Basis q-forms are indexed by bitmasks (bit i-1 <-> index i, masks listed in
// increasing numeric order). Conventions, fixed once here:
//   * contraction uses the LAST slot: (i(v)a)(w_1,..,w_{q-1}) = a(w_1,..,w_{q-1},v);
//   * duality normalizes against the orientation class e_1^...^e_n |-> 1:
//     pd(a) is the unique w in /\^{n-q} V with a(v) = vol(v ^ w) for all v;
//   * group actions on the dual side extend (g^{-1})^T multiplicatively.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorfib/matrix.hpp"
#include "mirrorfib/rational.hpp"

namespace mirrorfib::exterior {

enum class Side { vectors, covectors };

using Mask = std::uint32_t;

inline constexpr std::size_t max_rank = 20;

// All q-subsets of {1..n} as bitmasks, increasing numeric order.
inline std::vector<Mask> subsets(std::size_t n, std::size_t q) {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask(1) << n); ++m)
        if (static_cast<std::size_t>(std::popcount(m)) == q) out.push_back(m);
    return out;
}

// Sign (-1)^{#{(s,t) in S x T : s > t}} of merging two disjoint index sets,
// i.e. the sign of sorting the concatenation (S ascending, T ascending).
inline int merge_sign(Mask s, Mask t) {
    int inversions = 0;
    for (Mask tt = t; tt; tt &= tt - 1) {
        int bit = std::countr_zero(tt);
        inversions += std::popcount(s >> (bit + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

class Element {
  public:
    Element(std::size_t n, Side side, std::size_t degree)
        : n_(n), side_(side), degree_(degree) {
        if (n == 0 || n > max_rank)
            throw std::invalid_argument("exterior: rank must be in [1," +
                                        std::to_string(max_rank) + "]");
        if (degree > n)
            throw std::invalid_argument("exterior: degree " + std::to_string(degree) +
                                        " exceeds rank " + std::to_string(n));
    }

    // Basis monomial from 1-based indices, sign-normalized (repeated index
    // gives the zero element; unsorted indices pick up the sorting sign).
    static Element basis(std::size_t n, Side side, const std::vector<int>& indices) {
        Element e(n, side, indices.size());
        Mask m = 0;
        int sign = 1;
        for (int idx : indices) {
            if (idx < 1 || static_cast<std::size_t>(idx) > n)
                throw std::invalid_argument("exterior basis: index " + std::to_string(idx) +
                                            " out of range 1.." + std::to_string(n));
            Mask bit = Mask(1) << (idx - 1);
            if (m & bit) return e;  // repeated factor: zero
            // Moving idx past the already-placed larger indices costs a swap each.
            sign *= (std::popcount(m >> idx) % 2 == 0) ? 1 : -1;
            m |= bit;
        }
        e.coeffs_[m] = sign;
        return e;
    }

    static Element scalar(std::size_t n, Side side, const Rat& value) {
        Element e(n, side, 0);
        if (value != 0) e.coeffs_[0] = value;
        return e;
    }

    std::size_t rank() const { return n_; }
    Side side() const { return side_; }
    std::size_t degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rat coeff(Mask m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    void set_coeff(Mask m, const Rat& v) {
        if (static_cast<std::size_t>(std::popcount(m)) != degree_)
            throw std::invalid_argument("exterior: mask/degree mismatch");
        if (v == 0)
            coeffs_.erase(m);
        else
            coeffs_[m] = v;
    }

    const std::map<Mask, Rat>& coeffs() const { return coeffs_; }

    bool operator==(const Element& o) const {
        return n_ == o.n_ && side_ == o.side_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Element& o) const { return !(*this == o); }

    Element operator+(const Element& o) const {
        check_compatible(o, "+");
        Element r = *this;
        for (const auto& [m, c] : o.coeffs_) {
            Rat s = r.coeff(m) + c;
            r.set_coeff(m, s);
        }
        return r;
    }

    Element operator-(const Element& o) const { return *this + o.scaled(Rat(-1)); }

    Element scaled(const Rat& c) const {
        Element r(n_, side_, degree_);
        if (c == 0) return r;
        for (const auto& [m, v] : coeffs_) r.coeffs_[m] = c * v;
        return r;
    }

  private:
    void check_compatible(const Element& o, const char* op) const {
        if (n_ != o.n_ || side_ != o.side_ || degree_ != o.degree_)
            throw std::invalid_argument(std::string("exterior ") + op +
                                        ": rank/side/degree mismatch");
    }

    std::size_t n_;
    Side side_;
    std::size_t degree_;
    std::map<Mask, Rat> coeffs_;  // zero coefficients never stored
};

inline Element wedge(const Element& a, const Element& b) {
    if (a.rank() != b.rank() || a.side() != b.side())
        throw std::invalid_argument("wedge: operands live in different algebras");
    std::size_t deg = a.degree() + b.degree();
    if (deg > a.rank())
        throw std::invalid_argument("wedge: degree " + std::to_string(a.degree()) + " + " +
                                    std::to_string(b.degree()) + " exceeds rank " +
                                    std::to_string(a.rank()));
    Element r(a.rank(), a.side(), deg);
    for (const auto& [ma, ca] : a.coeffs())
        for (const auto& [mb, cb] : b.coeffs()) {
            if (ma & mb) continue;
            Rat term = ca * cb * merge_sign(ma, mb);
            r.set_coeff(ma | mb, r.coeff(ma | mb) + term);
        }
    return r;
}

// Contraction of a covector-side element by the lattice vector `lambda`
// (coordinates in the e-basis), in the last slot. On basis forms, for
// S = {i_1 < ... < i_q} and j = i_k:  i(e_j) e*_S = (-1)^{q-k} e*_{S - j}.
inline Element contract(const std::vector<Rat>& lambda, const Element& a) {
    if (a.side() != Side::covectors)
        throw std::invalid_argument("contract: element must live on the dual side");
    if (a.degree() == 0) throw std::invalid_argument("contract: cannot contract a scalar");
    if (lambda.size() != a.rank())
        throw std::invalid_argument("contract: vector length " + std::to_string(lambda.size()) +
                                    " vs rank " + std::to_string(a.rank()));
    Element r(a.rank(), Side::covectors, a.degree() - 1);
    std::size_t q = a.degree();
    for (const auto& [m, c] : a.coeffs()) {
        for (Mask mm = m; mm; mm &= mm - 1) {
            int bit = std::countr_zero(mm);  // index bit+1 in S
            if (lambda[bit] == 0) continue;
            std::size_t k = std::popcount(m & ((Mask(1) << bit) - 1)) + 1;
            int sign = ((q - k) % 2 == 0) ? 1 : -1;
            Mask rest = m & ~(Mask(1) << bit);
            r.set_coeff(rest, r.coeff(rest) + c * lambda[bit] * sign);
        }
    }
    return r;
}

inline Element contract(const Element& lambda, const Element& a) {
    if (lambda.side() != Side::vectors || lambda.degree() != 1)
        throw std::invalid_argument("contract: contracting element must be a degree-1 vector");
    if (lambda.rank() != a.rank()) throw std::invalid_argument("contract: rank mismatch");
    std::vector<Rat> coords(lambda.rank(), Rat(0));
    for (const auto& [m, c] : lambda.coeffs()) coords[std::countr_zero(m)] = c;
    return contract(coords, a);
}

// The same bilinear pairing as it appears in the translation formulas:
// a covector of degree q against a lattice vector, last slot.
inline Element translation_pairing(const std::vector<Rat>& lambda, const Element& a) {
    return contract(lambda, a);
}

// Duality against the orientation e_1^...^e_n |-> 1: on basis forms
// pd(e*_S) = sign(S, S^c) e_{S^c}.
inline Element pd_to_vector(const Element& a) {
    if (a.side() != Side::covectors)
        throw std::invalid_argument("pd_to_vector: element must live on the dual side");
    std::size_t n = a.rank();
    Mask full = (Mask(1) << n) - 1;
    Element r(n, Side::vectors, n - a.degree());
    for (const auto& [m, c] : a.coeffs()) {
        Mask comp = full & ~m;
        r.set_coeff(comp, r.coeff(comp) + c * merge_sign(m, comp));
    }
    return r;
}

// Matrix of /\^q B on the canonical q-subset basis: column T holds the
// expansion of B e_T, entry (S,T) = det B[S,T].
inline QMat exterior_power_matrix(const QMat& b, std::size_t q) {
    if (b.rows() != b.cols()) throw std::invalid_argument("exterior power: matrix not square");
    std::size_t n = b.rows();
    auto idx = subsets(n, q);
    QMat m(idx.size(), idx.size());
    for (std::size_t col = 0; col < idx.size(); ++col) {
        std::vector<int> tbits;
        for (Mask mm = idx[col]; mm; mm &= mm - 1) tbits.push_back(std::countr_zero(mm));
        for (std::size_t row = 0; row < idx.size(); ++row) {
            std::vector<int> sbits;
            for (Mask mm = idx[row]; mm; mm &= mm - 1) sbits.push_back(std::countr_zero(mm));
            QMat sub(q, q);
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < q; ++j) sub.at(i, j) = b.at(sbits[i], tbits[j]);
            m.at(row, col) = sub.det();
        }
    }
    return m;
}

// Induced action on the dual lattice of a lattice automorphism g.
inline QMat dual_action(const QMat& g) {
    if (!g.invertible()) throw std::invalid_argument("dual action: matrix is singular");
    return g.inverse().transpose();
}

// Dimensions of the joint fixed spaces of the induced actions on /\^i of the
// dual, for i = 0..n: stack (/\^i (g^{-1})^T - id) over all generators and
// take the common kernel's dimension.
inline std::vector<std::size_t> invariant_dimensions(std::size_t n,
                                                     const std::vector<QMat>& generators) {
    for (const auto& g : generators)
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("invariant dimensions: generator shape mismatch");
    std::vector<std::size_t> dims;
    for (std::size_t q = 0; q <= n; ++q) {
        std::size_t dim_q = subsets(n, q).size();
        QMat stack(0, dim_q);
        for (const auto& g : generators) {
            QMat act = exterior_power_matrix(dual_action(g), q);
            stack = stack.vstack(act - QMat::identity(dim_q));
        }
        dims.push_back(generators.empty() ? dim_q : dim_q - stack.rank());
    }
    return dims;
}

}  // namespace mirrorfib::exterior
