#pragma once

// Hyperbolic-plane-plus-orthogonal-part lattice model for elliptic K3
// section classes: the ambient lattice is Z E' + (d_1..d_t with Gram matrix
// `gram`) + Z E, with E.E' = 1, E^2 = E'^2 = 0 and both E, E' orthogonal to
// the d_i. Coordinates are always ordered (E', d_1..d_t, E). Section classes
// sigma_D = E' + D - (D^2/2 + 1) E; the monodromy T_D acting by
//   T_D(E) = E,  T_D(a) = a - (D.a) E,  T_D(E') = E' + D - (D^2/2) E
// is rebuilt independently from the defining property sigma_a |-> sigma_{a+D}
// (with E fixed), and the two constructions are compared as matrices.
// D may be rational; integrality of the matrices is reported, not enforced.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mirrorfib/matrix.hpp"
#include "mirrorfib/rational.hpp"

namespace mirrorfib::k3 {

class Model {
  public:
    Model(QMat gram, std::string label = "")
        : gram_(std::move(gram)), label_(std::move(label)) {
        if (gram_.rows() != gram_.cols())
            throw std::invalid_argument("k3 model: gram matrix not square");
        if (!(gram_ == gram_.transpose()))
            throw std::invalid_argument("k3 model: gram matrix not symmetric");
    }

    std::size_t t() const { return gram_.rows(); }
    std::size_t dim() const { return t() + 2; }
    const QMat& gram() const { return gram_; }
    const std::string& label() const { return label_; }

    // Even diagonal makes sigma_D and T_D integral for integral D; reported
    // by the check commands, never assumed.
    bool even_diagonal() const {
        for (std::size_t i = 0; i < t(); ++i) {
            const Rat& g = gram_.at(i, i);
            if (!rat_is_integer(g) || rat_to_long(g) % 2 != 0) return false;
        }
        return true;
    }

    // Classes as columns (E'-coefficient, d-coefficients, E-coefficient).
    QMat make_class(const Rat& a, const std::vector<Rat>& v, const Rat& b) const {
        require_vec(v, "class vector");
        QMat x(dim(), 1);
        x.at(0, 0) = a;
        for (std::size_t i = 0; i < t(); ++i) x.at(1 + i, 0) = v[i];
        x.at(dim() - 1, 0) = b;
        return x;
    }

    QMat e_class() const { return make_class(0, zero_vec(), 1); }
    QMat eprime_class() const { return make_class(1, zero_vec(), 0); }

    Rat pair(const QMat& x, const QMat& y) const {
        if (x.rows() != dim() || x.cols() != 1 || y.rows() != dim() || y.cols() != 1)
            throw std::invalid_argument("k3 pair: expected two length-" + std::to_string(dim()) +
                                        " classes");
        Rat s = x.at(0, 0) * y.at(dim() - 1, 0) + x.at(dim() - 1, 0) * y.at(0, 0);
        for (std::size_t i = 0; i < t(); ++i)
            for (std::size_t j = 0; j < t(); ++j)
                s += x.at(1 + i, 0) * gram_.at(i, j) * y.at(1 + j, 0);
        return s;
    }

    Rat dot(const std::vector<Rat>& d1, const std::vector<Rat>& d2) const {
        require_vec(d1, "dot lhs");
        require_vec(d2, "dot rhs");
        Rat s(0);
        for (std::size_t i = 0; i < t(); ++i)
            for (std::size_t j = 0; j < t(); ++j) s += d1[i] * gram_.at(i, j) * d2[j];
        return s;
    }

    QMat sigma_class(const std::vector<Rat>& d) const {
        Rat d2 = dot(d, d);
        return make_class(1, d, -(d2 / 2 + 1));
    }

    // Closed-form monodromy, column by column in the (E', d, E) basis.
    QMat monodromy(const std::vector<Rat>& d) const {
        require_vec(d, "monodromy vector");
        QMat m(dim(), dim());
        Rat d2 = dot(d, d);
        m.at(0, 0) = 1;
        for (std::size_t i = 0; i < t(); ++i) m.at(1 + i, 0) = d[i];
        m.at(dim() - 1, 0) = -d2 / 2;
        for (std::size_t j = 0; j < t(); ++j) {
            m.at(1 + j, 1 + j) = 1;
            Rat ddj(0);  // D . d_j
            for (std::size_t i = 0; i < t(); ++i) ddj += d[i] * gram_.at(i, j);
            m.at(dim() - 1, 1 + j) = -ddj;
        }
        m.at(dim() - 1, dim() - 1) = 1;
        return m;
    }

    // Independent construction: the unique linear map fixing E and carrying
    // sigma_a to sigma_{a+D} for a in {0, d_1, .., d_t}. Those t+2 classes
    // span; degeneration cannot happen but is asserted.
    QMat translation(const std::vector<Rat>& d) const {
        require_vec(d, "translation vector");
        QMat span(dim(), dim()), img(dim(), dim());
        put_col(span, 0, e_class());
        put_col(img, 0, e_class());
        put_col(span, 1, sigma_class(zero_vec()));
        put_col(img, 1, sigma_class(d));
        for (std::size_t i = 0; i < t(); ++i) {
            std::vector<Rat> di = zero_vec();
            di[i] = 1;
            put_col(span, 2 + i, sigma_class(di));
            std::vector<Rat> shifted = di;
            for (std::size_t j = 0; j < t(); ++j) shifted[j] += d[j];
            put_col(img, 2 + i, sigma_class(shifted));
        }
        if (!span.invertible())
            throw std::logic_error("k3 translation: section spanning set degenerated");
        return img * span.inverse();
    }

    // (-sigma_0 . sigma_D, D^2/2 + 2, equal?)
    struct RRCheck {
        Rat lhs, rhs;
        bool ok;
    };
    RRCheck riemann_roch_check(const std::vector<Rat>& d) const {
        Rat lhs = -pair(sigma_class(zero_vec()), sigma_class(d));
        Rat rhs = dot(d, d) / 2 + 2;
        return {lhs, rhs, lhs == rhs};
    }

    std::vector<Rat> zero_vec() const { return std::vector<Rat>(t(), Rat(0)); }

  private:
    void require_vec(const std::vector<Rat>& v, const char* what) const {
        if (v.size() != t())
            throw std::invalid_argument(std::string("k3 model: ") + what + " has length " +
                                        std::to_string(v.size()) + ", expected " +
                                        std::to_string(t()));
    }

    static void put_col(QMat& m, std::size_t j, const QMat& v) {
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = v.at(i, 0);
    }

    QMat gram_;
    std::string label_;
};

inline bool matrix_is_integral(const QMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!rat_is_integer(m.at(i, j))) return false;
    return true;
}

}  // namespace mirrorfib::k3
