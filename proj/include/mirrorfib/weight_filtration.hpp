#pragma once

// Nilpotent/unipotent calculus over exact rationals: finite log and exp,
// the monodromy weight filtration of a nilpotent operator, the maximal
// unipotency test for a commuting family, and the nilpotent form of the
// triple-product (Yukawa) scalar.
//
// The filtration W_0 <= ... <= W_{2m} of a nilpotent N centered at m is the
// unique increasing filtration with N W_k <= W_{k-2} whose graded pieces are
// matched by powers of N:  N^k : Gr_{m+k} ~= Gr_{m-k}.  We build it by the
// standard kernel/image formula
//     W_{m+k} = sum_j  ker(N^{k+j+1})  intersect  im(N^j),
// but correctness is pinned by axioms_check below, which verifies the two
// characterizing properties directly and independently of the construction.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorfib/matrix.hpp"
#include "mirrorfib/rational.hpp"

namespace mirrorfib::weightfilt {

// Smallest e >= 1 with M^e = 0. Non-nilpotency is detected by rank
// stabilization: if rank(M^k) = rank(M^{k-1}) > 0 the ranks can never reach
// zero, and the error names that smallest failing k.
inline std::size_t nilpotency_order(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("nilpotency: matrix not square");
    std::size_t prev_rank = m.rows();
    QMat p = QMat::identity(m.rows());
    for (std::size_t k = 1; k <= m.rows() + 1; ++k) {
        p = p * m;
        std::size_t r = p.rank();
        if (r == 0) return k;
        if (r == prev_rank)
            throw std::invalid_argument(
                "matrix is not nilpotent: rank of powers stabilizes at a nonzero value "
                "(smallest failing power k = " + std::to_string(k) + ")");
        prev_rank = r;
    }
    throw std::invalid_argument("matrix is not nilpotent");  // unreachable
}

// Finite exponential of a nilpotent matrix (exact).
inline QMat exp_nilpotent(const QMat& n) {
    std::size_t e = nilpotency_order(n);
    QMat acc = QMat::identity(n.rows());
    QMat pw = QMat::identity(n.rows());
    Rat fact(1);
    for (std::size_t k = 1; k < e; ++k) {
        pw = pw * n;
        fact *= static_cast<long>(k);
        acc = acc + pw.scaled(Rat(1) / fact);
    }
    return acc;
}

// Finite logarithm of a unipotent matrix: log T = sum (-1)^{k+1} (T-I)^k / k.
// Errors if T - I is not nilpotent (same rank-stabilization report).
inline QMat log_unipotent(const QMat& t) {
    if (t.rows() != t.cols()) throw std::invalid_argument("log: matrix not square");
    QMat m = t - QMat::identity(t.rows());
    std::size_t e;
    try {
        e = nilpotency_order(m);
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(std::string("log of non-unipotent matrix: ") + ex.what());
    }
    QMat acc(t.rows(), t.rows());
    QMat pw = QMat::identity(t.rows());
    for (std::size_t k = 1; k < e; ++k) {
        pw = pw * m;
        Rat c = Rat((k % 2) ? 1 : -1) / Rat(static_cast<long>(k));
        acc = acc + pw.scaled(c);
    }
    return acc;
}

class WeightFiltration {
  public:
    WeightFiltration(std::size_t center, std::size_t ambient, std::vector<QMat> levels)
        : center_(center), ambient_(ambient), levels_(std::move(levels)) {}

    std::size_t center() const { return center_; }
    std::size_t ambient_dim() const { return ambient_; }

    // W_k in canonical row form; k below 0 is the zero space, k above 2m is V.
    const QMat& level(long k) const {
        if (k < 0) return zero_level();
        std::size_t kk = static_cast<std::size_t>(k);
        if (kk >= levels_.size()) return levels_.back();
        return levels_[kk];
    }

    std::size_t dim(long k) const { return subspace_dim(level(k)); }
    std::size_t graded_dim(long k) const { return dim(k) - dim(k - 1); }
    std::size_t top_index() const { return 2 * center_; }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (std::size_t k = 0; k < levels_.size(); ++k) d.push_back(subspace_dim(levels_[k]));
        return d;
    }

    bool operator==(const WeightFiltration& o) const {
        return center_ == o.center_ && ambient_ == o.ambient_ && levels_ == o.levels_;
    }

  private:
    const QMat& zero_level() const {
        if (!zero_) zero_ = QMat(0, ambient_);
        return *zero_;
    }

    std::size_t center_;
    std::size_t ambient_;
    std::vector<QMat> levels_;
    mutable std::optional<QMat> zero_;
};

inline WeightFiltration weight_filtration(const QMat& n, std::size_t m) {
    std::size_t e = nilpotency_order(n);  // throws if not nilpotent
    if (e > m + 1)
        throw std::invalid_argument("weight filtration: nilpotency order " + std::to_string(e) +
                                    " exceeds the center bound m + 1 = " + std::to_string(m + 1));
    std::size_t d = n.rows();
    std::vector<QMat> powers{QMat::identity(d)};
    for (std::size_t k = 1; k <= e; ++k) powers.push_back(powers.back() * n);
    std::vector<QMat> kernels(e + 1, QMat(0, d)), images(e + 1, QMat(0, d));
    for (std::size_t k = 0; k <= e; ++k) {
        kernels[k] = kernel_space(powers[k]);
        images[k] = colspace(powers[k]);
    }
    QMat zero_space(0, d);
    auto ker = [&](long p) -> const QMat& {
        if (p <= 0) return zero_space;
        return kernels[std::min(static_cast<std::size_t>(p), e)];
    };

    std::vector<QMat> levels;
    for (long k = -static_cast<long>(m); k <= static_cast<long>(m); ++k) {
        QMat w(0, d);
        for (long j = std::max(0L, -k); j < static_cast<long>(e); ++j) {
            QMat term = subspace_intersect(ker(k + j + 1), images[j]);
            w = subspace_sum(w, term);
        }
        levels.push_back(rowspace_canonical(w));
    }
    return WeightFiltration(m, d, std::move(levels));
}

// Independent verification of the two characterizing properties (plus the
// chain shape). Accepts any candidate filtration; never consults the
// kernel/image construction above.
struct AxiomsReport {
    bool chain_ok = false;        // increasing, exhausts V
    bool shift_ok = false;        // N W_k <= W_{k-2}
    bool graded_iso_ok = false;   // N^k : Gr_{m+k} ~= Gr_{m-k}
    bool pass() const { return chain_ok && shift_ok && graded_iso_ok; }
};

inline AxiomsReport axioms_check(const QMat& n, const WeightFiltration& w) {
    AxiomsReport rep;
    long m = static_cast<long>(w.center());
    std::size_t d = w.ambient_dim();

    rep.chain_ok = (w.dim(2 * m) == d);
    for (long k = 1; k <= 2 * m && rep.chain_ok; ++k)
        if (!subspace_contains(w.level(k), w.level(k - 1))) rep.chain_ok = false;

    rep.shift_ok = true;
    for (long k = 0; k <= 2 * m; ++k) {
        QMat image = subspace_apply(n, w.level(k));
        if (!subspace_contains(w.level(k - 2), image)) {
            rep.shift_ok = false;
            break;
        }
    }
    if (!rep.shift_ok) return rep;

    // With the shift property in hand, the induced maps on graded pieces are
    // well-defined; equal dimensions plus surjectivity onto the quotient
    // force each one to be an isomorphism.
    rep.graded_iso_ok = true;
    QMat pw = QMat::identity(d);
    for (long k = 1; k <= m; ++k) {
        pw = pw * n;  // N^k
        if (w.graded_dim(m + k) != w.graded_dim(m - k)) {
            rep.graded_iso_ok = false;
            break;
        }
        QMat img = subspace_apply(pw, w.level(m + k));
        QMat span = subspace_sum(img, w.level(m - k - 1));
        if (!(span == w.level(m - k))) {
            rep.graded_iso_ok = false;
            break;
        }
    }
    return rep;
}

// Maximal-unipotency test for a commuting family T_1..T_s with weights a:
//   (1) every T_j unipotent;
//   (2) the weight filtration of N = sum a_j log T_j has
//       dim W_0 = dim W_1 = 1 and dim W_2 = 1 + s;
//   (3) with g_0 spanning W_0 and g_1..g_s extending it to a basis of W_2
//       (taken from the canonical echelon basis, in order), the matrix M
//       with N_j g_k = m_{jk} g_0 is invertible.
struct MaximalUnipotencyReport {
    bool unipotent = false;
    std::vector<QMat> logs;
    QMat n_total;
    std::size_t center = 0;
    std::optional<WeightFiltration> filtration;
    std::size_t dim_w0 = 0, dim_w1 = 0, dim_w2 = 0;
    bool dims_ok = false;
    QMat m_matrix;
    bool m_well_defined = false;
    bool m_invertible = false;
    bool pass = false;
};

inline MaximalUnipotencyReport maximally_unipotent_check(
    const std::vector<QMat>& t_list, const std::vector<Rat>& a,
    std::optional<std::size_t> center = std::nullopt, std::size_t ambient_if_empty = 1) {
    if (a.size() != t_list.size())
        throw std::invalid_argument("maximal unipotency: weight count " + std::to_string(a.size()) +
                                    " vs family size " + std::to_string(t_list.size()));
    for (const auto& w : a)
        if (w <= 0) throw std::invalid_argument("maximal unipotency: weights must be positive");
    // An empty family is allowed and degrades to the filtration of N = 0.
    std::size_t d = t_list.empty() ? ambient_if_empty : t_list[0].rows();
    for (const auto& t : t_list)
        if (t.rows() != d || t.cols() != d)
            throw std::invalid_argument("maximal unipotency: family members differ in shape");
    for (std::size_t i = 0; i < t_list.size(); ++i)
        for (std::size_t j = i + 1; j < t_list.size(); ++j)
            if (!(t_list[i] * t_list[j] == t_list[j] * t_list[i]))
                throw std::invalid_argument("maximal unipotency: members " + std::to_string(i) +
                                            " and " + std::to_string(j) + " do not commute");

    MaximalUnipotencyReport rep;
    try {
        for (const auto& t : t_list) rep.logs.push_back(log_unipotent(t));
    } catch (const std::invalid_argument&) {
        return rep;  // condition (1) fails; nothing further is defined
    }
    rep.unipotent = true;

    rep.n_total = QMat(d, d);
    for (std::size_t j = 0; j < rep.logs.size(); ++j)
        rep.n_total = rep.n_total + rep.logs[j].scaled(a[j]);

    rep.center = center ? *center : nilpotency_order(rep.n_total) - 1;
    rep.filtration = weight_filtration(rep.n_total, rep.center);
    const WeightFiltration& w = *rep.filtration;

    std::size_t s = t_list.size();
    rep.dim_w0 = w.dim(0);
    rep.dim_w1 = w.dim(1);
    rep.dim_w2 = w.dim(2);
    rep.dims_ok = (rep.dim_w0 == 1 && rep.dim_w1 == 1 && rep.dim_w2 == 1 + s);

    if (rep.dim_w0 == 1) {
        // g_0 = the canonical generator of W_0; extend through W_2's
        // canonical rows, first-come first-kept.
        QMat g0 = w.level(0);
        std::vector<QMat> g{g0};
        QMat span = g0;
        const QMat& w2 = w.level(2);
        for (std::size_t r = 0; r < w2.rows(); ++r) {
            QMat cand(1, d);
            for (std::size_t j = 0; j < d; ++j) cand.at(0, j) = w2.at(r, j);
            QMat bigger = subspace_sum(span, cand);
            if (subspace_dim(bigger) > subspace_dim(span)) {
                g.push_back(cand);
                span = bigger;
            }
        }
        std::size_t ext = g.size() - 1;
        rep.m_matrix = QMat(s, ext);
        rep.m_well_defined = true;
        std::size_t pivot = 0;
        while (pivot < d && g0.at(0, pivot) == 0) ++pivot;
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 1; k <= ext; ++k) {
                QMat img = rep.logs[j] * g[k].transpose();  // column vector
                Rat c = img.at(pivot, 0) / g0.at(0, pivot);
                for (std::size_t i = 0; i < d; ++i)
                    if (img.at(i, 0) != c * g0.at(0, i)) {
                        rep.m_well_defined = false;
                        c = 0;
                        break;
                    }
                rep.m_matrix.at(j, k - 1) = c;
            }
        rep.m_invertible = rep.m_well_defined && ext == s && rep.m_matrix.invertible();
    }
    rep.pass = rep.unipotent && rep.dims_ok && rep.m_well_defined && rep.m_invertible;
    return rep;
}

// Triple-product scalar in nilpotent form: with (alpha0, beta0) = 1 under the
// supplied pairing Gram matrix, N_{i_1} ... N_{i_k} alpha0 must be a rational
// multiple of beta0; returns that scalar. Indices are 0-based into n_list,
// applied right-to-left as written.
inline Rat yukawa_nilpotent(const std::vector<QMat>& n_list, const QMat& alpha0,
                            const QMat& beta0, const QMat& pairing,
                            const std::vector<std::size_t>& indices) {
    if (alpha0.cols() != 1 || beta0.cols() != 1)
        throw std::invalid_argument("yukawa: alpha0/beta0 must be column vectors");
    if (beta0.is_zero()) throw std::invalid_argument("yukawa: beta0 is zero");
    QMat norm = alpha0.transpose() * pairing * beta0;
    if (norm.at(0, 0) != 1)
        throw std::invalid_argument("yukawa: normalization violated: (alpha0, beta0) = " +
                                    rat_str(norm.at(0, 0)) + ", expected 1");
    QMat w = alpha0;
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
        if (*it >= n_list.size())
            throw std::invalid_argument("yukawa: operator index " + std::to_string(*it) +
                                        " out of range");
        w = n_list[*it] * w;
    }
    std::size_t pivot = 0;
    while (pivot < beta0.rows() && beta0.at(pivot, 0) == 0) ++pivot;
    Rat c = w.at(pivot, 0) / beta0.at(pivot, 0);
    for (std::size_t i = 0; i < w.rows(); ++i)
        if (w.at(i, 0) != c * beta0.at(i, 0)) {
            Rat residual = w.at(i, 0) - c * beta0.at(i, 0);
            throw std::domain_error("yukawa: image not proportional to beta0 (residual " +
                                    rat_str(residual) + " in coordinate " + std::to_string(i) +
                                    ")");
        }
    return c;
}

}  // namespace mirrorfib::weightfilt
