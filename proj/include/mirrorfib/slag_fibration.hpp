#pragma once

// Floating-point verifier for the explicit special Lagrangian torus fibration
// on X = C^n minus the hypersurface 1 + z_1...z_n = 0:
//     f_k = |z_1|^2 - |z_{k+1}|^2   (k = 1..n-1),   f_n = log|1 + prod z_j|.
// Residual checks use closed-form Wirtinger partials; the Poisson bracket is
// taken for the symplectic form (i/2) sum dz_j ^ dconj(z_j), under which
//     {f,g} = 4 sum_j Im( df/dz_j * conj(dg/dz_j) ).
// Also: fiber sampling (bisection on the leading radius), discriminant
// stratification, fiber-type classification, and the unipotent monodromy
// matrices about the discriminant branches.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mirrorfib/exterior.hpp"
#include "mirrorfib/matrix.hpp"
#include "mirrorfib/rng.hpp"

namespace mirrorfib::slag {

using Complex = std::complex<double>;

struct FiberDescriptor {
    std::size_t l = 0;  // largest count of coordinates vanishing somewhere on the fiber
    std::string type_string;
    std::string dual_type_string;  // conjectural; no dual construction is known
};

namespace detail {

inline void require_dim(std::size_t n) {
    if (n < 2) throw std::invalid_argument("slag: complex dimension must be at least 2");
}

inline Complex product(const std::vector<Complex>& z) {
    Complex p(1.0, 0.0);
    for (const auto& v : z) p *= v;
    return p;
}

// d f_k / d z_j as an n x n table, rows j (coordinate), columns k (function).
inline std::vector<std::vector<Complex>> holomorphic_partials(const std::vector<Complex>& z) {
    std::size_t n = z.size();
    require_dim(n);
    std::vector<std::vector<Complex>> g(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        g[0][k] = std::conj(z[0]);
        g[k + 1][k] = -std::conj(z[k + 1]);
    }
    // Last column: (1/2) prod_{l != j} z_l / (1 + prod z). Prefix/suffix
    // products keep this well-defined when some coordinate is zero.
    std::vector<Complex> pre(n + 1, Complex(1.0, 0.0)), suf(n + 1, Complex(1.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) pre[j + 1] = pre[j] * z[j];
    for (std::size_t j = n; j-- > 0;) suf[j] = suf[j + 1] * z[j];
    Complex w = Complex(1.0, 0.0) + pre[n];
    if (std::abs(w) == 0.0)
        throw std::domain_error("slag: point lies on the deleted hypersurface 1 + prod z = 0");
    for (std::size_t j = 0; j < n; ++j) g[j][n - 1] = 0.5 * pre[j] * suf[j + 1] / w;
    return g;
}

inline Complex lu_det(std::vector<std::vector<Complex>> m) {
    std::size_t n = m.size();
    Complex det(1.0, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (std::abs(m[p][c]) == 0.0) return Complex(0.0, 0.0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Complex factor = m[r][c] / m[c][c];
            for (std::size_t col = c; col < n; ++col) m[r][col] -= factor * m[c][col];
        }
    }
    return det;
}

inline std::string torus(std::size_t k) { return "T^" + std::to_string(k); }

}  // namespace detail

inline std::vector<double> f_eval(const std::vector<Complex>& z) {
    std::size_t n = z.size();
    detail::require_dim(n);
    Complex w = Complex(1.0, 0.0) + detail::product(z);
    if (std::abs(w) == 0.0)
        throw std::domain_error("slag: point lies on the deleted hypersurface 1 + prod z = 0");
    std::vector<double> x(n);
    for (std::size_t k = 0; k + 1 < n; ++k) x[k] = std::norm(z[0]) - std::norm(z[k + 1]);
    x[n - 1] = std::log(std::abs(w));
    return x;
}

// Max |{f_a, f_b}| over pairs a < b. Mathematically zero on all of X.
inline double lagrangian_residual(const std::vector<Complex>& z) {
    auto g = detail::holomorphic_partials(z);
    std::size_t n = z.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += std::imag(g[j][a] * std::conj(g[j][b]));
            worst = std::max(worst, std::abs(4.0 * s));
        }
    return worst;
}

// |Im( det(i * df_k/dconj(z_j)) / (i^n (1 + prod z)) )|; the phase condition
// cutting out special (rather than merely Lagrangian) fibers.
inline double special_residual(const std::vector<Complex>& z) {
    auto g = detail::holomorphic_partials(z);
    std::size_t n = z.size();
    const Complex i_unit(0.0, 1.0);
    std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m[j][k] = i_unit * std::conj(g[j][k]);
    Complex det = detail::lu_det(std::move(m));
    static const Complex i_pow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    Complex denom = i_pow[n % 4] * (Complex(1.0, 0.0) + detail::product(z));
    return std::abs(std::imag(det / denom));
}

// Inverts f over a base point: prod z_j must land on the circle of radius
// e^{x_n} centered at -1; theta picks the point c on that circle, the free
// phases fix arg z_2 .. arg z_{n-1}, arg z_n = 0, and arg z_1 absorbs the
// remainder so the arguments sum to arg c. Radii come from bisection on r_1.
inline std::vector<Complex> fiber_point(const std::vector<double>& x, double theta,
                                        const std::vector<double>& phases) {
    std::size_t n = x.size();
    detail::require_dim(n);
    if (phases.size() != n - 2)
        throw std::invalid_argument("slag fiber point: expected " + std::to_string(n - 2) +
                                    " phase parameters, got " + std::to_string(phases.size()));
    Complex c = Complex(-1.0, 0.0) + std::polar(std::exp(x[n - 1]), theta);
    double target = std::abs(c);
    if (target == 0.0)
        throw std::domain_error(
            "slag fiber point: zero-product ray — this (x, theta) forces a coordinate to "
            "vanish; perturb theta to land on the torus part of the fiber");

    double maxx = x[0];
    for (std::size_t k = 1; k + 1 < n; ++k) maxx = std::max(maxx, x[k]);
    auto radius_product = [&](double r1) {
        double p = r1;
        for (std::size_t k = 0; k + 1 < n; ++k) p *= std::sqrt(std::max(0.0, r1 * r1 - x[k]));
        return p;
    };
    double lo = std::sqrt(std::max(0.0, maxx));
    double hi = std::max(lo, 1.0);
    int guard = 0;
    while (radius_product(hi) < target) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("slag fiber point: radius bracket failed to reach |c| = " +
                                     std::to_string(target));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        (radius_product(mid) < target ? lo : hi) = mid;
    }
    double r1 = 0.5 * (lo + hi);

    std::vector<double> radius(n), angle(n, 0.0);
    radius[0] = r1;
    for (std::size_t k = 0; k + 1 < n; ++k)
        radius[k + 1] = std::sqrt(std::max(0.0, r1 * r1 - x[k]));
    double phase_sum = 0.0;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        angle[j + 1] = phases[j];
        phase_sum += phases[j];
    }
    angle[n - 1] = 0.0;
    angle[0] = std::arg(c) - phase_sum;

    std::vector<Complex> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(radius[j], angle[j]);
    return z;
}

// All branch labels (i, j), 1 <= i < j <= n, whose discriminant stratum
// contains x. A branch pins |z_i| = |z_j| = 0 somewhere over x, which needs
// x_n = 0 plus, for i = 1: x_{j-1} = 0 and every x_k <= 0; for i > 1:
// x_{i-1} = x_{j-1}, maximal among all x_k, and >= 0 (the k = n comparison).
inline std::vector<std::pair<std::size_t, std::size_t>> discriminant_member(
    const std::vector<double>& x, double tol = 1e-12) {
    std::size_t n = x.size();
    detail::require_dim(n);
    std::vector<std::pair<std::size_t, std::size_t>> hits;
    if (std::abs(x[n - 1]) > tol) return hits;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            bool ok;
            if (i == 1) {
                ok = std::abs(x[j - 2]) <= tol;
                for (std::size_t k = 0; ok && k + 1 < n; ++k) ok = x[k] <= tol;
            } else {
                double a = x[i - 2];
                ok = std::abs(a - x[j - 2]) <= tol && a >= -tol;
                for (std::size_t k = 0; ok && k + 1 < n; ++k) ok = a >= x[k] - tol;
            }
            if (ok) hits.emplace_back(i, j);
        }
    }
    return hits;
}

inline FiberDescriptor fiber_type(const std::vector<double>& x, double tol = 1e-12) {
    std::size_t n = x.size();
    detail::require_dim(n);
    std::size_t l = 0;
    if (std::abs(x[n - 1]) <= tol) {
        // A vanishing set containing z_1 needs r_1 = 0, hence every x_k <= 0;
        // one avoiding z_1 sits at r_1^2 = max x_k, which must be >= 0.
        bool all_nonpos = true;
        std::size_t at_zero = 0;
        double v = x[0];
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (x[k] > tol) all_nonpos = false;
            if (std::abs(x[k]) <= tol) ++at_zero;
            v = std::max(v, x[k]);
        }
        std::size_t with_z1 = all_nonpos ? 1 + at_zero : 0;
        std::size_t without_z1 = 0;
        if (v >= -tol)
            for (std::size_t k = 0; k + 1 < n; ++k)
                if (std::abs(x[k] - v) <= tol) ++without_z1;
        l = std::max(with_z1, without_z1);
    }

    FiberDescriptor d;
    d.l = l;
    using detail::torus;
    if (l <= 1) {
        d.type_string = torus(n);
        d.dual_type_string = torus(n) + " (conjectural)";
    } else {
        std::string core =
            "(S^1 x " + torus(l - 1) + ")/({pt} x " + torus(l - 1) + ")";
        std::string dual_core = "(" + torus(l - 1) + " x S^1)/~";
        if (n == 2 && l == 2) {
            d.type_string = "I_1";
            d.dual_type_string = dual_core + " (conjectural)";
        } else if (l == n) {
            d.type_string = core;
            d.dual_type_string = dual_core + " (conjectural)";
        } else {
            d.type_string = torus(n - l) + " x (" + core + ")";
            d.dual_type_string = torus(n - l) + " x (" + dual_core + ") (conjectural)";
        }
    }
    return d;
}

// The three classical monodromy matrices about the discriminant branches in
// complex dimension 3, in the cycle basis g_1, g_2, g_3.
inline std::array<QMat, 3> monodromy_matrices_n3() {
    return {QMat{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}},
            QMat{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}},
            QMat{{1, 0, 1}, {0, 1, -1}, {0, 0, 1}}};
}

// Monodromy about the branch pinning coordinates z_i, z_j (1 <= i < j <= n):
// identity on g_1..g_{n-1}, and g_n gains sign * delta. The cycle g_k for
// k < n pairs the first coordinate against coordinate k+1, and a branch label
// (i, j) refers to coordinates, so the vanishing-cycle difference lands one
// index down: delta = e_{j-1} when i = 1, else e_{i-1} - e_{j-1}. Under this
// reading, labels (1,2), (1,3), (2,3) with sign +1 reproduce the three
// classical dimension-3 matrices. The overall sign is orientation-dependent
// and exposed as an argument.
inline QMat general_monodromy(std::size_t n, std::size_t i, std::size_t j, int sign = 1) {
    detail::require_dim(n);
    if (!(1 <= i && i < j && j <= n))
        throw std::invalid_argument("slag monodromy: branch label needs 1 <= i < j <= n");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("slag monodromy: sign must be +1 or -1");
    QMat t = QMat::identity(n);
    if (i == 1) {
        t.at(j - 2, n - 1) += sign;
    } else {
        t.at(i - 2, n - 1) += sign;
        t.at(j - 2, n - 1) -= sign;
    }
    return t;
}

struct SimplicityReport {
    std::vector<std::size_t> computed;
    std::vector<std::size_t> expected;
    bool match = false;
};

// Dimensions of the monodromy-invariant part of each H^q of the torus fiber,
// against the closed form [1, C(n-1,0), ..., C(n-1,n-1)].
inline SimplicityReport simplicity_dims(std::size_t n) {
    detail::require_dim(n);
    std::vector<QMat> gens;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) gens.push_back(general_monodromy(n, i, j, 1));
    SimplicityReport rep;
    rep.computed = exterior::invariant_dimensions(n, gens);
    rep.expected.assign(n + 1, 1);
    std::vector<unsigned long long> binom(n, 0);
    binom[0] = 1;
    for (std::size_t row = 1; row < n; ++row)
        for (std::size_t k = row; k-- > 0;) binom[k + 1] += binom[k];
    for (std::size_t q = 1; q <= n; ++q) rep.expected[q] = binom[q - 1];
    rep.match = (rep.computed == rep.expected);
    return rep;
}

// Deterministic sample off the deleted hypersurface: per-coordinate radii in
// [rmin, rmax], uniform phases; rejects points with |1 + prod z| < exclusion.
// Randomness is the (seed, index) stream, so batches are order-independent.
inline std::vector<Complex> sample_ambient_point(std::size_t n, std::uint64_t seed,
                                                 std::uint64_t index, double rmin = 0.1,
                                                 double rmax = 3.0, double exclusion = 0.05) {
    detail::require_dim(n);
    SplitMix64 rng = SplitMix64::stream(seed, index);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Complex> z(n);
        for (std::size_t j = 0; j < n; ++j) {
            double r = rmin + (rmax - rmin) * rng.unit();
            double a = 2.0 * std::numbers::pi * rng.unit();
            z[j] = std::polar(r, a);
        }
        if (std::abs(Complex(1.0, 0.0) + detail::product(z)) >= exclusion) return z;
    }
    throw std::runtime_error("slag sampling: rejection loop failed to leave the excluded tube");
}

}  // namespace mirrorfib::slag
