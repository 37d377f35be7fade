#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "mirrorfib/exterior.hpp"
#include "mirrorfib/rng.hpp"

using namespace mirrorfib;
using namespace mirrorfib::exterior;

namespace {

Element cov(std::size_t n, std::vector<int> idx) {
    return Element::basis(n, Side::covectors, idx);
}
Element vec(std::size_t n, std::vector<int> idx) {
    return Element::basis(n, Side::vectors, idx);
}

std::vector<Rat> rand_vec(std::size_t n, SplitMix64& g) {
    std::vector<Rat> v(n);
    for (auto& x : v) x = rat_of(g.range(-4, 4), 1 + static_cast<long>(g.below(3)));
    return v;
}

Element rand_form(std::size_t n, std::size_t q, SplitMix64& g) {
    Element a(n, Side::covectors, q);
    for (Mask m : subsets(n, q)) a.set_coeff(m, rat_of(g.range(-5, 5)));
    return a;
}

// Independent evaluation oracle: a q-form is the alternating multilinear map
//   a(v_1,..,v_q) = sum_S c_S det[ (v_b)_{s_a} ]  (rows: sorted members of S,
// columns: argument position). Everything contraction claims is checked
// against this definition directly.
Rat eval_form(const Element& a, const std::vector<std::vector<Rat>>& args) {
    REQUIRE(args.size() == a.degree());
    Rat total(0);
    for (const auto& [m, c] : a.coeffs()) {
        std::vector<int> bits;
        for (Mask mm = m; mm; mm &= mm - 1) bits.push_back(std::countr_zero(mm));
        QMat sub(bits.size(), bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            for (std::size_t j = 0; j < bits.size(); ++j)
                sub.at(i, j) = args[j][static_cast<std::size_t>(bits[i])];
        total += c * sub.det();
    }
    return total;
}

int brute_merge_sign(Mask s, Mask t) {
    if (s & t) return 0;
    // Count inversions in the concatenation (sorted s, sorted t).
    int inv = 0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            if ((s >> i & 1) && (t >> j & 1) && j < i) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("subsets enumerates q-subsets in increasing mask order") {
    auto s = subsets(4, 2);
    CHECK(s == std::vector<Mask>{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100});
    CHECK(subsets(5, 0) == std::vector<Mask>{0});
    CHECK(subsets(3, 3) == std::vector<Mask>{0b111});
    CHECK(subsets(6, 3).size() == 20);
}

TEST_CASE("merge sign matches inversion counting") {
    for (Mask s = 0; s < 64; ++s)
        for (Mask t = 0; t < 64; ++t) {
            if (s & t) continue;
            CHECK(merge_sign(s, t) == brute_merge_sign(s, t));
        }
}

TEST_CASE("basis monomials sign-normalize their indices") {
    CHECK(cov(3, {2, 1}) == cov(3, {1, 2}).scaled(Rat(-1)));
    CHECK(cov(3, {3, 1, 2}) == cov(3, {1, 2, 3}));  // cyclic: even permutation
    CHECK(cov(3, {1, 1}).is_zero());
    CHECK_THROWS_AS(cov(3, {4}), std::invalid_argument);
    CHECK_THROWS_AS(cov(3, {0}), std::invalid_argument);
}

TEST_CASE("wedge products") {
    std::size_t n = 3;
    Element e1 = cov(n, {1}), e2 = cov(n, {2});
    CHECK(wedge(e1, e2) == cov(n, {1, 2}));
    CHECK(wedge(e2, e1) == cov(n, {1, 2}).scaled(Rat(-1)));
    Element s = e1 + e2;
    CHECK(wedge(s, s).is_zero());
    CHECK_THROWS_AS(wedge(cov(n, {1, 2}), cov(n, {2, 3})), std::invalid_argument);  // degree 4 > 3
    // Scalar factors multiply through.
    Element half = Element::scalar(n, Side::covectors, rat_of(1, 2));
    CHECK(wedge(half, e1) == e1.scaled(rat_of(1, 2)));
}

TEST_CASE("contraction on pinned examples") {
    std::size_t n = 3;
    Element a = cov(n, {1, 2});
    std::vector<Rat> e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
    CHECK(contract(e2, a) == cov(n, {1}));
    CHECK(contract(e1, a) == cov(n, {2}).scaled(Rat(-1)));
    CHECK(contract(e3, a).is_zero());
    CHECK_THROWS_AS(contract(e1, Element::scalar(n, Side::covectors, Rat(1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(contract(std::vector<Rat>{1, 0}, a), std::invalid_argument);
}

TEST_CASE("contraction agrees with last-slot evaluation") {
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t q = 1; q <= n; ++q)
            for (int trial = 0; trial < 6; ++trial) {
                SplitMix64 g = SplitMix64::stream(100 * n + 10 * q, trial);
                Element a = rand_form(n, q, g);
                std::vector<Rat> lambda = rand_vec(n, g);
                std::vector<std::vector<Rat>> args;
                for (std::size_t i = 0; i + 1 < q; ++i) args.push_back(rand_vec(n, g));
                Element c = contract(lambda, a);
                auto full = args;
                full.push_back(lambda);
                CHECK(eval_form(c, args) == eval_form(a, full));
            }
}

TEST_CASE("contracting twice by the same vector vanishes") {
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t q = 2; q <= n; ++q) {
            SplitMix64 g = SplitMix64::stream(777, n * 8 + q);
            Element a = rand_form(n, q, g);
            std::vector<Rat> lambda = rand_vec(n, g);
            CHECK(contract(lambda, contract(lambda, a)).is_zero());
        }
}

TEST_CASE("contraction is a right anti-derivation") {
    // i(v)(a ^ b) = a ^ i(v)b + (-1)^{deg b} i(v)a ^ b, the Leibniz shape
    // forced by the last-slot convention.
    std::size_t n = 4;
    for (int trial = 0; trial < 8; ++trial) {
        SplitMix64 g = SplitMix64::stream(4242, trial);
        std::size_t p = 1 + g.below(2), q = 1 + g.below(2);
        Element a = rand_form(n, p, g);
        Element b = rand_form(n, q, g);
        std::vector<Rat> lambda = rand_vec(n, g);
        Element lhs = contract(lambda, wedge(a, b));
        Element rhs = wedge(a, contract(lambda, b));
        Element cross = wedge(contract(lambda, a), b);
        rhs = (q % 2 == 0) ? rhs + cross : rhs - cross;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("duality on pinned examples") {
    CHECK(pd_to_vector(cov(2, {1})) == vec(2, {2}));
    CHECK(pd_to_vector(cov(2, {2})) == vec(2, {1}).scaled(Rat(-1)));
    CHECK(pd_to_vector(cov(3, {1, 2})) == vec(3, {3}));
    CHECK(pd_to_vector(cov(3, {1, 3})) == vec(3, {2}).scaled(Rat(-1)));
    CHECK(pd_to_vector(cov(3, {1, 2, 3})) == Element::scalar(3, Side::vectors, Rat(1)));
    CHECK_THROWS_AS(pd_to_vector(vec(3, {1})), std::invalid_argument);
}

TEST_CASE("duality solves the wedge characterization") {
    // pd(a) is pinned by: top coefficient of a ^ e*_T equals the e_T
    // coordinate of pd(a), for every (n-q)-subset T. Recompute it that way
    // and compare.
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t q = 0; q <= n; ++q)
            for (int trial = 0; trial < 4; ++trial) {
                SplitMix64 g = SplitMix64::stream(900 + n, 16 * q + trial);
                Element a = rand_form(n, q, g);
                Element expected(n, Side::vectors, n - q);
                Mask full = (Mask(1) << n) - 1;
                for (Mask t : subsets(n, n - q)) {
                    Element beta(n, Side::covectors, n - q);
                    beta.set_coeff(t, Rat(1));
                    expected.set_coeff(t, wedge(a, beta).coeff(full));
                }
                CHECK(pd_to_vector(a) == expected);
            }
}

TEST_CASE("duality intertwines contraction and wedge") {
    // pd(i(v) a) = (-1)^{n-q} pd(a) ^ v for every q-form a and vector v.
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t q = 1; q <= n; ++q) {
            SplitMix64 g = SplitMix64::stream(31337 + n, q);
            for (Mask m : subsets(n, q)) {
                Element a(n, Side::covectors, q);
                a.set_coeff(m, Rat(1));
                std::vector<Rat> coords = rand_vec(n, g);
                Element v(n, Side::vectors, 1);
                for (std::size_t i = 0; i < n; ++i) v.set_coeff(Mask(1) << i, coords[i]);
                Element lhs = pd_to_vector(contract(coords, a));
                Element rhs = wedge(pd_to_vector(a), v);
                if ((n - q) % 2 == 1) rhs = rhs.scaled(Rat(-1));
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("exterior power matrices") {
    QMat b{{1, 2}, {3, 4}};
    QMat top = exterior_power_matrix(b, 2);
    CHECK(top.rows() == 1);
    CHECK(top.at(0, 0) == b.det());
    CHECK(exterior_power_matrix(b, 0) == QMat::identity(1));
    CHECK(exterior_power_matrix(b, 1) == b);

    // Functoriality on a composite.
    SplitMix64 g = SplitMix64::stream(5150, 0);
    for (int trial = 0; trial < 4; ++trial) {
        QMat x(3, 3), y(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                x.at(i, j) = rat_of(g.range(-3, 3));
                y.at(i, j) = rat_of(g.range(-3, 3));
            }
        for (std::size_t q = 0; q <= 3; ++q)
            CHECK(exterior_power_matrix(x * y, q) ==
                  exterior_power_matrix(x, q) * exterior_power_matrix(y, q));
    }
}

TEST_CASE("dual action inverts and transposes") {
    QMat g{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(dual_action(g) == g.inverse().transpose());
    CHECK(dual_action(QMat::identity(4)) == QMat::identity(4));
    CHECK(dual_action(dual_action(g)) == g);
    CHECK_THROWS_AS(dual_action(QMat{{1, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("invariant dimensions of the standard monodromy triple") {
    QMat t1{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
    QMat t2{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
    QMat t3{{1, 0, 1}, {0, 1, -1}, {0, 0, 1}};
    auto dims = invariant_dimensions(3, {t1, t2, t3});
    CHECK(dims == std::vector<std::size_t>{1, 1, 2, 1});
}

TEST_CASE("invariant dimensions with no generators are binomials") {
    CHECK(invariant_dimensions(3, {}) == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(invariant_dimensions(4, {}) == std::vector<std::size_t>{1, 4, 6, 4, 1});
}

TEST_CASE("invariant dimensions for the rank-4 pair family") {
    // Unipotent generators fixing a flag: one per index pair, mirroring the
    // degeneration family in rank 4.
    auto gen = [](int i, int j) {
        QMat m = QMat::identity(4);
        if (i == 1) {
            m.at(static_cast<std::size_t>(j - 2), 3) = Rat(1);
        } else {
            m.at(static_cast<std::size_t>(i - 2), 3) = Rat(1);
            m.at(static_cast<std::size_t>(j - 2), 3) = Rat(-1);
        }
        return m;
    };
    std::vector<QMat> gens;
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) gens.push_back(gen(i, j));
    CHECK(invariant_dimensions(4, gens) == std::vector<std::size_t>{1, 1, 3, 3, 1});
}

TEST_CASE("invariant dimensions of a single shear") {
    QMat shear{{1, 1}, {0, 1}};
    CHECK(invariant_dimensions(2, {shear}) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("invariant dimensions ignore generator presentation") {
    QMat t1{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}};
    QMat t2{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
    QMat t3{{1, 0, 1}, {0, 1, -1}, {0, 0, 1}};
    auto base = invariant_dimensions(3, {t1, t2, t3});
    CHECK(invariant_dimensions(3, {t1.inverse(), t2.inverse(), t3.inverse()}) == base);
    QMat p{{1, 2, 0}, {0, 1, 1}, {1, 2, 1}};  // unimodular change of basis
    REQUIRE(p.det() == Rat(1));
    QMat pi = p.inverse();
    CHECK(invariant_dimensions(3, {p * t1 * pi, p * t2 * pi, p * t3 * pi}) == base);
    // Redundant generators change nothing.
    CHECK(invariant_dimensions(3, {t1, t2, t3, t1 * t2}) == base);
}
