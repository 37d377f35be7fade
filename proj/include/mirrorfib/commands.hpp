#pragma once

// One run_* function per CLI command, each returning a Report. All randomness
// is drawn from SplitMix64 streams keyed by (seed, trial index), so reports
// are byte-identical across runs with the same inputs. Random integer vectors
// use entries in [-5, 5]: small enough for readable witnesses, nonzero enough
// to exercise the cubic terms.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorfib/cy3_model.hpp"
#include "mirrorfib/exterior.hpp"
#include "mirrorfib/json_io.hpp"
#include "mirrorfib/k3_lattice.hpp"
#include "mirrorfib/report.hpp"
#include "mirrorfib/rng.hpp"
#include "mirrorfib/slag_fibration.hpp"
#include "mirrorfib/weight_filtration.hpp"

namespace mirrorfib::cmd {

struct RunConfig {
    std::string input_path;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    bool json_output = false;
    std::vector<Rat> d;        // --d "c1,c2,..."
    std::vector<Rat> weights;  // --weights "a1,a2,..."
    std::size_t n = 3;
    std::size_t samples = 200;
    double theta = 0.0;
};

inline std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? comma : comma - start);
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw std::invalid_argument("empty entry in list \"" + s + "\"");
        out.push_back(rat_parse(item.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace detail {

inline std::vector<Rat> random_vec(SplitMix64& g, std::size_t len) {
    std::vector<Rat> v(len);
    for (auto& x : v) x = rat_of(g.range(-5, 5));
    return v;
}

inline cy3::EvenClass random_even_class(SplitMix64& g, std::size_t r) {
    cy3::EvenClass a(r);
    a.a0 = rat_of(g.range(-5, 5));
    for (auto& x : a.a2) x = rat_of(g.range(-5, 5));
    for (auto& x : a.a4) x = rat_of(g.range(-5, 5));
    a.a6 = rat_of(g.range(-5, 5));
    return a;
}

// Accumulates a per-trial property into one Check.
struct TrialCheck {
    std::string name;
    bool pass = true;
    long first_failure = -1;

    explicit TrialCheck(std::string n) : name(std::move(n)) {}

    void record(std::size_t trial, bool ok) {
        if (!ok && pass) {
            pass = false;
            first_failure = static_cast<long>(trial);
        }
    }

    report::Check finish(std::size_t trials,
                         report::ordered_json extra = report::ordered_json::object()) const {
        report::ordered_json w;
        w["trials"] = trials;
        if (first_failure >= 0) w["first_failure"] = first_failure;
        for (auto& [k, v] : extra.items()) w[k] = v;
        return {name, pass, std::move(w)};
    }
};

inline report::Check assumptions_check() {
    report::ordered_json w;
    w["euler_linear_term"] = "second Chern coefficient pinned to c2/12";
    w["euler_identity"] = "section pairing = sheaf Euler characteristic (mirror Riemann-Roch normalization, assumed)";
    return {"assumptions", true, std::move(w)};
}

}  // namespace detail

inline report::Report run_check_cy3(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw std::invalid_argument("check-cy3 requires --input FILE");
    cy3::Model model(io::cy3_from_json(io::load_json_file(cfg.input_path)));
    report::Report rep;
    rep.command = "check-cy3";

    QMat gram = model.spair_gram();
    Rat det = gram.det();
    bool skew = (gram.transpose() == gram.scaled(Rat(-1)));
    {
        report::ordered_json w;
        w["dim"] = model.dim();
        w["gram_det"] = report::jrat(det);
        rep.checks.push_back(
            {"pairing_skew_unimodular", skew && (det == 1 || det == -1), std::move(w)});
    }

    detail::TrialCheck isometry("translation_isometry"), group("translation_group_law"),
        shift("graded_translation_action"), cubic("iterated_difference_cubic"),
        poly("section_pairing_polynomial"), chi("euler_characteristic_cross_check"),
        isot("leray_f1_isotropy"), pl("picard_lefschetz_isometry");
    std::size_t r = model.rank();
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 g = SplitMix64::stream(cfg.seed, trial);
        auto d = detail::random_vec(g, r), d1 = detail::random_vec(g, r),
             d2 = detail::random_vec(g, r), d3 = detail::random_vec(g, r);
        auto alpha = detail::random_even_class(g, r), beta = detail::random_even_class(g, r);

        isometry.record(trial, model.spair(model.translate(d, alpha), model.translate(d, beta)) ==
                                   model.spair(alpha, beta));

        std::vector<Rat> dsum(r);
        for (std::size_t k = 0; k < r; ++k) dsum[k] = d1[k] + d2[k];
        bool grp = model.translate(d1, model.translate(d2, alpha)) == model.translate(dsum, alpha);
        grp = grp && model.translate(model.zero_vec(), alpha) == alpha;
        group.record(trial, grp);

        bool sh = true;
        for (std::size_t coord = 0; coord < model.dim(); ++coord)
            sh = sh && model.graded_action_check(d, model.basis_class(coord)).pass();
        shift.record(trial, sh);

        cubic.record(trial, model.monodromy_cubic_check(d1, d2, d3).ok);

        auto sp = model.section_polynomial(d);
        poly.record(trial, sp.closed_form_ok && sp.odd_ok && sp.diff3_constant_ok);

        chi.record(trial, model.chi_line_bundle(d).ok);

        cy3::EvenClass low1(r), low2(r);
        low1.a4 = detail::random_vec(g, r);
        low1.a6 = rat_of(g.range(-5, 5));
        low2.a4 = detail::random_vec(g, r);
        low2.a6 = rat_of(g.range(-5, 5));
        isot.record(trial, model.f1_isotropy(low1, low2) == 0);

        pl.record(trial, model.spair(model.picard_lefschetz(alpha), model.picard_lefschetz(beta)) ==
                             model.spair(alpha, beta));
    }
    for (const auto& tc : {isometry, group, shift, cubic, poly, chi, isot, pl})
        rep.checks.push_back(tc.finish(cfg.trials));

    {
        std::vector<Rat> ones(r, Rat(1));
        auto wl = model.weight_vs_leray(ones);
        report::ordered_json w;
        w["weights"] = report::jvec(ones);
        w["degenerate"] = wl.degenerate;
        bool ok = true;
        if (!wl.degenerate) {
            ok = wl.pass();
            w["filtrations_match"] = wl.filtrations_match;
            w["maximally_unipotent"] = wl.mu.pass;
            w["coupling_matrix"] = report::jmat(wl.mu.m_matrix);
            w["coupling_is_minus_identity"] =
                (wl.mu.m_matrix == QMat::identity(r).scaled(Rat(-1)));
        }
        rep.checks.push_back({"weight_filtration_vs_leray", ok, std::move(w)});
    }

    rep.checks.push_back(detail::assumptions_check());
    return rep;
}

inline report::Report run_chi(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw std::invalid_argument("chi requires --input FILE");
    if (cfg.d.empty()) throw std::invalid_argument("chi requires --d \"c1,c2,...\"");
    cy3::Model model(io::cy3_from_json(io::load_json_file(cfg.input_path)));
    auto res = model.chi_line_bundle(cfg.d);
    report::Report rep;
    rep.command = "chi";
    report::ordered_json w;
    w["d"] = report::jvec(cfg.d);
    w["chi"] = report::jrat(res.chi);
    w["section_value"] = report::jrat(res.section_value);
    w["mukai_value"] = report::jrat(res.mukai_value);
    rep.checks.push_back({"euler_characteristic_cross_check", res.ok, std::move(w)});
    rep.checks.push_back(detail::assumptions_check());
    return rep;
}

inline report::Report run_weights(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw std::invalid_argument("weights requires --input FILE");
    auto mats = io::matrices_from_json(io::load_json_file(cfg.input_path));
    std::vector<Rat> a = cfg.weights;
    if (a.empty()) a.assign(mats.size(), Rat(1));
    auto mu = weightfilt::maximally_unipotent_check(mats, a);
    report::Report rep;
    rep.command = "weights";
    {
        report::ordered_json w;
        w["family_size"] = mats.size();
        w["ambient_dim"] = mats.empty() ? 1 : mats[0].rows();
        rep.checks.push_back({"family_unipotent", mu.unipotent, std::move(w)});
    }
    {
        report::ordered_json w;
        if (mu.unipotent) {
            w["center"] = mu.center;
            w["dim_w0"] = mu.dim_w0;
            w["dim_w1"] = mu.dim_w1;
            w["dim_w2"] = mu.dim_w2;
            w["expected"] = "1, 1, 1 + family_size";
        }
        rep.checks.push_back({"weight_dimensions", mu.unipotent && mu.dims_ok, std::move(w)});
    }
    {
        report::ordered_json w;
        if (mu.unipotent) {
            w["well_defined"] = mu.m_well_defined;
            w["coupling_matrix"] = report::jmat(mu.m_matrix);
        }
        rep.checks.push_back({"coupling_matrix_invertible",
                              mu.unipotent && mu.m_well_defined && mu.m_invertible, std::move(w)});
    }
    return rep;
}

inline report::Report run_check_k3(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw std::invalid_argument("check-k3 requires --input FILE");
    k3::Model model = io::k3_from_json(io::load_json_file(cfg.input_path));
    report::Report rep;
    rep.command = "check-k3";

    QMat pairing(model.dim(), model.dim());
    for (std::size_t i = 0; i < model.dim(); ++i)
        for (std::size_t j = 0; j < model.dim(); ++j) {
            QMat ei(model.dim(), 1), ej(model.dim(), 1);
            ei.at(i, 0) = 1;
            ej.at(j, 0) = 1;
            pairing.at(i, j) = model.pair(ei, ej);
        }

    {
        QMat lhs = model.eprime_class();
        QMat rhs = model.sigma_class(model.zero_vec()) + model.e_class();
        report::ordered_json w;
        w["identity"] = "E' = sigma_0 + E";
        rep.checks.push_back({"zero_section_decomposition", lhs == rhs, std::move(w)});
    }

    detail::TrialCheck trans_eq("translation_equals_monodromy"),
        preserves("monodromy_preserves_pairing"), square("section_square_minus_two"),
        rr("riemann_roch_pairing"), grp("translation_group_law");
    bool all_integral = true;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 g = SplitMix64::stream(cfg.seed, trial);
        auto d = detail::random_vec(g, model.t()), d2vec = detail::random_vec(g, model.t());

        QMat td = model.monodromy(d);
        trans_eq.record(trial, model.translation(d) == td);
        preserves.record(trial, td.transpose() * pairing * td == pairing);
        QMat sd = model.sigma_class(d);
        square.record(trial, model.pair(sd, sd) == Rat(-2));
        rr.record(trial, model.riemann_roch_check(d).ok);

        std::vector<Rat> dsum(model.t());
        for (std::size_t k = 0; k < model.t(); ++k) dsum[k] = d[k] + d2vec[k];
        bool ok = (td * model.monodromy(d2vec) == model.monodromy(dsum));
        ok = ok && (model.monodromy(model.zero_vec()) == QMat::identity(model.dim()));
        grp.record(trial, ok);

        all_integral = all_integral && k3::matrix_is_integral(td);
    }
    for (const auto& tc : {trans_eq, preserves, square, rr, grp})
        rep.checks.push_back(tc.finish(cfg.trials));

    {
        // Advisory: an odd diagonal keeps every rational identity above valid,
        // but integral monodromy is only guaranteed for an even lattice.
        report::ordered_json w;
        w["even_diagonal"] = model.even_diagonal();
        w["all_sampled_monodromy_integral"] = all_integral;
        rep.checks.push_back({"integrality_advisory", true, std::move(w)});
    }
    return rep;
}

inline report::Report run_slag_verify(const RunConfig& cfg) {
    report::Report rep;
    rep.command = "slag-verify";
    double worst_lag = 0.0, worst_special = 0.0, worst_round = 0.0;
    for (std::size_t idx = 0; idx < cfg.samples; ++idx) {
        auto z = slag::sample_ambient_point(cfg.n, cfg.seed, idx);
        worst_lag = std::max(worst_lag, slag::lagrangian_residual(z));
        worst_special = std::max(worst_special, slag::special_residual(z));
    }
    for (std::size_t idx = 0; idx < cfg.samples; ++idx) {
        SplitMix64 g = SplitMix64::stream(cfg.seed, (1ull << 32) + idx);
        std::vector<double> x(cfg.n);
        for (std::size_t k = 0; k + 1 < cfg.n; ++k) x[k] = -2.0 + 4.0 * g.unit();
        x[cfg.n - 1] = -1.0 + 2.0 * g.unit();
        double theta;
        do {
            theta = 2.0 * std::numbers::pi * g.unit();
        } while (std::abs(std::polar(std::exp(x[cfg.n - 1]), theta) +
                          slag::Complex(-1.0, 0.0)) < 1e-6);
        std::vector<double> phases(cfg.n - 2);
        for (auto& p : phases) p = 2.0 * std::numbers::pi * g.unit();
        auto z = slag::fiber_point(x, theta, phases);
        auto back = slag::f_eval(z);
        for (std::size_t k = 0; k < cfg.n; ++k)
            worst_round = std::max(worst_round, std::abs(back[k] - x[k]));
    }
    auto add = [&](const std::string& name, double worst, double bound) {
        report::ordered_json w;
        w["n"] = cfg.n;
        w["samples"] = cfg.samples;
        w["worst"] = report::jfloat(worst);
        w["bound"] = report::jfloat(bound);
        rep.checks.push_back({name, worst < bound, std::move(w)});
    };
    add("lagrangian_residual_sweep", worst_lag, cfg.tol);
    add("special_residual_sweep", worst_special, cfg.tol);
    add("fiber_roundtrip_sweep", worst_round, 1e-8);
    return rep;
}

inline report::Report run_slag_fiber(const RunConfig& cfg) {
    if (cfg.d.size() < 2)
        throw std::invalid_argument("slag fiber requires --d \"x1,...,xn\" with n >= 2");
    std::vector<double> x;
    for (const auto& v : cfg.d) x.push_back(rat_to_double(v));
    std::vector<double> phases(x.size() - 2, 0.0);
    auto z = slag::fiber_point(x, cfg.theta, phases);
    auto back = slag::f_eval(z);
    double err = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) err = std::max(err, std::abs(back[k] - x[k]));
    report::Report rep;
    rep.command = "slag-fiber";
    report::ordered_json w;
    w["x"] = [&] {
        report::ordered_json a = report::ordered_json::array();
        for (double v : x) a.push_back(report::jfloat(v));
        return a;
    }();
    w["theta"] = report::jfloat(cfg.theta);
    w["z"] = [&] {
        report::ordered_json a = report::ordered_json::array();
        for (const auto& v : z) {
            report::ordered_json p = report::ordered_json::array();
            p.push_back(report::jfloat(v.real()));
            p.push_back(report::jfloat(v.imag()));
            a.push_back(std::move(p));
        }
        return a;
    }();
    w["roundtrip_error"] = report::jfloat(err);
    rep.checks.push_back({"fiber_roundtrip", err < 1e-8, std::move(w)});
    return rep;
}

inline report::Report run_slag_discriminant(const RunConfig& cfg) {
    if (cfg.d.size() < 2)
        throw std::invalid_argument("slag discriminant requires --d \"x1,...,xn\" with n >= 2");
    std::vector<double> x;
    for (const auto& v : cfg.d) x.push_back(rat_to_double(v));
    auto branches = slag::discriminant_member(x);
    auto ft = slag::fiber_type(x);
    report::Report rep;
    rep.command = "slag-discriminant";
    report::ordered_json w;
    w["branches"] = [&] {
        report::ordered_json a = report::ordered_json::array();
        for (const auto& [i, j] : branches) {
            report::ordered_json p = report::ordered_json::array();
            p.push_back(i);
            p.push_back(j);
            a.push_back(std::move(p));
        }
        return a;
    }();
    w["l"] = ft.l;
    w["type"] = ft.type_string;
    w["dual_type"] = ft.dual_type_string;
    bool consistent = branches.empty() ? ft.l <= 1 : ft.l >= 2;
    rep.checks.push_back({"stratification_consistent", consistent, std::move(w)});
    return rep;
}

inline report::Report run_slag_monodromy(const RunConfig& cfg) {
    report::Report rep;
    rep.command = "slag-monodromy";
    if (cfg.n == 3) {
        auto classical = slag::monodromy_matrices_n3();
        bool match = slag::general_monodromy(3, 1, 2) == classical[0] &&
                     slag::general_monodromy(3, 1, 3) == classical[1] &&
                     slag::general_monodromy(3, 2, 3) == classical[2];
        report::ordered_json w;
        w["T1"] = report::jmat(classical[0]);
        w["T2"] = report::jmat(classical[1]);
        w["T3"] = report::jmat(classical[2]);
        rep.checks.push_back({"classical_matrices_reproduced", match, std::move(w)});
    }
    bool unip = true, fixes = true;
    std::size_t count = 0;
    for (std::size_t i = 1; i <= cfg.n; ++i)
        for (std::size_t j = i + 1; j <= cfg.n; ++j)
            for (int sign : {1, -1}) {
                QMat t = slag::general_monodromy(cfg.n, i, j, sign);
                QMat nil = t - QMat::identity(cfg.n);
                unip = unip && (nil * nil).is_zero();
                QMat delta(cfg.n, 1);
                if (i == 1) {
                    delta.at(j - 2, 0) = sign;
                } else {
                    delta.at(i - 2, 0) = sign;
                    delta.at(j - 2, 0) = -sign;
                }
                fixes = fixes && (t * delta == delta);
                ++count;
            }
    report::ordered_json w;
    w["n"] = cfg.n;
    w["branch_matrices_checked"] = count;
    rep.checks.push_back({"unipotency_order_two", unip, w});
    rep.checks.push_back({"vanishing_difference_fixed", fixes, w});
    return rep;
}

inline report::Report run_slag_simplicity(const RunConfig& cfg) {
    auto res = slag::simplicity_dims(cfg.n);
    report::Report rep;
    rep.command = "slag-simplicity";
    report::ordered_json w;
    w["n"] = cfg.n;
    w["computed"] = report::jvec(res.computed);
    w["expected"] = report::jvec(res.expected);
    rep.checks.push_back({"invariant_dimensions_match", res.match, std::move(w)});
    return rep;
}

inline report::Report run_torus(const RunConfig& cfg) {
    using namespace exterior;
    std::size_t n = cfg.n;
    if (n < 2 || n > 10)
        throw std::invalid_argument("torus diagram sweep supports 2 <= n <= 10");
    report::Report rep;
    rep.command = "torus";
    bool ok = true;
    std::size_t cases = 0;
    for (std::size_t q = 1; q <= n; ++q) {
        for (Mask s : subsets(static_cast<int>(n), static_cast<int>(q))) {
            Element a(n, Side::covectors, q);
            a.set_coeff(s, Rat(1));
            int sign = ((n - q) % 2 == 0) ? 1 : -1;
            for (std::size_t j = 1; j <= n; ++j) {
                std::vector<Rat> lambda(n, Rat(0));
                lambda[j - 1] = 1;
                Element lhs = pd_to_vector(contract(lambda, a));
                Element lam = Element::basis(n, Side::vectors, {static_cast<int>(j)});
                Element rhs = wedge(pd_to_vector(a), lam).scaled(rat_of(sign));
                ok = ok && (lhs == rhs);
                ++cases;
            }
        }
    }
    report::ordered_json w;
    w["n"] = n;
    w["cases"] = cases;
    rep.checks.push_back({"duality_diagram_exact", ok, std::move(w)});
    return rep;
}

inline report::Report run_leray_table(const RunConfig& cfg) {
    if (cfg.d.size() != 2)
        throw std::invalid_argument("leray-table requires --d \"h11,h12\"");
    long h11 = rat_to_long(cfg.d[0]), h12 = rat_to_long(cfg.d[1]);
    auto table = cy3::leray_table(h11, h12);
    report::Report rep;
    rep.command = "leray-table";
    auto gridj = [](const std::array<std::array<long, 4>, 4>& g) {
        report::ordered_json a = report::ordered_json::array();
        for (const auto& row : g) {
            report::ordered_json r = report::ordered_json::array();
            for (long v : row) r.push_back(v);
            a.push_back(std::move(r));
        }
        return a;
    };
    report::ordered_json w;
    w["h11"] = h11;
    w["h12"] = h12;
    w["rows_are_fiber_degree"] = "q = 3 down to 0; columns are base degree p = 0..3";
    w["grid"] = gridj(table.grid);
    w["mirror"] = gridj(table.mirror);
    w["b3"] = 2 + 2 * h12;
    w["mirror_b3"] = 2 + 2 * h11;
    rep.checks.push_back({"second_page_table", true, std::move(w)});
    return rep;
}

}  // namespace mirrorfib::cmd
