// CLI front end. Exit codes: 0 all checks pass, 1 some check failed,
// 2 malformed input / usage error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mirrorfib/commands.hpp"

int main(int argc, char** argv) {
    using namespace mirrorfib;

    CLI::App app{"verification kernel for torus-fibration mirror cohomology"};
    app.require_subcommand(1);

    cmd::RunConfig cfg;
    std::string dlist, wlist;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input_path, "input JSON file");
        sub->add_option("--trials", cfg.trials, "randomized trial count (default 200)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
        sub->add_option("--tol", cfg.tol, "tolerance for float checks (default 1e-9)")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--json", cfg.json_output, "emit the machine-readable JSON report");
        sub->add_option("--d", dlist, "comma-separated rational list (divisor / base point / h11,h12)");
        sub->add_option("--weights", wlist, "comma-separated positive weights");
        sub->add_option("--n", cfg.n, "complex dimension / lattice rank (default 3)");
        sub->add_option("--samples", cfg.samples, "sample count for sweeps (default 200)");
        sub->add_option("--theta", cfg.theta, "circle phase for fiber sampling (default 0)");
    };

    CLI::App* c_cy3 = app.add_subcommand("check-cy3", "threefold mirror-model suite on a datum file");
    CLI::App* c_chi = app.add_subcommand("chi", "Euler characteristic of O(D) via the section pairing");
    CLI::App* c_wts = app.add_subcommand("weights", "maximal-unipotency check for a commuting matrix family");
    CLI::App* c_k3 = app.add_subcommand("check-k3", "K3 section-lattice suite on a model file");
    CLI::App* c_slag = app.add_subcommand("slag", "special Lagrangian fibration tools");
    CLI::App* sl_verify = c_slag->add_subcommand("verify", "Lagrangian/special residual and roundtrip sweeps");
    CLI::App* sl_fiber = c_slag->add_subcommand("fiber", "invert the fibration over a base point");
    CLI::App* sl_disc = c_slag->add_subcommand("discriminant", "stratum membership and fiber type of a base point");
    CLI::App* sl_mono = c_slag->add_subcommand("monodromy", "branch monodromy matrices");
    CLI::App* sl_simp = c_slag->add_subcommand("simplicity", "monodromy-invariant cohomology dimensions");
    CLI::App* c_torus = app.add_subcommand("torus", "exterior-algebra duality diagram sweep");
    CLI::App* c_leray = app.add_subcommand("leray-table", "second-page cohomology table and its mirror");
    c_slag->require_subcommand(1);

    for (CLI::App* sub : {c_cy3, c_chi, c_wts, c_k3, sl_verify, sl_fiber, sl_disc, sl_mono,
                          sl_simp, c_torus, c_leray})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!dlist.empty()) cfg.d = cmd::parse_rat_list(dlist);
        if (!wlist.empty()) cfg.weights = cmd::parse_rat_list(wlist);

        report::Report rep;
        if (app.got_subcommand(c_cy3)) {
            rep = cmd::run_check_cy3(cfg);
        } else if (app.got_subcommand(c_chi)) {
            rep = cmd::run_chi(cfg);
        } else if (app.got_subcommand(c_wts)) {
            rep = cmd::run_weights(cfg);
        } else if (app.got_subcommand(c_k3)) {
            rep = cmd::run_check_k3(cfg);
        } else if (app.got_subcommand(c_slag)) {
            if (c_slag->got_subcommand(sl_verify)) rep = cmd::run_slag_verify(cfg);
            else if (c_slag->got_subcommand(sl_fiber)) rep = cmd::run_slag_fiber(cfg);
            else if (c_slag->got_subcommand(sl_disc)) rep = cmd::run_slag_discriminant(cfg);
            else if (c_slag->got_subcommand(sl_mono)) rep = cmd::run_slag_monodromy(cfg);
            else rep = cmd::run_slag_simplicity(cfg);
        } else if (app.got_subcommand(c_torus)) {
            rep = cmd::run_torus(cfg);
        } else {
            rep = cmd::run_leray_table(cfg);
        }

        if (cfg.json_output)
            std::cout << rep.to_json().dump(2) << "\n";
        else
            std::cout << rep.human();
        return rep.pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
