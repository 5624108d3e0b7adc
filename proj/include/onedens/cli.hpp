// Command-line front end.
//
// Subcommands:
//   planar sector-max | density | verify-cover | sweep
//   dodeca constants | frame | volume | delta
//
// Exit codes: 0 success, 1 argument errors, 2 numerical failures.
#pragma once

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "onedens/dodeca.hpp"
#include "onedens/planar.hpp"
#include "onedens/report.hpp"
#include "onedens/volume_est.hpp"

namespace onedens {

namespace cli_detail {

inline std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline DodecaConfig parse_config(const std::string& s) {
    return s == "regular" ? DodecaConfig::regular : DodecaConfig::paper;
}

inline LatticeFamily parse_family(const std::string& s) {
    return s == "square" ? LatticeFamily::square : LatticeFamily::hex;
}

struct Options {
    std::string format = "table";
    std::string config = "paper";
    std::string family = "hex";
    std::string method;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::int64_t n = -1;
    int m = -1;
    int tries = 100;
    int steps = 10;
    int window = 3;
    double spacing = 0.0;
    double spacing_min = 0.0;
    double spacing_max = 0.0;
    double init = 0.5;
};

}  // namespace cli_detail

// Parses and executes one invocation. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    using cli_detail::Options;
    Options opt;

    CLI::App app{"1-density of unit ball coverings: planar sector optimum, lattice cover checks,\n"
                 "and dodecahedral-cell volume estimators",
                 "onedens"};
    app.require_subcommand(1);

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"table", "csv", "json"}))
            ->capture_default_str();
    };
    const auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "master random seed")->capture_default_str();
    };
    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "cell constants configuration")
            ->check(CLI::IsMember({"paper", "regular"}))
            ->capture_default_str();
    };
    const auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", opt.family, "lattice family")
            ->check(CLI::IsMember({"hex", "square"}))
            ->capture_default_str();
    };

    ReportDocument doc;
    doc.meta.timestamp = cli_detail::now_iso8601();
    const auto note_default_seed = [&](const CLI::App* sub) {
        if (!sub->count("--seed"))
            err << "note: seed defaulted to 0; pass --seed to vary the run\n";
        doc.meta.seed = opt.seed;
    };

    CLI::App* planar = app.add_subcommand("planar", "planar (2D) 1-density results");
    planar->require_subcommand(1);

    CLI::App* sector = planar->add_subcommand("sector-max", "maximize the once-covered sector area");
    add_format(sector);
    sector->add_option("--init", opt.init, "optimizer initialization in (0,1)")
        ->check(CLI::Range(1e-6, 1.0 - 1e-6))
        ->capture_default_str();
    sector->callback([&] {
        const SectorMax sm = maximize_sector_once_area(opt.init);
        doc.meta.config = "-";
        doc.result = {{"x_star", sm.x_star}, {"f_star", sm.f_star}, {"ratio_star", sm.ratio_star}};
    });

    CLI::App* density = planar->add_subcommand("density", "coverage multiplicity histogram of a lattice cover");
    add_format(density);
    add_family(density);
    add_seed(density);
    density->add_option("--spacing", opt.spacing, "lattice spacing")
        ->required()
        ->check(CLI::PositiveNumber);
    density->add_option("--n", opt.n, "sample count")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    density->callback([&] {
        note_default_seed(density);
        if (opt.n < 0) opt.n = 1000000;
        RandomStream rs(opt.seed, 0);
        const LatticeCover cover = make_lattice(cli_detail::parse_family(opt.family), opt.spacing);
        const MultiplicityHistogram hist = coverage_multiplicity_histogram(cover, opt.n, rs);
        doc.meta.config = opt.family;
        doc.result = {{"spacing", opt.spacing},
                      {"samples", static_cast<double>(hist.samples)},
                      {"average_multiplicity", hist.average}};
        for (std::size_t k = 0; k < hist.fraction.size(); ++k)
            doc.result.emplace_back("fraction" + std::to_string(k), hist.fraction[k]);
    });

    CLI::App* verify = planar->add_subcommand("verify-cover", "check the unit-disk cover criterion");
    add_format(verify);
    add_family(verify);
    verify->add_option("--spacing", opt.spacing, "lattice spacing")
        ->required()
        ->check(CLI::PositiveNumber);
    verify->add_option("--window", opt.window, "neighbor shells for the Voronoi cell")
        ->check(CLI::Range(2, 20))
        ->capture_default_str();
    verify->callback([&] {
        const LatticeCover cover = make_lattice(cli_detail::parse_family(opt.family), opt.spacing);
        const CoverVerdict v = check_cover(cover, opt.window);
        doc.meta.config = opt.family;
        doc.result = {{"spacing", opt.spacing},
                      {"is_cover", v.is_cover ? 1.0 : 0.0},
                      {"r_max", v.r_max},
                      {"witness_cell", static_cast<double>(v.witness_cell)}};
    });

    CLI::App* sweep = planar->add_subcommand("sweep", "cover verdict and 1-density across spacings");
    add_format(sweep);
    add_family(sweep);
    add_seed(sweep);
    sweep->add_option("--min", opt.spacing_min, "smallest spacing")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--max", opt.spacing_max, "largest spacing")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--steps", opt.steps, "number of spacings")->check(CLI::Range(2, 10000))->capture_default_str();
    sweep->add_option("--n", opt.n, "samples per spacing")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sweep->add_option("--window", opt.window, "neighbor shells")->check(CLI::Range(2, 20))->capture_default_str();
    sweep->callback([&] {
        note_default_seed(sweep);
        if (opt.n < 0) opt.n = 100000;
        RandomStream rs(opt.seed, 0);
        const std::vector<SweepRow> rows =
            sweep_lattice(cli_detail::parse_family(opt.family), opt.spacing_min, opt.spacing_max,
                          opt.steps, opt.n, rs, opt.window);
        doc.meta.config = opt.family;
        // row mapping: param = spacing, mean = fraction1, sigma = its MC
        // standard error, max = r_max (cover iff r_max <= 1 + 1e-9)
        for (const SweepRow& r : rows)
            doc.rows.push_back({r.spacing, r.fraction1, r.fraction1_std_error, r.r_max});
    });

    CLI::App* dodeca = app.add_subcommand("dodeca", "dodecahedral-cell (3D) results");
    dodeca->require_subcommand(1);

    CLI::App* constants = dodeca->add_subcommand("constants", "cell constants a, R, H, alpha1");
    add_format(constants);
    add_config(constants);
    constants->callback([&] {
        const DodecaParams p = dodeca_params(cli_detail::parse_config(opt.config));
        doc.meta.config = opt.config;
        doc.result = {{"a", p.edge},
                      {"R", p.face_circumradius},
                      {"H", p.face_distance},
                      {"rho", p.circumradius},
                      {"alpha1", p.alpha1}};
    });

    CLI::App* frame_cmd = dodeca->add_subcommand("frame", "reference points and tetrahedra volumes");
    add_format(frame_cmd);
    add_config(frame_cmd);
    frame_cmd->callback([&] {
        const CellFrame f = cell_frame(dodeca_params(cli_detail::parse_config(opt.config)));
        doc.meta.config = opt.config;
        doc.result = {{"p0_z", f.p0.z},       {"p1_y", f.p1.y},     {"p1_z", f.p1.z},
                      {"p2_z", f.p2.z},       {"p3_x", f.p3.x},     {"p3_y", f.p3.y},
                      {"p3_z", f.p3.z},       {"p4_z", f.p4.z},     {"vol_T", f.vol_T},
                      {"vol_T_prime", f.vol_T_prime}, {"vol_big", f.vol_big}};
    });

    CLI::App* volume = dodeca->add_subcommand("volume", "estimate vol(S) (tables over n or m)");
    add_format(volume);
    add_config(volume);
    add_seed(volume);
    volume->add_option("--method", opt.method, "estimator")
        ->required()
        ->check(CLI::IsMember({"gnp", "hull", "rejection"}));
    volume->add_option("--n", opt.n, "points per try (gnp, rejection)")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    volume->add_option("--m", opt.m, "patch samples per try (hull)")->check(CLI::Range(1, 1 << 30));
    volume->add_option("--tries", opt.tries, "tries per row")->check(CLI::Range(1, 100000))->capture_default_str();
    volume->callback([&] {
        note_default_seed(volume);
        const CellFrame f = cell_frame(dodeca_params(cli_detail::parse_config(opt.config)));
        doc.meta.config = opt.config;
        std::vector<std::pair<double, EstimatorSpec>> grid;
        if (opt.method == "gnp") {
            std::vector<std::int64_t> ns = opt.n > 0 ? std::vector<std::int64_t>{opt.n}
                                                     : std::vector<std::int64_t>{80000, 140000, 200000};
            for (std::int64_t n : ns) {
                GnPConfig cfg;
                cfg.n = n;
                grid.emplace_back(static_cast<double>(n), EstimatorSpec::for_gnp(cfg));
            }
        } else if (opt.method == "hull") {
            std::vector<int> ms;
            if (opt.m > 0)
                ms.push_back(opt.m);
            else
                for (int m = 2000; m <= 20000; m += 2000) ms.push_back(m);
            for (int m : ms) grid.emplace_back(m, EstimatorSpec::for_hull(HullPatchConfig{m}));
        } else {
            const std::int64_t n = opt.n > 0 ? opt.n : 10000000;
            grid.emplace_back(static_cast<double>(n), EstimatorSpec::for_rejection(n));
        }
        for (std::size_t row = 0; row < grid.size(); ++row) {
            const TryStats st = run_trials(f, grid[row].second, opt.tries,
                                           opt.seed + static_cast<std::uint64_t>(row));
            doc.rows.push_back({grid[row].first, st.mean, st.sigma, st.max});
        }
    });

    CLI::App* delta = dodeca->add_subcommand("delta", "1-density delta3(dc) = alpha1 * alpha2");
    add_format(delta);
    add_config(delta);
    add_seed(delta);
    delta->add_option("--n", opt.n, "rejection sample count")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    delta->callback([&] {
        note_default_seed(delta);
        if (opt.n < 0) opt.n = 10000000;
        const DodecaParams p = dodeca_params(cli_detail::parse_config(opt.config));
        const CellFrame f = cell_frame(p);
        RandomStream rs(opt.seed, 0);
        const RejectionEstimate est = rejection_volume(f, opt.n, rs);
        const Delta3 d3 = delta3_dc(p, est.estimate);
        doc.meta.config = opt.config;
        doc.result = {{"n", static_cast<double>(opt.n)}, {"vol_S", est.estimate},
                      {"std_error", est.std_error},      {"alpha1", p.alpha1},
                      {"alpha2", d3.alpha2},             {"delta", d3.delta}};
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return 0;
        err << app.help();
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    }

    out << render_report(doc, parse_format(opt.format));
    return 0;
}

}  // namespace onedens
