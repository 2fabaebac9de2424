#include "steer/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "steer/corner.hpp"
#include "steer/errors.hpp"
#include "steer/io.hpp"
#include "steer/market_sim.hpp"
#include "steer/quadrature.hpp"
#include "steer/serialize.hpp"

namespace steer::cli {
namespace {

struct EnvOpt {
    double a = -1.0;
    double s = -1.0;

    void attach(CLI::App* cmd) {
        auto* oa = cmd->add_option("--A", a, "reservation threshold A")
                       ->check(CLI::Range(0.0, 1.0));
        auto* os = cmd->add_option("--s", s, "search cost s")
                       ->check(CLI::Range(0.0, 0.5));
        oa->excludes(os);
        os->excludes(oa);
    }

    SearchEnv resolve() const {
        const bool has_a = a >= 0.0;
        const bool has_s = s >= 0.0;
        if (has_a == has_s)
            throw CLI::ValidationError("env", "exactly one of --A or --s is required");
        return has_a ? SearchEnv::from_threshold(a) : SearchEnv::from_cost(s);
    }
};

std::string meta_comment(const char* command, const SearchEnv& env,
                         const std::string& extra = {}) {
    std::ostringstream out;
    out << "# command=" << command << "\n";
    out << "# A=" << format_double(env.threshold) << "\n";
    out << "# s=" << format_double(env.cost) << "\n";
    if (!extra.empty()) out << extra;
    return out.str();
}

nlohmann::json meta_json(const char* command, const SearchEnv& env) {
    return {{"command", command}, {"A", env.threshold}, {"s", env.cost}};
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    atomic_write_file(out_path, content);
}

void emit_json(const std::string& out_path, nlohmann::json j) {
    emit(out_path, j.dump(2) + "\n");
}

std::string csv_row(std::initializer_list<double> cells, const std::string& tail = {}) {
    std::string row;
    for (double c : cells) {
        if (!row.empty()) row += ',';
        row += format_double(c);
    }
    if (!tail.empty()) {
        row += ',';
        row += tail;
    }
    row += '\n';
    return row;
}

SearchAlgorithm algorithm_by_name(const std::string& name, const PricePair& prices,
                                  double alpha) {
    if (name == "prominence1") return SearchAlgorithm::prominence(1);
    if (name == "prominence2") return SearchAlgorithm::prominence(2);
    if (name == "random") return SearchAlgorithm::random();
    if (name == "price-directed") return SearchAlgorithm::price_directed();
    if (name == "contract")
        return SearchAlgorithm::contract_rule({prices.p1, prices.p2, alpha});
    throw CLI::ValidationError("--algorithm", "unknown algorithm: " + name);
}

// Roots of f on [lo, hi] located by sign scan + bisection.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo,
                               double hi, int cells) {
    std::vector<double> roots;
    double prev_x = lo;
    double prev_f = f(prev_x);
    for (int k = 1; k <= cells; ++k) {
        const double x = lo + (hi - lo) * k / cells;
        const double fx = f(x);
        if (prev_f == 0.0) roots.push_back(prev_x);
        else if ((prev_f > 0.0) != (fx > 0.0))
            roots.push_back(bisect_root(f, prev_x, x, 1e-12));
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

int run_demand(const EnvOpt& envopt, double p1, double p2, const std::string& format,
               const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const PricePair prices{p1, p2};
    const DemandProfile d = demand_profile(env, prices);
    const SocialValues sv = social_values(env, prices);
    if (format == "json") {
        nlohmann::json j = meta_json("demand", env);
        j["p1"] = p1;
        j["p2"] = p2;
        j["d11"] = d.d11;
        j["d12"] = d.d12;
        j["d21"] = d.d21;
        j["d22"] = d.d22;
        j["bonus"] = d.bonus;
        j["v11"] = sv.v11;
        j["v22"] = sv.v22;
        j["sw1"] = sv.sw1;
        j["sw2"] = sv.sw2;
        emit_json(out_path, j);
    } else {
        std::string csv = meta_comment("demand", env);
        csv += "p1,p2,d11,d12,d21,d22,bonus,v11,v22,sw1,sw2\n";
        csv += csv_row({p1, p2, d.d11, d.d12, d.d21, d.d22, d.bonus, sv.v11, sv.v22,
                        sv.sw1, sv.sw2});
        emit(out_path, csv);
    }
    return 0;
}

int run_phi(const EnvOpt& envopt, double p1, double p2, const std::string& format,
            const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const PricePair prices{p1, p2};
    const AlphaInterval iv = alpha_interval(env, prices);
    const double h = h_value(env, prices);
    if (format == "csv") {
        std::string csv = meta_comment("phi", env);
        csv += "p1,p2,lo,hi,empty,h\n";
        csv += csv_row({p1, p2, iv.lo, iv.hi, iv.empty ? 1.0 : 0.0, h});
        emit(out_path, csv);
    } else {
        nlohmann::json j = meta_json("phi", env);
        j["p1"] = p1;
        j["p2"] = p2;
        j["interval"] = iv;
        j["h"] = h;
        emit_json(out_path, j);
    }
    return 0;
}

int run_boundary(const EnvOpt& envopt, int n, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const BoundaryCurve curve = trace_boundary(env, n);
    std::string csv = meta_comment("boundary", env,
                                   "# n=" + std::to_string(n) + "\n");
    csv += boundary_to_csv(curve);
    emit(out_path, csv);
    return 0;
}

int run_solve(const EnvOpt& envopt, const std::string& objective,
              const std::string& direction, int grid, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const SolveResult r =
        solve(env, objective_from_string(objective), direction_from_string(direction), grid);
    nlohmann::json j = meta_json("solve", env);
    j["objective"] = objective;
    j["direction"] = direction;
    j.update(nlohmann::json(r));
    emit_json(out_path, j);
    return 0;
}

int run_first_best(const EnvOpt& envopt, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const SolveResult r = first_best(env);
    nlohmann::json j = meta_json("first-best", env);
    j.update(nlohmann::json(r));
    j["p1_times_p2"] = r.contract.p1 * r.contract.p2;
    emit_json(out_path, j);
    return 0;
}

int run_critical(double s_lo, double s_hi, const std::string& out_path) {
    const CriticalThreshold c = critical_threshold(s_lo, s_hi);
    nlohmann::json j = {{"command", "critical"},
                        {"s_lo", s_lo},
                        {"s_hi", s_hi},
                        {"s_star", c.s_star},
                        {"A_star", c.a_star},
                        {"p_bar", c.p_bar}};
    emit_json(out_path, j);
    return 0;
}

int run_verify(const EnvOpt& envopt, const std::string& algorithm, double p1, double p2,
               double alpha, long grid_n, double tol, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const PricePair prices{p1, p2};
    const SearchAlgorithm algo = algorithm_by_name(algorithm, prices, alpha);
    const VerificationReport r = verify_nash(env, algo, prices, grid_n, tol);
    nlohmann::json j = meta_json("verify", env);
    j["algorithm"] = algorithm;
    j["p1"] = p1;
    j["p2"] = p2;
    j.update(nlohmann::json(r));
    emit_json(out_path, j);
    return 0;
}

int run_simulate(const EnvOpt& envopt, double p1, double p2, double alpha,
                 std::int64_t n, std::uint64_t seed, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const EmpiricalOutcome o = simulate(env, {p1, p2}, alpha, n, seed);
    nlohmann::json j = meta_json("simulate", env);
    j["p1"] = p1;
    j["p2"] = p2;
    j["alpha"] = alpha;
    j.update(nlohmann::json(o));
    emit_json(out_path, j);
    return 0;
}

int run_corner(const EnvOpt& envopt, int n, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    std::string csv = meta_comment("corner", env, "# n=" + std::to_string(n) + "\n");
    csv += corner_sweep_to_csv(corner_sweep(env, n));
    emit(out_path, csv);
    return 0;
}

int run_figure2(const EnvOpt& envopt, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    std::string csv = meta_comment("figure2", env);
    csv += "label,p1,p2,alpha,h,in_p,converged\n";
    struct Row {
        const char* label;
        SearchAlgorithm algo;
        PricePair start;
    };
    const Row rows[] = {
        {"prominence1", SearchAlgorithm::prominence(1), {0.5, 0.4}},
        {"prominence2", SearchAlgorithm::prominence(2), {0.4, 0.5}},
        {"random", SearchAlgorithm::random(), {0.45, 0.45}},
    };
    bool all_converged = true;
    for (const Row& row : rows) {
        const EquilibriumResult eq =
            find_equilibrium(env, row.algo, row.start, 500, 1e-7);
        if (!eq.converged) {
            all_converged = false;
            std::cerr << "warning: " << row.label << " did not converge\n";
        }
        const double h = h_value(env, eq.prices);
        std::ostringstream line;
        line << row.label << ','
             << format_double(eq.prices.p1) << ',' << format_double(eq.prices.p2) << ','
             << format_double(row.algo.alpha(eq.prices.p1, eq.prices.p2)) << ','
             << format_double(h) << ',' << (contains(env, eq.prices) ? 1 : 0) << ','
             << (eq.converged ? 1 : 0) << '\n';
        csv += line.str();
    }
    emit(out_path, csv);
    return all_converged ? 0 : 0;  // non-convergence is a warning, not an error
}

int run_figure3(const EnvOpt& envopt, double alpha, int n, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const double a = env.threshold;
    const double cap = std::min(a, 1.0);
    std::string csv = meta_comment("figure3", env,
                                   "# alpha=" + format_double(alpha) + "\n");
    csv += "curve,p1,p2\n";
    const double bonus_a = (1.0 - a) * (1.0 - a);

    // IC1 equality: max pi_1^2(.,p2) = pi_1^2(p1,p2) + alpha p1 B(p1,p2);
    // roots in p1 for each p2 column. IC2 mirrored. At alpha = 0 (resp. 1)
    // the binding seller keeps no bonus share and the locus degenerates to
    // a tangency at its deviation best response, which a sign scan cannot
    // see; emit the argmax directly there.
    for (int k = 1; k < n; ++k) {
        const double p2 = cap * k / n;
        if (alpha == 0.0) {
            csv += "ic1," + format_double(best_deviation(env, p2).price) + "," +
                   format_double(p2) + "\n";
            continue;
        }
        const double rhs = best_deviation(env, p2).profit;
        auto residual = [&](double p1) {
            const double gap = p1 - p2;
            const double bonus = bonus_a - 0.5 * gap * gap;
            return p1 * second_rank_demand(env, p1, p2) + alpha * p1 * bonus - rhs;
        };
        for (double root : scan_roots(residual, 0.0, cap, 400))
            csv += "ic1," + format_double(root) + "," + format_double(p2) + "\n";
    }
    for (int k = 1; k < n; ++k) {
        const double p1 = cap * k / n;
        if (alpha == 1.0) {
            csv += "ic2," + format_double(p1) + "," +
                   format_double(best_deviation(env, p1).price) + "\n";
            continue;
        }
        const double rhs = best_deviation(env, p1).profit;
        auto residual = [&](double p2) {
            const double gap = p1 - p2;
            const double bonus = bonus_a - 0.5 * gap * gap;
            return p2 * second_rank_demand(env, p2, p1) + (1.0 - alpha) * p2 * bonus - rhs;
        };
        for (double root : scan_roots(residual, 0.0, cap, 400))
            csv += "ic2," + format_double(p1) + "," + format_double(root) + "\n";
    }
    emit(out_path, csv);
    return 0;
}

int run_figure4(const EnvOpt& envopt, int n, const std::string& out_path) {
    const SearchEnv env = envopt.resolve();
    const double a = env.threshold;
    std::string csv = meta_comment("figure4", env, "# n=" + std::to_string(n) + "\n");
    csv += "kind,p1,p2\n";
    const BoundaryCurve curve = trace_boundary(env, 512);
    for (const PricePair& p : curve.points)
        csv += "boundary," + format_double(p.p1) + "," + format_double(p.p2) + "\n";
    for (int k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / n;
        csv += "a_line," + format_double(a) + "," + format_double(t) + "\n";
        csv += "a_line," + format_double(t) + "," + format_double(a) + "\n";
    }
    for (const CornerSweepRow& row : corner_sweep(env, n)) {
        if (row.in_hat && row.regime != CornerRegime::BothBelow)
            csv += "hat," + format_double(row.prices.p1) + "," +
                   format_double(row.prices.p2) + "\n";
    }
    emit(out_path, csv);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"steer: platform-designed sequential search toolkit"};
    app.require_subcommand(1);

    // demand
    EnvOpt env_demand;
    double p1 = 0.0, p2 = 0.0, alpha = 0.5;
    std::string out_path, format = "csv";
    auto* cmd_demand = app.add_subcommand("demand", "rank-conditional demands and social values");
    env_demand.attach(cmd_demand);
    cmd_demand->add_option("--p1", p1)->required();
    cmd_demand->add_option("--p2", p2)->required();
    cmd_demand->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    cmd_demand->add_option("--out", out_path);

    // phi
    EnvOpt env_phi;
    auto* cmd_phi = app.add_subcommand("phi", "implementable search-order interval");
    env_phi.attach(cmd_phi);
    cmd_phi->add_option("--p1", p1)->required();
    cmd_phi->add_option("--p2", p2)->required();
    cmd_phi->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    cmd_phi->add_option("--out", out_path);

    // boundary
    EnvOpt env_boundary;
    int boundary_n = 512;
    auto* cmd_boundary = app.add_subcommand("boundary", "trace the boundary of P to CSV");
    env_boundary.attach(cmd_boundary);
    cmd_boundary->add_option("--n", boundary_n)->check(CLI::Range(64, 1 << 20));
    cmd_boundary->add_option("--out", out_path);

    // solve
    EnvOpt env_solve;
    std::string objective = "profit", direction = "max";
    int grid = 400;
    auto* cmd_solve = app.add_subcommand("solve", "optimal contract for an objective");
    env_solve.attach(cmd_solve);
    cmd_solve->add_option("--objective", objective)
        ->check(CLI::IsMember({"profit", "tp", "sw", "cs"}))
        ->required();
    cmd_solve->add_option("--direction", direction)
        ->check(CLI::IsMember({"max", "min"}))
        ->required();
    cmd_solve->add_option("--grid", grid)->check(CLI::Range(400, 4000));
    cmd_solve->add_option("--out", out_path);

    // first-best
    EnvOpt env_fb;
    auto* cmd_fb = app.add_subcommand("first-best", "unconstrained multiproduct optimum");
    env_fb.attach(cmd_fb);
    cmd_fb->add_option("--out", out_path);

    // critical
    double s_lo = 0.02, s_hi = 0.08;
    auto* cmd_critical = app.add_subcommand("critical", "critical search cost s*");
    cmd_critical->add_option("--s-lo", s_lo);
    cmd_critical->add_option("--s-hi", s_hi);
    cmd_critical->add_option("--out", out_path);

    // verify
    EnvOpt env_verify;
    std::string algorithm = "random";
    long grid_n = 2000;
    double tol = 1e-8;
    auto* cmd_verify = app.add_subcommand("verify", "Nash check under a search algorithm");
    env_verify.attach(cmd_verify);
    cmd_verify->add_option("--algorithm", algorithm)
        ->check(CLI::IsMember({"prominence1", "prominence2", "random", "price-directed",
                               "contract"}))
        ->required();
    cmd_verify->add_option("--p1", p1)->required();
    cmd_verify->add_option("--p2", p2)->required();
    cmd_verify->add_option("--alpha", alpha);
    cmd_verify->add_option("--grid-n", grid_n)->check(CLI::Range(2L, 100000000L));
    cmd_verify->add_option("--tol", tol);
    cmd_verify->add_option("--out", out_path);

    // simulate
    EnvOpt env_sim;
    std::int64_t consumers = 1000000;
    std::uint64_t seed = 1;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo consumer simulation");
    env_sim.attach(cmd_sim);
    cmd_sim->add_option("--p1", p1)->required();
    cmd_sim->add_option("--p2", p2)->required();
    cmd_sim->add_option("--alpha", alpha)->required();
    cmd_sim->add_option("--n", consumers)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    cmd_sim->add_option("--seed", seed);
    cmd_sim->add_option("--out", out_path);

    // corner
    EnvOpt env_corner;
    int corner_n = 100;
    auto* cmd_corner = app.add_subcommand("corner", "hat vs plain membership sweep");
    env_corner.attach(cmd_corner);
    cmd_corner->add_option("--n", corner_n)->check(CLI::Range(2, 4000));
    cmd_corner->add_option("--out", out_path);

    // figures
    EnvOpt env_f2, env_f3, env_f4;
    int f3_n = 200, f4_n = 100;
    double f3_alpha = 0.5;
    auto* cmd_f2 = app.add_subcommand("figure2", "equilibrium points of canonical algorithms");
    env_f2.attach(cmd_f2);
    cmd_f2->add_option("--out", out_path);
    auto* cmd_f3 = app.add_subcommand("figure3", "IC loci for a fixed alpha");
    env_f3.attach(cmd_f3);
    cmd_f3->add_option("--alpha", f3_alpha)->required();
    cmd_f3->add_option("--n", f3_n)->check(CLI::Range(8, 4000));
    cmd_f3->add_option("--out", out_path);
    auto* cmd_f4 = app.add_subcommand("figure4", "P clipped at the p = A lines");
    env_f4.attach(cmd_f4);
    cmd_f4->add_option("--n", f4_n)->check(CLI::Range(2, 4000));
    cmd_f4->add_option("--out", out_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (cmd_demand->parsed()) return run_demand(env_demand, p1, p2, format, out_path);
        if (cmd_phi->parsed()) return run_phi(env_phi, p1, p2, format, out_path);
        if (cmd_boundary->parsed()) return run_boundary(env_boundary, boundary_n, out_path);
        if (cmd_solve->parsed()) return run_solve(env_solve, objective, direction, grid, out_path);
        if (cmd_fb->parsed()) return run_first_best(env_fb, out_path);
        if (cmd_critical->parsed()) return run_critical(s_lo, s_hi, out_path);
        if (cmd_verify->parsed())
            return run_verify(env_verify, algorithm, p1, p2, alpha, grid_n, tol, out_path);
        if (cmd_sim->parsed())
            return run_simulate(env_sim, p1, p2, alpha, consumers, seed, out_path);
        if (cmd_corner->parsed()) return run_corner(env_corner, corner_n, out_path);
        if (cmd_f2->parsed()) return run_figure2(env_f2, out_path);
        if (cmd_f3->parsed()) return run_figure3(env_f3, f3_alpha, f3_n, out_path);
        if (cmd_f4->parsed()) return run_figure4(env_f4, f4_n, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::cerr << "usage error: no subcommand\n" << app.help();
    return 2;
}

}  // namespace steer::cli
