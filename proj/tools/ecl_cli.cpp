// Command-line front end: instance generation, the heuristic solver, the
// brute-force oracle, the Monte-Carlo experiment grid, and table summaries.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecl/experiment.hpp"
#include "ecl/generators.hpp"
#include "ecl/io.hpp"
#include "ecl/oracle.hpp"
#include "ecl/solver.hpp"

namespace {

ecl::TieRule parse_tie_name(const std::string& s) {
    if (s == "TE") return ecl::TieRule::TE;
    if (s == "TP") return ecl::TieRule::TP;
    if (s == "-" || s.empty()) return ecl::TieRule::none;
    throw CLI::ValidationError("tie must be TE, TP or -");
}

// Accepts CCDV or CCPV-TE style names.
ecl::ControlType parse_control_spec(const std::string& s) {
    const auto dash = s.find('-');
    if (dash == std::string::npos) return ecl::parse_control(s, ecl::TieRule::none);
    return ecl::parse_control(s.substr(0, dash), parse_tie_name(s.substr(dash + 1)));
}

int cmd_gen(const std::string& rule, const std::string& dist, int m, int n, const std::string& control,
            const std::string& tie, std::uint64_t seed, int trial, const std::string& out_path) {
    const ecl::ControlType ct = ecl::parse_control(control, parse_tie_name(tie));
    const ecl::VotingRule r = ecl::parse_rule(rule);
    const ecl::DistModel d = ecl::parse_dist(dist);
    ecl::Rng rng(ecl::trial_seed(seed, r, ct, d, m, n, trial));
    const ecl::ControlInstance inst = ecl::gen_instance(ct, r, d, m, n, rng);
    if (out_path == "-") {
        ecl::write_instance(std::cout, inst);
    } else {
        ecl::write_instance_file(out_path, inst);
    }
    return 0;
}

int cmd_solve(const std::string& path, double timeout_secs, bool no_preorder, bool no_conditions) {
    const ecl::ControlInstance inst = ecl::read_instance_file(path);
    ecl::Deadline dl{std::chrono::microseconds(static_cast<std::int64_t>(timeout_secs * 1e6))};
    ecl::SolveOptions opts;
    opts.use_preorder = !no_preorder;
    opts.use_conditions = !no_conditions;
    const ecl::Outcome out = ecl::solve(inst, dl, opts);
    switch (out.verdict) {
        case ecl::Verdict::yes:
            std::cout << "YES witness=" << ecl::to_string(*out.witness) << "\n";
            break;
        case ecl::Verdict::no:
            std::cout << "NO\n";
            break;
        case ecl::Verdict::timeout:
            std::cout << "TIMEOUT elapsed_ms=" << out.elapsed_us / 1000 << "\n";
            break;
    }
    return 0;
}

int cmd_oracle(const std::string& path, std::uint64_t cap) {
    const ecl::ControlInstance inst = ecl::read_instance_file(path);
    const ecl::OracleVerdict v = ecl::brute_force(inst, cap);
    if (v.yes)
        std::cout << "YES witness=" << ecl::to_string(*v.witness) << " witnesses_checked=" << v.witnesses_checked
                  << "\n";
    else
        std::cout << "NO witnesses_checked=" << v.witnesses_checked << "\n";
    return 0;
}

int cmd_experiment(const std::vector<std::string>& rules, const std::vector<std::string>& controls,
                   const std::vector<std::string>& dists, const std::vector<int>& m_list,
                   const std::vector<int>& n_list, int trials, double timeout_secs, std::uint64_t seed, int jobs,
                   const std::string& out_path, bool allow_non_paper) {
    ecl::ExperimentConfig cfg;
    for (const auto& r : rules) cfg.rules.push_back(ecl::parse_rule(r));
    for (const auto& c : controls) cfg.controls.push_back(parse_control_spec(c));
    for (const auto& d : dists) cfg.dists.push_back(ecl::parse_dist(d));
    if (!m_list.empty()) cfg.m_values = m_list;
    if (!n_list.empty()) cfg.n_values = n_list;
    cfg.trials = trials;
    cfg.timeout_secs = timeout_secs;
    cfg.master_seed = seed;
    cfg.jobs = jobs;
    cfg.allow_non_paper = allow_non_paper;
    const auto table = ecl::run_grid(cfg);
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    ecl::write_csv(f, table);
    std::cerr << "wrote " << table.size() << " cells to " << out_path << "\n";
    return 0;
}

int cmd_summarize(const std::string& in_path, const std::string& out_path) {
    std::ifstream f(in_path);
    if (!f) throw std::runtime_error("cannot open " + in_path);
    const auto table = ecl::read_csv(f);
    const auto rows = ecl::summarize(table);
    if (out_path == "-") {
        ecl::write_summary(std::cout, rows);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        ecl::write_summary(out, rows);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"electoral control experiments: Bucklin, fallback and plurality voting"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random control instance");
    std::string g_rule, g_dist = "IC", g_control, g_tie = "-", g_out = "-";
    int g_m = 4, g_n = 4, g_trial = 0;
    std::uint64_t g_seed = 1;
    gen->add_option("--rule", g_rule, "bucklin|fallback|plurality")->required();
    gen->add_option("--dist", g_dist, "IC|TM");
    gen->add_option("--m", g_m, "number of registered candidates")->required();
    gen->add_option("--n", g_n, "number of registered voters")->required();
    gen->add_option("--control", g_control, "control type, e.g. CCDV")->required();
    gen->add_option("--tie", g_tie, "TE|TP|- (partition controls only)");
    gen->add_option("--seed", g_seed, "master seed");
    gen->add_option("--trial", g_trial, "trial index within the cell");
    gen->add_option("--out", g_out, "output file ('-' for stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "run the heuristic search on an instance file");
    std::string s_path;
    double s_timeout = 600.0;
    bool s_no_preorder = false, s_no_conditions = false;
    solve->add_option("--instance", s_path, "instance file")->required();
    solve->add_option("--timeout-secs", s_timeout, "search deadline in seconds");
    solve->add_flag("--no-preorder", s_no_preorder, "disable voter/candidate preordering");
    solve->add_flag("--no-conditions", s_no_conditions, "disable trivial-case checks");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exhaustively decide an instance file");
    std::string o_path;
    std::uint64_t o_cap = std::uint64_t{1} << 22;
    oracle->add_option("--instance", o_path, "instance file")->required();
    oracle->add_option("--max-actions", o_cap, "refuse action spaces larger than this");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a Monte-Carlo grid and write a CSV");
    std::vector<std::string> e_rules, e_controls, e_dists{"IC", "TM"};
    std::vector<int> e_m, e_n;
    int e_trials = 500, e_jobs = 1;
    double e_timeout = 600.0;
    std::uint64_t e_seed = 1;
    std::string e_out = "results.csv";
    bool e_allow = false;
    exp->add_option("--rules", e_rules, "comma-separated voting rules")->required()->delimiter(',');
    exp->add_option("--controls", e_controls, "comma-separated control types (e.g. CCDV,CCPV-TE)")
        ->required()
        ->delimiter(',');
    exp->add_option("--dists", e_dists, "distribution models")->delimiter(',');
    exp->add_option("--m-list", e_m, "candidate counts")->delimiter(',');
    exp->add_option("--n-list", e_n, "voter counts")->delimiter(',');
    exp->add_option("--trials", e_trials, "trials per cell");
    exp->add_option("--timeout-secs", e_timeout, "per-instance deadline");
    exp->add_option("--seed", e_seed, "master seed");
    exp->add_option("--jobs", e_jobs, "worker threads");
    exp->add_option("--out", e_out, "CSV output path");
    exp->add_flag("--allow-non-paper", e_allow, "also run combinations outside the studied tables");

    // summarize
    auto* sum = app.add_subcommand("summarize", "reduce a results CSV to min/max/timeout percentages");
    std::string m_in, m_out = "-";
    sum->add_option("--in", m_in, "results CSV")->required();
    sum->add_option("--out", m_out, "summary output ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_gen(g_rule, g_dist, g_m, g_n, g_control, g_tie, g_seed, g_trial, g_out);
        if (*solve) return cmd_solve(s_path, s_timeout, s_no_preorder, s_no_conditions);
        if (*oracle) return cmd_oracle(o_path, o_cap);
        if (*exp)
            return cmd_experiment(e_rules, e_controls, e_dists, e_m, e_n, e_trials, e_timeout, e_seed, e_jobs, e_out,
                                  e_allow);
        if (*sum) return cmd_summarize(m_in, m_out);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
