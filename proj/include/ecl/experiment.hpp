#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ecl/control.hpp"
#include "ecl/generators.hpp"
#include "ecl/solver.hpp"

namespace ecl {

struct CellKey {
    VotingRule rule;
    ControlType control;
    DistModel dist;
    int m;
    int n;
};

struct CellStats {
    CellKey key;
    int trials = 0;
    int k = 0;
    int cp = 0; // controllable (yes)
    int ci = 0; // not controllable (no)
    int to = 0; // timeouts
    // Mean decision times in microseconds; absent when the subset is empty.
    // Timeouts are excluded from avg_us_decided.
    std::optional<std::int64_t> avg_us_yes;
    std::optional<std::int64_t> avg_us_no;
    std::optional<std::int64_t> avg_us_decided;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::vector<VotingRule> rules;
    std::vector<ControlType> controls;
    std::vector<DistModel> dists;
    std::vector<int> m_values{4, 8, 16, 32, 64, 128};
    std::vector<int> n_values{4, 8, 16, 32, 64, 128};
    int trials = 500;
    double timeout_secs = 600.0;
    std::uint64_t master_seed = 1;
    int jobs = 1;
    bool allow_non_paper = false;
};

// The combinations the studied tables actually contain: Bucklin and
// fallback run all 18 control types; plurality skips adding/deleting voters
// and the TE voter partitions. DCAV/DCDV sit outside the tables for every
// rule.
inline bool paper_pair(VotingRule rule, ControlType control) {
    if (control.non_paper()) return false;
    if (rule == VotingRule::plurality) {
        if (control.family == ControlFamily::AV || control.family == ControlFamily::DV) return false;
        if (control.family == ControlFamily::PV && control.tie == TieRule::TE) return false;
    }
    return true;
}

namespace exp_detail {

struct TrialResult {
    Verdict verdict{Verdict::no};
    std::int64_t us = 0;
    int k = 0;
};

inline TrialResult run_trial(const ExperimentConfig& cfg, const CellKey& cell, int trial) {
    Rng rng(trial_seed(cfg.master_seed, cell.rule, cell.control, cell.dist, cell.m, cell.n, trial));
    const ControlInstance inst = gen_instance(cell.control, cell.rule, cell.dist, cell.m, cell.n, rng);
    Deadline dl{std::chrono::microseconds(static_cast<std::int64_t>(cfg.timeout_secs * 1e6))};
    const Outcome out = solve(inst, dl);
    return TrialResult{out.verdict, out.elapsed_us, inst.budget};
}

inline CellStats reduce(const CellKey& cell, const ExperimentConfig& cfg, const std::vector<TrialResult>& results) {
    CellStats s;
    s.key = cell;
    s.trials = static_cast<int>(results.size());
    s.seed = cfg.master_seed;
    std::int64_t yes_us = 0, no_us = 0;
    for (const auto& r : results) {
        s.k = r.k;
        switch (r.verdict) {
            case Verdict::yes:
                s.cp++;
                yes_us += r.us;
                break;
            case Verdict::no:
                s.ci++;
                no_us += r.us;
                break;
            case Verdict::timeout:
                s.to++;
                break;
        }
    }
    if (s.cp > 0) s.avg_us_yes = yes_us / s.cp;
    if (s.ci > 0) s.avg_us_no = no_us / s.ci;
    if (s.cp + s.ci > 0) s.avg_us_decided = (yes_us + no_us) / (s.cp + s.ci);
    return s;
}

} // namespace exp_detail

inline CellStats run_cell(const ExperimentConfig& cfg, const CellKey& cell) {
    if (!cfg.allow_non_paper && !paper_pair(cell.rule, cell.control))
        throw std::invalid_argument("combination " + std::string(to_string(cell.rule)) + "/" +
                                    to_string(cell.control) + (cell.control.is_partition() ? std::string("-") + to_string(cell.control.tie) : "") +
                                    " is outside the studied tables (pass --allow-non-paper to run it)");
    std::vector<exp_detail::TrialResult> results(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) results[t] = exp_detail::run_trial(cfg, cell, t);
    return exp_detail::reduce(cell, cfg, results);
}

inline std::vector<CellKey> grid_cells(const ExperimentConfig& cfg) {
    std::vector<CellKey> cells;
    for (VotingRule rule : cfg.rules)
        for (ControlType control : cfg.controls)
            for (DistModel dist : cfg.dists)
                for (int m : cfg.m_values)
                    for (int n : cfg.n_values) cells.push_back(CellKey{rule, control, dist, m, n});
    return cells;
}

// Runs every cell of the configured grid. Trials are independent tasks over
// a bounded worker pool; per-trial seeding makes the outcome independent of
// the parallelism degree, and rows come back in the configuration order.
inline std::vector<CellStats> run_grid(const ExperimentConfig& cfg) {
    const auto cells = grid_cells(cfg);
    for (const auto& cell : cells)
        if (!cfg.allow_non_paper && !paper_pair(cell.rule, cell.control))
            throw std::invalid_argument("combination " + std::string(to_string(cell.rule)) + "/" +
                                        to_string(cell.control) +
                                        " is outside the studied tables (pass --allow-non-paper to run it)");
    std::vector<std::vector<exp_detail::TrialResult>> results(cells.size());
    for (auto& r : results) r.resize(cfg.trials);
    std::atomic<std::size_t> next{0};
    const std::size_t total = cells.size() * static_cast<std::size_t>(cfg.trials);
    const int jobs = std::max(1, cfg.jobs);
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            const std::size_t cell_idx = i / cfg.trials;
            const int trial = static_cast<int>(i % cfg.trials);
            results[cell_idx][trial] = exp_detail::run_trial(cfg, cells[cell_idx], trial);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<CellStats> table;
    table.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) table.push_back(exp_detail::reduce(cells[i], cfg, results[i]));
    return table;
}

// --------------------------------------------------------------------------
// CSV round trip. Times are serialized as milliseconds with microsecond
// precision so that read(write(table)) reproduces the table exactly.

namespace exp_detail {

inline std::string us_to_ms_field(std::optional<std::int64_t> us) {
    if (!us) return "";
    std::string frac = std::to_string(*us % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    return std::to_string(*us / 1000) + "." + frac;
}

inline std::optional<std::int64_t> ms_field_to_us(const std::string& field) {
    if (field.empty()) return std::nullopt;
    const auto dot = field.find('.');
    if (dot == std::string::npos || field.size() - dot - 1 != 3)
        throw std::invalid_argument("bad time field: " + field);
    return std::stoll(field.substr(0, dot)) * 1000 + std::stoll(field.substr(dot + 1));
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace exp_detail

inline constexpr const char* csv_header =
    "rule,control,tie,dist,m,n,trials,k,cp,ci,to,avg_ms_yes,avg_ms_no,avg_ms_decided,seed";

inline void write_csv(std::ostream& out, const std::vector<CellStats>& table) {
    out << csv_header << "\n";
    for (const auto& s : table) {
        out << to_string(s.key.rule) << ',' << to_string(s.key.control) << ',' << to_string(s.key.control.tie) << ','
            << to_string(s.key.dist) << ',' << s.key.m << ',' << s.key.n << ',' << s.trials << ',' << s.k << ','
            << s.cp << ',' << s.ci << ',' << s.to << ',' << exp_detail::us_to_ms_field(s.avg_us_yes) << ','
            << exp_detail::us_to_ms_field(s.avg_us_no) << ',' << exp_detail::us_to_ms_field(s.avg_us_decided) << ','
            << s.seed << "\n";
    }
}

inline std::vector<CellStats> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header) throw std::invalid_argument("unexpected CSV header: " + line);
    std::vector<CellStats> table;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = exp_detail::split_csv(line);
        if (f.size() != 15) throw std::invalid_argument("bad CSV row: " + line);
        CellStats s;
        s.key.rule = parse_rule(f[0]);
        TieRule tie = TieRule::none;
        if (f[2] == "TE") tie = TieRule::TE;
        else if (f[2] == "TP") tie = TieRule::TP;
        else if (f[2] != "-") throw std::invalid_argument("bad tie field: " + f[2]);
        s.key.control = parse_control(f[1], tie);
        s.key.dist = parse_dist(f[3]);
        s.key.m = std::stoi(f[4]);
        s.key.n = std::stoi(f[5]);
        s.trials = std::stoi(f[6]);
        s.k = std::stoi(f[7]);
        s.cp = std::stoi(f[8]);
        s.ci = std::stoi(f[9]);
        s.to = std::stoi(f[10]);
        s.avg_us_yes = exp_detail::ms_field_to_us(f[11]);
        s.avg_us_no = exp_detail::ms_field_to_us(f[12]);
        s.avg_us_decided = exp_detail::ms_field_to_us(f[13]);
        s.seed = std::stoull(f[14]);
        table.push_back(std::move(s));
    }
    return table;
}

// --------------------------------------------------------------------------
// Overview summary: per (control, rule, dist), the minimal and maximal
// percentage of yes-instances over the grid cells (timeouts stay in the
// denominator) and the percentage of timeouts over all trials.

struct SummaryRow {
    ControlType control;
    VotingRule rule;
    DistModel dist;
    double min_yes_pct = 0;
    double max_yes_pct = 0;
    double to_pct = 0;
};

inline std::vector<SummaryRow> summarize(const std::vector<CellStats>& table) {
    std::vector<SummaryRow> rows;
    const auto find_row = [&](const CellStats& s) -> SummaryRow* {
        for (auto& r : rows)
            if (r.control == s.key.control && r.rule == s.key.rule && r.dist == s.key.dist) return &r;
        return nullptr;
    };
    // first pass: min/max over cells
    for (const auto& s : table) {
        if (s.trials == 0) continue;
        const double yes_pct = 100.0 * s.cp / s.trials;
        if (SummaryRow* r = find_row(s)) {
            r->min_yes_pct = std::min(r->min_yes_pct, yes_pct);
            r->max_yes_pct = std::max(r->max_yes_pct, yes_pct);
        } else {
            rows.push_back(SummaryRow{s.key.control, s.key.rule, s.key.dist, yes_pct, yes_pct, 0});
        }
    }
    // second pass: timeout share over all trials of the combination
    for (auto& r : rows) {
        std::int64_t to = 0, trials = 0;
        for (const auto& s : table)
            if (r.control == s.key.control && r.rule == s.key.rule && r.dist == s.key.dist) {
                to += s.to;
                trials += s.trials;
            }
        r.to_pct = trials == 0 ? 0 : 100.0 * to / trials;
    }
    return rows;
}

inline void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "control      rule       dist   min%   max%    to%\n";
    for (const auto& r : rows) {
        std::string name = to_string(r.control);
        if (r.control.is_partition()) name += std::string("-") + to_string(r.control.tie);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-12s %-10s %-4s %6.1f %6.1f %6.1f\n", name.c_str(), to_string(r.rule),
                      to_string(r.dist), r.min_yes_pct, r.max_yes_pct, r.to_pct);
        out << buf;
    }
}

} // namespace ecl
