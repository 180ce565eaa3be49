#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecl/control.hpp"
#include "ecl/election.hpp"

namespace ecl {

namespace io_detail {

inline std::vector<int> parse_int_line(const std::string& line) {
    std::vector<int> out;
    std::istringstream ss(line);
    int v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof()) throw std::invalid_argument("bad integer line: " + line);
    return out;
}

inline std::string getline_or_throw(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(std::string("unexpected end of input, expected ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

inline void require_dense(const Election& e) {
    for (int i = 0; i < e.num_candidates(); ++i)
        if (e.candidates[i] != i) throw std::invalid_argument("text format requires dense candidate ids 0..m-1");
}

} // namespace io_detail

// Election text format:
//   rule=bucklin|fallback|plurality
//   m n
//   one vote per line: 0-based candidate indices (fallback lines hold the
//   approved prefix and may be blank)
inline void write_election(std::ostream& out, const Election& e) {
    io_detail::require_dense(e);
    out << "rule=" << to_string(e.rule) << "\n";
    out << e.num_candidates() << ' ' << e.num_votes() << "\n";
    for (const auto& v : e.votes) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ' ';
            out << v[i];
        }
        out << "\n";
    }
}

inline Election read_election(std::istream& in) {
    const std::string rule_line = io_detail::getline_or_throw(in, "rule=...");
    if (rule_line.rfind("rule=", 0) != 0) throw std::invalid_argument("expected rule=..., got: " + rule_line);
    Election e;
    e.rule = parse_rule(rule_line.substr(5));
    const auto mn = io_detail::parse_int_line(io_detail::getline_or_throw(in, "m n"));
    if (mn.size() != 2 || mn[0] < 1 || mn[1] < 0) throw std::invalid_argument("expected 'm n' line");
    e.candidates.resize(mn[0]);
    for (int i = 0; i < mn[0]; ++i) e.candidates[i] = i;
    e.votes.reserve(mn[1]);
    for (int i = 0; i < mn[1]; ++i)
        e.votes.push_back(io_detail::parse_int_line(io_detail::getline_or_throw(in, "vote line")));
    return e;
}

// Control-instance text format: election block, then
//   control=<CC|DC><AV|DV|PV|AC|DC|PC|roPC>
//   tie=TE|TP|-
//   c=<candidate index>
//   k=<budget>
//   pool_voters=<count>    (AV; followed by <count> vote lines)
//   pool_candidates=<count> (AC; ids m..m+count-1, election ballots span the union)
inline void write_instance(std::ostream& out, const ControlInstance& inst) {
    io_detail::require_dense(inst.election);
    out << "rule=" << to_string(inst.election.rule) << "\n";
    // the m column counts registered candidates; AC ballots span m+pool ids
    out << inst.registered_candidates << ' ' << inst.election.num_votes() << "\n";
    for (const auto& v : inst.election.votes) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ' ';
            out << v[i];
        }
        out << "\n";
    }
    out << "control=" << to_string(inst.control) << "\n";
    out << "tie=" << to_string(inst.control.tie) << "\n";
    out << "c=" << inst.distinguished << "\n";
    out << "k=" << inst.budget << "\n";
    if (!inst.pool_voters.empty()) {
        out << "pool_voters=" << inst.pool_voters.size() << "\n";
        for (const auto& v : inst.pool_voters) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << ' ';
                out << v[i];
            }
            out << "\n";
        }
    }
    const int pool_cands = inst.election.num_candidates() - inst.registered_candidates;
    if (pool_cands > 0) out << "pool_candidates=" << pool_cands << "\n";
}

inline ControlInstance read_instance(std::istream& in) {
    const std::string rule_line = io_detail::getline_or_throw(in, "rule=...");
    if (rule_line.rfind("rule=", 0) != 0) throw std::invalid_argument("expected rule=..., got: " + rule_line);
    const VotingRule rule = parse_rule(rule_line.substr(5));
    const auto mn = io_detail::parse_int_line(io_detail::getline_or_throw(in, "m n"));
    if (mn.size() != 2 || mn[0] < 1 || mn[1] < 0) throw std::invalid_argument("expected 'm n' line");
    const int m = mn[0];
    const int n = mn[1];
    std::vector<Ballot> votes;
    votes.reserve(n);
    for (int i = 0; i < n; ++i) votes.push_back(io_detail::parse_int_line(io_detail::getline_or_throw(in, "vote line")));

    std::string control_name;
    std::string tie_name = "-";
    int c = -1, k = 0, pool_cands = 0;
    std::vector<Ballot> pool_voters;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got: " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "control") control_name = val;
        else if (key == "tie") tie_name = val;
        else if (key == "c") c = std::stoi(val);
        else if (key == "k") k = std::stoi(val);
        else if (key == "pool_voters") {
            const int cnt = std::stoi(val);
            for (int i = 0; i < cnt; ++i)
                pool_voters.push_back(io_detail::parse_int_line(io_detail::getline_or_throw(in, "pool vote line")));
        } else if (key == "pool_candidates") {
            pool_cands = std::stoi(val);
        } else {
            throw std::invalid_argument("unknown key: " + key);
        }
    }
    if (control_name.empty()) throw std::invalid_argument("missing control=");
    if (c < 0) throw std::invalid_argument("missing c=");
    TieRule tie = TieRule::none;
    if (tie_name == "TE") tie = TieRule::TE;
    else if (tie_name == "TP") tie = TieRule::TP;
    else if (tie_name != "-") throw std::invalid_argument("bad tie rule: " + tie_name);

    ControlInstance inst;
    inst.control = parse_control(control_name, tie);
    inst.election.rule = rule;
    inst.election.candidates.resize(m + pool_cands);
    for (int i = 0; i < m + pool_cands; ++i) inst.election.candidates[i] = i;
    inst.election.votes = std::move(votes);
    inst.registered_candidates = m;
    inst.distinguished = c;
    inst.budget = k;
    inst.pool_voters = std::move(pool_voters);
    validate_instance(inst);
    return inst;
}

inline ControlInstance read_instance_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_instance(f);
}

inline void write_instance_file(const std::string& path, const ControlInstance& inst) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write_instance(f, inst);
}

} // namespace ecl
