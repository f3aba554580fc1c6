#include "nnbox/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nnbox/box.hpp"
#include "nnbox/error.hpp"
#include "nnbox/extremal.hpp"
#include "nnbox/fourier.hpp"
#include "nnbox/setgroups.hpp"
#include "nnbox/simplexgeo.hpp"

namespace nnbox {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

std::string pass(bool ok) { return ok ? "pass" : "FAIL"; }

std::string verify_text(const BoxFamily& f, const VerifyReport& r) {
    std::ostringstream o;
    o << "n=" << f.n << " k=" << f.k << " size=" << f.size() << "\n";
    o << "alpha: " << pass(r.alpha_ok) << "\n";
    o << "beta: " << pass(r.beta_ok) << "\n";
    o << "gamma: " << pass(r.gamma_ok) << "\n";
    if (r.bound_applies) {
        o << "bound: " << f.size() << " <= " << box_bound(f.k) << " = 2^" << f.k << "-2 " << pass(r.bound_ok) << "\n";
    } else {
        o << "bound: not applicable (requires 3 <= k < n)\n";
    }
    for (const auto& v : r.violations) {
        o << "violation " << condition_name(v.condition);
        for (std::size_t i : v.indices) o << ' ' << (i + 1);
        o << "\n";
    }
    o << "result: " << (r.ok() ? "verified" : "not verified") << "\n";
    return o.str();
}

std::string trace_text(const ProofTrace& t) {
    std::ostringstream o;
    o << "trace m=" << t.m << " k=" << t.k << " n=" << t.n << "\n";
    o << "fhat({}) = " << to_string(t.fhat_empty) << "\n";
    for (const auto& [prop, value] : t.fhat_props) o << "fhat(" << format_subset(prop) << ") = " << to_string(value) << "\n";
    o << "energy = " << to_string(t.energy) << "\n";
    o << "bessel_rhs = " << to_string(t.bessel_rhs) << "\n";
    o << "bessel_slack = " << to_string(t.bessel_slack) << "\n";
    o << "props_unit: " << (t.props_are_unit ? "yes" : "no") << "\n";
    o << "support_size: " << t.support.size() << "\n";
    o << "support_equals_props: " << (t.support_equals_props ? "yes" : "no") << "\n";
    auto opt = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; };
    o << "support_is_group: " << opt(t.support_is_group) << "\n";
    o << "idempotent: " << opt(t.idempotent) << "\n";
    return o.str();
}

std::string group_text(const SetFamily& f, const GroupReport& r) {
    std::ostringstream o;
    o << "n=" << f.ground_size() << " size=" << r.size << "\n";
    o << "contains_empty: " << (r.contains_empty ? "yes" : "no") << "\n";
    o << "closed: " << (r.closed ? "yes" : "no");
    if (r.closure_witness) o << " (members " << r.closure_witness->first + 1 << " and " << r.closure_witness->second + 1 << ")";
    o << "\n";
    o << "group: " << (r.is_group ? "yes" : "no") << "\n";
    if (r.uniform_k) {
        o << "uniform_k: " << *r.uniform_k << "\n";
        o << "v: " << r.v << "\n";
        o << "bound: " << r.size << " <= " << r.bound << " " << pass(r.bound_ok) << "\n";
    } else {
        o << "uniform_k: none\n";
    }
    o << "half_intersections: " << pass(r.half_intersections_ok) << "\n";
    return o.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boxes in the discrete cube, their Fourier analysis, and nearly neighbourly simplices"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("-o,--output", output, "Write the primary output to this file instead of stdout");

    std::string input;

    auto* verify = app.add_subcommand("verify", "Check the alpha/beta/gamma conditions of a box family");
    verify->add_option("file", input, "Star-word file")->required();

    bool trace = false, all = false;
    auto* fourier = app.add_subcommand("fourier", "Exact spectrum of the indicator sum of a box family");
    fourier->add_option("file", input, "Star-word file")->required();
    fourier->add_flag("--trace", trace, "Print the counting-argument trace (requires a verified family)");
    fourier->add_flag("--all", all, "Include zero coefficients");

    std::size_t k = 0, n = 0, target = 0, jobs = 1;
    bool prove_max = false, no_symmetry = false;
    std::uint64_t node_limit = 0;
    double time_limit = 0;
    auto* search_cmd = app.add_subcommand("search", "Branch-and-bound search for large box families");
    search_cmd->add_option("--k", k, "Prop size")->required();
    search_cmd->add_option("--n", n, "Ambient dimension")->required();
    auto* prove_opt = search_cmd->add_flag("--prove-max", prove_max, "Exhaustively prove the maximum");
    auto* target_opt = search_cmd->add_option("--target", target, "Stop at a witness of this size");
    prove_opt->excludes(target_opt);
    auto* node_opt = search_cmd->add_option("--node-limit", node_limit, "Abort after this many nodes");
    auto* time_opt = search_cmd->add_option("--time-limit", time_limit, "Abort after this many seconds");
    search_cmd->add_flag("--no-symmetry", no_symmetry, "Disable symmetry breaking");
    search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* group = app.add_subcommand("group", "Symmetric-difference groups");
    group->require_subcommand(1);
    std::size_t v = 0, p = 1;
    auto* gen = group->add_subcommand("gen", "Generate an extremal group");
    gen->add_option("--v", v, "2-adic order")->required();
    gen->add_option("--p", p, "Odd factor; k = 2^v p");
    auto* check = group->add_subcommand("check", "Check a set family");
    check->add_option("file", input, "Set-family file")->required();

    auto* dbl = app.add_subcommand("double", "Double a verified family to prop size k+1");
    dbl->add_option("file", input, "Star-word file")->required();

    std::string sidecar;
    auto* encode = app.add_subcommand("encode", "Encode a nearly neighbourly simplex family as boxes");
    encode->add_option("file", input, "Simplex file")->required();
    encode->add_option("--hyperplanes", sidecar, "Write the hyperplane rows to this file");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::ostringstream text;
    int status = kExitOk;
    try {
        if (*verify) {
            const BoxFamily f = parse_family(read_file(input));
            const VerifyReport r = verify_family(f);
            text << verify_text(f, r);
            status = r.ok() ? kExitOk : kExitRefuted;
        } else if (*fourier) {
            const BoxFamily f = parse_family(read_file(input));
            const Spectrum s = transform(indicator_sum(f));
            text << "# n=" << f.n << " m=" << f.size() << " scale=2^" << s.scale_log2 << "\n";
            text << format_spectrum(s, all);
            if (trace) {
                if (!verify_family(f).conditions_ok()) {
                    err << "error: --trace requires a family passing alpha/beta/gamma\n";
                    status = kExitRefuted;
                } else {
                    text << trace_text(proof_trace(f));
                }
            }
        } else if (*search_cmd) {
            SearchProblem problem;
            problem.k = k;
            problem.n = n;
            if (*target_opt) {
                problem.mode = SearchMode::FindWitness;
                problem.target = target;
            } else {
                problem.mode = SearchMode::ProveMaximum;
            }
            if (*node_opt) problem.node_limit = node_limit;
            if (*time_opt) problem.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
            problem.symmetry_breaking = !no_symmetry;
            problem.jobs = jobs;
            const SearchResult r = search(problem);
            // Node counts depend on thread scheduling when jobs > 1.
            text << format_search_result(problem, r, jobs == 1);
            if (r.status == SearchStatus::BudgetExhausted) {
                status = kExitBudget;
            } else if (problem.mode == SearchMode::FindWitness && r.best_size < target) {
                status = kExitRefuted;
            }
        } else if (*group) {
            if (*gen) {
                const SetFamily f = p == 1 ? generate_group(v) : preimage_group(v, p);
                text << serialize_sets(f);
            } else {
                const SetFamily f = parse_sets(read_file(input));
                const GroupReport r = check_group(f);
                text << group_text(f, r);
                status = r.is_group && r.bound_ok ? kExitOk : kExitRefuted;
            }
        } else if (*dbl) {
            text << serialize_family(double_family(parse_family(read_file(input))));
        } else if (*encode) {
            const auto simplices = parse_simplices(read_file(input));
            const EncodingResult r = encode_boxes(simplices);
            text << "# encoded " << simplices.size() << " simplices, d=" << simplices.front().dimension() << "\n";
            for (std::size_t i = 0; i < r.hyperplanes.size(); ++i) text << "# H" << i + 1 << ": " << r.hyperplanes[i].to_row() << "\n";
            for (const auto& w : r.pair_witnesses)
                text << "# pair " << w.first + 1 << " " << w.second + 1 << " separated by H" << w.hyperplane + 1 << "\n";
            text << "# n=" << r.family.n << " k=" << r.family.k << "\n";
            text << serialize_family(r.family);
            if (!sidecar.empty()) write_file(sidecar, format_hyperplanes(r.hyperplanes));
        }
    } catch (const VerificationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRefuted;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GuardError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (output.empty()) {
        out << text.str();
        return status;
    }
    try {
        write_file(output, text.str());
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return status;
}

}  // namespace nnbox
