#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsity/experiment.hpp"
#include "sparsity/fields.hpp"
#include "sparsity/hypergraph.hpp"
#include "sparsity/matroid.hpp"
#include "sparsity/oracle.hpp"
#include "sparsity/realization.hpp"

namespace sparsity {
namespace cli {

inline const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"check", "tight",  "orient",   "rank",      "realize",
                                            "basis", "circuit", "complete", "experiment"};
    return v;
}

inline void print_usage(std::ostream& os) {
    os << "usage: sparsity <verb> [options] [input]\n"
       << "verbs:\n"
       << "  check       sparsity and tightness of a hypergraph\n"
       << "  tight       tightness only\n"
       << "  orient      k-regular tail assignment (requires m = k*n)\n"
       << "  rank        matroid rank via the linear realization\n"
       << "  realize     emit a realization matrix\n"
       << "  basis       greedy matroid basis\n"
       << "  circuit     minimal dependent subset of all edges\n"
       << "  complete    complete ground hypergraphs\n"
       << "  experiment  seeded oracle-agreement runs\n"
       << "input is a JSON file path, '-' for stdin, or an inline JSON object.\n"
       << "vertices are 0-indexed everywhere.\n";
}

namespace detail {

// input: path, "-" for stdin, or inline JSON (leading '{').
inline Hypergraph load_hypergraph(const std::string& input, std::istream& in) {
    std::string text;
    if (!input.empty() && input.front() == '{') {
        text = input;
    } else if (input == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::ifstream file(input);
        if (!file) throw nlohmann::json::other_error::create(500, "cannot read input '" + input + "'", nullptr);
        std::ostringstream ss;
        ss << file.rdbuf();
        text = ss.str();
    }
    return hypergraph_from_json(nlohmann::json::parse(text));
}

inline int oracle_cap_from_env() {
    const char* raw = std::getenv("SPARSITY_ORACLE_CAP");
    if (raw == nullptr) return kDefaultOracleCap;
    std::size_t pos = 0;
    int cap = 0;
    try {
        cap = std::stoi(raw, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("SPARSITY_ORACLE_CAP is not an integer: ") + raw);
    }
    if (pos != std::string(raw).size() || cap < 2 || cap > kMaxOracleCap)
        throw std::invalid_argument("SPARSITY_ORACLE_CAP must be an integer in [2," +
                                    std::to_string(kMaxOracleCap) + "], got " + raw);
    return cap;
}

inline SparsityParams make_params(int k, int ell, int d) {
    return d == 0 ? SparsityParams::non_uniform(k, ell) : SparsityParams::uniform_params(k, ell, d);
}

inline void emit(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump() << '\n'; }

struct ParsedApp {
    CLI::App app{"", "sparsity"};
    std::optional<int> parse(std::vector<std::string> rest, std::ostream& out, std::ostream& err) {
        std::reverse(rest.begin(), rest.end());
        try {
            app.parse(std::move(rest));
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "error:usage: " << e.what() << '\n';
            return 2;
        }
        return std::nullopt;
    }
};

template <class Field>
nlohmann::ordered_json realization_json(const Realization<Field>& r, bool full) {
    nlohmann::ordered_json j;
    j["k"] = r.params.k;
    j["l"] = r.params.ell;
    j["d"] = r.params.uniform ? r.params.d : 0;
    j["n"] = static_cast<int>(r.matrix.cols()) / r.params.k;
    j["m"] = static_cast<int>(r.matrix.rows());
    j["seed"] = r.seed;
    j["modulus"] = r.modulus;
    if (full) {
        auto dump = [&](const Matrix<Field>& m) {
            auto rows = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < m.rows(); ++i) {
                auto row = nlohmann::ordered_json::array();
                for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().to_string(m(i, c)));
                rows.push_back(std::move(row));
            }
            return rows;
        };
        j["matrix"] = dump(r.matrix);
        j["u"] = dump(r.constraints);
    }
    return j;
}

inline int run_check(const std::vector<std::string>& rest, std::istream& in, std::ostream& out,
                     std::ostream& err, bool tight_only) {
    int k = 1, ell = 0, d = 0;
    bool expect_sparse = false;
    std::string input;
    ParsedApp parsed;
    parsed.app.add_option("-k", k)->required();
    parsed.app.add_option("-l", ell);
    parsed.app.add_option("-d", d);
    if (!tight_only) parsed.app.add_flag("--expect-sparse", expect_sparse);
    parsed.app.add_option("input", input)->required();
    if (auto code = parsed.parse(rest, out, err)) return *code;

    const Hypergraph g = load_hypergraph(input, in);
    const SparsityParams p = make_params(k, ell, d);
    const int cap = oracle_cap_from_env();
    const auto violation = find_violation(g, p, cap);
    const bool sparse = !violation.has_value();
    const bool tight = sparse && g.edge_count() == p.k * g.vertex_count() - p.ell;

    nlohmann::ordered_json j;
    if (tight_only) {
        j["tight"] = tight;
    } else {
        j["sparse"] = sparse;
        j["tight"] = tight;
        if (violation) j["violation"] = violation->to_json();
    }
    emit(out, j);
    if (expect_sparse && !sparse) {
        err << "error:domain: hypergraph is not (" << k << "," << ell << ")-sparse\n";
        return 1;
    }
    return 0;
}

inline int run_orient(const std::vector<std::string>& rest, std::istream& in, std::ostream& out,
                      std::ostream& err) {
    int k = 1;
    std::string input;
    ParsedApp parsed;
    parsed.app.add_option("-k", k)->required();
    parsed.app.add_option("input", input)->required();
    if (auto code = parsed.parse(rest, out, err)) return *code;

    const Hypergraph g = load_hypergraph(input, in);
    const auto orientation = find_orientation(g, k);
    nlohmann::ordered_json j;
    j["exists"] = orientation.has_value();
    if (orientation) j["tail"] = orientation->tail;
    emit(out, j);
    return 0;
}

inline int run_rank(const std::vector<std::string>& rest, std::istream& in, std::ostream& out,
                    std::ostream& err, bool with_basis) {
    int k = 1, ell = 0, d = 0, trials = 3;
    std::uint64_t seed = 0, modulus = kDefaultModulus;
    std::string input;
    ParsedApp parsed;
    parsed.app.add_option("-k", k)->required();
    parsed.app.add_option("-l", ell);
    parsed.app.add_option("-d", d);
    parsed.app.add_option("--seed", seed);
    parsed.app.add_option("--trials", trials)->check(CLI::PositiveNumber);
    parsed.app.add_option("--modulus", modulus);
    parsed.app.add_option("input", input)->required();
    if (auto code = parsed.parse(rest, out, err)) return *code;

    const Hypergraph g = load_hypergraph(input, in);
    const SparsityParams p = make_params(k, ell, d);
    const int cap = oracle_cap_from_env();
    const FieldSpec spec{modulus};

    MatroidReport report = with_field(spec, [&](auto field) {
        if (g.vertex_count() <= cap) return cross_validate(g, p, trials, field, seed, cap);
        MatroidReport r;
        r.seeds_used = derive_seeds(seed, trials);
        r.rank_linear = rank_linear(g, p, field, r.seeds_used);
        r.failure_bound = rank_failure_bound(g.edge_count(), field.sample_space(), r.seeds_used.size());
        return r;
    });
    if (with_basis) {
        report.basis = with_field(spec, [&](auto field) {
            return extract_basis(g, p, field, derive_seeds(seed, trials), cap);
        });
    }
    emit(out, report.to_json());
    return 0;
}

inline int run_circuit(const std::vector<std::string>& rest, std::istream& in, std::ostream& out,
                       std::ostream& err) {
    int k = 1, ell = 0, d = 0, trials = 3;
    std::uint64_t seed = 0, modulus = kDefaultModulus;
    std::string input;
    ParsedApp parsed;
    parsed.app.add_option("-k", k)->required();
    parsed.app.add_option("-l", ell);
    parsed.app.add_option("-d", d);
    parsed.app.add_option("--seed", seed);
    parsed.app.add_option("--trials", trials)->check(CLI::PositiveNumber);
    parsed.app.add_option("--modulus", modulus);
    parsed.app.add_option("input", input)->required();
    if (auto code = parsed.parse(rest, out, err)) return *code;

    const Hypergraph g = load_hypergraph(input, in);
    const SparsityParams p = make_params(k, ell, d);
    const int cap = oracle_cap_from_env();
    const FieldSpec spec{modulus};

    std::vector<int> all(static_cast<std::size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) all[static_cast<std::size_t>(e)] = e;
    MatroidReport report = with_field(spec, [&](auto field) {
        const auto seeds = derive_seeds(seed, trials);
        MatroidReport r;
        if (g.vertex_count() <= cap) {
            r = cross_validate(g, p, trials, field, seed, cap);
        } else {
            r.seeds_used = seeds;
            r.rank_linear = rank_linear(g, p, field, seeds);
            r.failure_bound = rank_failure_bound(g.edge_count(), field.sample_space(), seeds.size());
        }
        r.circuit = find_circuit(g, p, all, field, seeds);
        return r;
    });
    emit(out, report.to_json());
    return 0;
}

inline int run_realize(const std::vector<std::string>& rest, std::istream& in, std::ostream& out,
                       std::ostream& err) {
    int k = 1, ell = 0, d = 0;
    std::uint64_t seed = 0, modulus = kDefaultModulus;
    std::string input, emit_u, format = "matrix";
    ParsedApp parsed;
    parsed.app.add_option("-k", k)->required();
    parsed.app.add_option("-l", ell);
    parsed.app.add_option("-d", d);
    parsed.app.add_option("--seed", seed);
    parsed.app.add_option("--modulus", modulus);
    parsed.app.add_option("--emit-u", emit_u);
    parsed.app.add_option("--format", format)->check(CLI::IsMember({"json", "matrix"}));
    parsed.app.add_option("input", input)->required();
    if (auto code = parsed.parse(rest, out, err)) return *code;

    const Hypergraph g = load_hypergraph(input, in);
    const SparsityParams p = make_params(k, ell, d);
    const FieldSpec spec{modulus};
    return with_field(spec, [&](auto field) {
        const auto r = realize_kl(g, p, field, seed);
        if (format == "json") {
            emit(out, realization_json(r, true));
        } else {
            emit(out, realization_json(r, false));
            write_matrix(out, r.matrix);
        }
        if (!emit_u.empty()) {
            std::ofstream file(emit_u);
            if (!file) throw std::invalid_argument("cannot write constraint matrix to '" + emit_u + "'");
            write_matrix(file, r.constraints);
        }
        return 0;
    });
}

inline int run_complete(const std::vector<std::string>& rest, std::ostream& out, std::ostream& err) {
    int n = 0, d = 0, multiplicity = 1, k = 1, max_size = 0;
    bool plus = false;
    ParsedApp parsed;
    parsed.app.add_option("-n", n)->required();
    parsed.app.add_option("-d", d);
    parsed.app.add_option("-m", multiplicity);
    parsed.app.add_flag("--plus", plus);
    parsed.app.add_option("-k", k);
    parsed.app.add_option("--max-size", max_size);
    if (auto code = parsed.parse(rest, out, err)) return *code;

    const Hypergraph g = plus ? complete_plus(n, k, max_size == 0 ? n : max_size)
                              : complete_uniform(n, d, multiplicity);
    emit(out, to_json(g));
    return 0;
}

inline int run_experiment_verb(const std::vector<std::string>& rest, std::ostream& out,
                               std::ostream& err) {
    ExperimentConfig cfg;
    std::vector<std::string> kl_raw;
    std::string out_path;
    ParsedApp parsed;
    parsed.app.add_option("--n-min", cfg.n_min);
    parsed.app.add_option("--n-max", cfg.n_max);
    parsed.app.add_option("-d", cfg.d);
    parsed.app.add_option("--kl", kl_raw)->required();
    parsed.app.add_option("--trials", cfg.trials);
    parsed.app.add_option("--seed", cfg.base_seed);
    parsed.app.add_option("--modulus", cfg.modulus);
    parsed.app.add_option("--seed-trials", cfg.seed_trials);
    parsed.app.add_option("--out", out_path);
    if (auto code = parsed.parse(rest, out, err)) return *code;

    for (const std::string& pair : kl_raw) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--kl expects k:l, got '" + pair + "'");
        cfg.kl.emplace_back(std::stoi(pair.substr(0, colon)), std::stoi(pair.substr(colon + 1)));
    }
    cfg.oracle_cap = oracle_cap_from_env();

    if (out_path.empty()) {
        run_experiment(cfg, out);
    } else {
        std::ofstream file(out_path);
        if (!file) throw std::invalid_argument("cannot write report to '" + out_path + "'");
        run_experiment(cfg, file);
    }
    return 0;
}

}  // namespace detail

// Single entry point behind the binary: executes one verb, writes results to
// `out` and diagnostics to `err`. Exit codes: 0 success, 1 domain failure,
// 2 usage/parameter error.
inline int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                       std::ostream& err) {
    if (args.empty()) {
        print_usage(err);
        return 2;
    }
    const std::string verb = args[0];
    if (verb == "-h" || verb == "--help" || verb == "help") {
        print_usage(out);
        return 0;
    }
    if (std::find(verbs().begin(), verbs().end(), verb) == verbs().end()) {
        err << "error:verb: unknown verb '" << verb << "'\n";
        return 2;
    }
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        if (verb == "check") return detail::run_check(rest, in, out, err, false);
        if (verb == "tight") return detail::run_check(rest, in, out, err, true);
        if (verb == "orient") return detail::run_orient(rest, in, out, err);
        if (verb == "rank") return detail::run_rank(rest, in, out, err, false);
        if (verb == "basis") return detail::run_rank(rest, in, out, err, true);
        if (verb == "circuit") return detail::run_circuit(rest, in, out, err);
        if (verb == "realize") return detail::run_realize(rest, in, out, err);
        if (verb == "complete") return detail::run_complete(rest, out, err);
        return detail::run_experiment_verb(rest, out, err);
    } catch (const nlohmann::json::exception& e) {
        err << "error:json: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error:domain: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error:param: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error:param: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error:internal: " << e.what() << '\n';
        return 1;
    }
}

inline int run_command(const std::vector<std::string>& args) {
    return run_command(args, std::cin, std::cout, std::cerr);
}

}  // namespace cli
}  // namespace sparsity
