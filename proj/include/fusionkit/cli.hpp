#pragma once

// Command line front end. run() is the whole interface so tests can drive it
// in process with captured streams. stdout carries only the requested result
// and is byte-identical across runs and thread counts; progress notes go to
// the error stream. Exit codes: 0 success, 1 usage or computation errors,
// 2 verification failure (witnesses still printed to stdout).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <CLI11.hpp>

#include "fusionkit/analysis.hpp"

namespace fusionkit::cli {

namespace detail {

inline Weight parse_weight_arg(const std::string& text, const std::string& flag) {
    Weight w;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string part = text.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            w.push_back(std::stoll(part, &used));
            if (used != part.size() || part.empty()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw domain_error_t(flag + ": expected comma-separated integers, got '" + text + "'");
        }
        pos = comma + 1;
    }
    return w;
}

inline void require_rank(const Weight& w, const RootData& rd, const std::string& flag) {
    if (static_cast<int>(w.size()) != rd.rank)
        throw domain_error_t(flag + ": expected " + std::to_string(rd.rank) + " labels for " + rd.id.name() +
                             ", got " + std::to_string(w.size()));
}

inline void require_irrep_arg(const Weight& w, const CharacterTable& t, const std::string& flag) {
    if (w.size() != 1 || w[0] < 0 || w[0] >= static_cast<Int>(t.num_irreps()))
        throw domain_error_t(flag + ": expected one irrep index below " + std::to_string(t.num_irreps()) +
                             " for table " + t.name);
}

// Table sources: an existing file path is loaded from disk, anything else is
// resolved as a built-in name.
inline CharacterTable resolve_table(const std::string& source) {
    if (std::filesystem::exists(source)) return load_table_file(source);
    return builtin_table(source);
}

inline std::string format_complex_text(const std::complex<double>& v) {
    return "[" + format_double(v.real()) + "," + format_double(v.imag()) + "]";
}

// Owns whichever objects the selected ProductDomain points at.
struct DomainBox {
    std::optional<RootData> rd;
    std::optional<CharacterTable> table;
    std::optional<ProductDomain> domain;
};

inline DomainBox make_domain(const std::string& algebra, bool has_level, Int level, const std::string& table,
                             WeightSystemCache& cache) {
    DomainBox box;
    if (!table.empty()) {
        if (!algebra.empty() || has_level)
            throw domain_error_t("--table: cannot be combined with --algebra or --level");
        box.table = resolve_table(table);
        box.domain = ProductDomain::group(*box.table);
        return box;
    }
    if (algebra.empty()) throw domain_error_t("--algebra: required unless --table is given");
    box.rd = build_algebra(parse_algebra(algebra));
    if (has_level)
        box.domain = ProductDomain::fusion(*box.rd, level, cache);
    else
        box.domain = ProductDomain::tensor(*box.rd, cache);
    return box;
}

inline std::pair<Weight, Weight> domain_pair(const DomainBox& box, const std::string& lhs, const std::string& rhs,
                                             bool conjugate_rhs) {
    Weight l = parse_weight_arg(lhs, "--lhs");
    Weight r = parse_weight_arg(rhs, "--rhs");
    if (box.rd) {
        require_rank(l, *box.rd, "--lhs");
        require_rank(r, *box.rd, "--rhs");
    } else {
        require_irrep_arg(l, *box.table, "--lhs");
        require_irrep_arg(r, *box.table, "--rhs");
    }
    if (conjugate_rhs) r = box.domain->conjugate(r);
    return {std::move(l), std::move(r)};
}

inline std::string product_symbol(ContextKind kind) {
    return kind == ContextKind::fusion ? " * " : " x ";
}

inline void print_group_table(const CharacterTable& t, std::ostream& out) {
    out << "table " << t.name << " (order " << t.order << ", " << t.num_classes() << " classes)\n";
    out << "class sizes:";
    for (Int s : t.class_sizes) out << " " << s;
    out << "\n";
    for (std::size_t i = 0; i < t.num_irreps(); ++i) {
        out << "irrep " << i << ": dim " << t.dims[i] << ", conjugate " << t.conj_irrep[i] << ", fs ";
        if (t.has_power_map()) {
            const Int fs = group_fs_indicator(t, static_cast<Int>(i));
            out << (fs > 0 ? "+1" : fs < 0 ? "-1" : "0");
        } else {
            out << "n/a";
        }
        out << "\n";
    }
}

inline void print_smatrix(const SMatrix& s, std::ostream& out) {
    out << "S matrix for fusion(" << s.algebra.name() << ",k=" << s.level << "), " << s.size() << " weights\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_weight(s.index[i]) << ":";
        for (std::size_t j = 0; j < s.size(); ++j) out << " " << format_complex_text(s.at(i, j));
        out << "\n";
    }
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tensor, fusion, and character product calculator"};
    app.require_subcommand(1);

    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string cache_dir;
    app.add_option("--threads", threads, "worker thread cap");
    app.add_option("--cache", cache_dir, "weight system cache directory");

    std::string algebra, table, lhs, rhs, format = "text", export_path, weight_arg;
    Int level = 0;
    bool has_level = false, conjugate_rhs = false;
    int r_max = 3, prop = 0;
    Int bound = 0;
    std::size_t stop_after = 0;
    Int graph_bound = 2;
    TableOneBudget budget;

    auto add_format = [&](CLI::App* cmd, const std::string& allowed) {
        cmd->add_option("--format", format, "output format (" + allowed + ")");
        // Accepted per subcommand too, so the flags can follow the verb.
        cmd->add_option("--threads", threads, "worker thread cap");
        cmd->add_option("--cache", cache_dir, "weight system cache directory");
    };
    auto add_context = [&](CLI::App* cmd, bool with_table) {
        cmd->add_option("--algebra", algebra, "algebra name, e.g. A2");
        cmd->add_option("--level", level, "fusion level")->each([&](const std::string&) { has_level = true; });
        if (with_table) cmd->add_option("--table", table, "character table: built-in name or JSON file");
    };
    auto add_pair = [&](CLI::App* cmd) {
        cmd->add_option("--lhs", lhs, "left weight, comma-separated labels")->required();
        cmd->add_option("--rhs", rhs, "right weight, comma-separated labels")->required();
        cmd->add_flag("--conjugate-rhs", conjugate_rhs, "conjugate the right factor first");
    };

    CLI::App* c_decompose = app.add_subcommand("decompose", "tensor product decomposition");
    c_decompose->add_option("--algebra", algebra, "algebra name, e.g. A2")->required();
    add_pair(c_decompose);
    add_format(c_decompose, "text|json");

    CLI::App* c_fuse = app.add_subcommand("fuse", "fusion product at a level");
    c_fuse->add_option("--algebra", algebra, "algebra name, e.g. A2")->required();
    c_fuse->add_option("--level", level, "fusion level")->required();
    add_pair(c_fuse);
    add_format(c_fuse, "text|json");

    CLI::App* c_moments = app.add_subcommand("moments", "multiplicity moments of one product");
    add_context(c_moments, true);
    add_pair(c_moments);
    c_moments->add_option("--r-max", r_max, "highest moment");
    add_format(c_moments, "text|json");

    CLI::App* c_compare = app.add_subcommand("compare", "compare a product against its conjugate partner");
    add_context(c_compare, true);
    add_pair(c_compare);
    c_compare->add_option("--r-max", r_max, "highest moment");
    add_format(c_compare, "text|json");

    CLI::App* c_smatrix = app.add_subcommand("smatrix", "modular S matrix on the level-k alcove");
    c_smatrix->add_option("--algebra", algebra, "algebra name, e.g. A2")->required();
    c_smatrix->add_option("--level", level, "fusion level")->required();
    add_format(c_smatrix, "text|json");

    CLI::App* c_verify = app.add_subcommand("verify", "check one conjugation property over a domain");
    c_verify->add_option("--prop", prop, "property number 1..6")->required();
    add_context(c_verify, true);
    c_verify->add_option("--bound", bound, "label sum bound for tensor domains");
    add_format(c_verify, "text|json");

    CLI::App* c_scan = app.add_subcommand("scan", "list counterexamples to a property");
    c_scan->add_option("--prop", prop, "property number 1..6")->required();
    add_context(c_scan, true);
    c_scan->add_option("--bound", bound, "label sum bound for tensor domains");
    c_scan->add_option("--stop-after", stop_after, "truncate the witness list");
    add_format(c_scan, "text|json");

    CLI::App* c_graph = app.add_subcommand("graph", "repeated-product graph in DOT form");
    c_graph->add_option("--algebra", algebra, "algebra name, e.g. A2");
    c_graph->add_option("--table", table, "character table: built-in name or JSON file");
    c_graph->add_option("--weight", weight_arg, "generating weight or irrep index")->required();
    c_graph->add_option("--bound", graph_bound, "vertex label sum bound (algebras only)");
    add_format(c_graph, "dot");

    CLI::App* c_group = app.add_subcommand("group", "inspect or export a character table");
    c_group->add_option("--table", table, "character table: built-in name or JSON file")->required();
    c_group->add_option("--export", export_path, "write the table as JSON to this file");
    add_format(c_group, "text|json");

    CLI::App* c_table1 = app.add_subcommand("table1", "regenerate the property verdict table");
    c_table1->add_option("--a2-bound", budget.a2_tensor_bound, "A2 tensor label sum bound");
    c_table1->add_option("--a2-level", budget.a2_max_level, "A2 fusion max level");
    c_table1->add_option("--a3-bound", budget.a3_tensor_bound, "A3 tensor label sum bound");
    c_table1->add_option("--a3-level", budget.a3_max_level, "A3 fusion max level");
    c_table1->add_option("--a4-bound", budget.a4_tensor_bound, "A4 tensor label sum bound");
    c_table1->add_option("--d5-bound", budget.d5_tensor_bound, "D5 tensor label sum bound");
    c_table1->add_option("--a4-level", budget.a4_fusion_level, "A4 fusion scan level");
    add_format(c_table1, "text|json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*c_graph && c_graph->count("--format") == 0) format = "dot";
        if (format != "text" && format != "json" && format != "dot")
            throw domain_error_t("--format: expected text, json, or dot, got '" + format + "'");
        const bool json = format == "json";
        if (threads < 1) throw domain_error_t("--threads: must be at least 1");
        set_worker_threads(threads);

        WeightSystemCache cache;
        if (const char* env = std::getenv("FUSIONKIT_CACHE"); env && *env)
            cache_dir = env;  // environment overrides the flag
        if (!cache_dir.empty()) cache.set_directory(cache_dir);

        if (*c_decompose || *c_fuse) {
            const bool fusion = static_cast<bool>(*c_fuse);
            if (format == "dot") throw domain_error_t("--format: dot applies to the graph subcommand only");
            const auto box =
                detail::make_domain(algebra, fusion, level, "", cache);
            const auto [l, r] = detail::domain_pair(box, lhs, rhs, conjugate_rhs);
            const Decomposition d = box.domain->decompose(l, r);
            if (json)
                out << to_json(d) << "\n";
            else
                out << format_weight(l) << detail::product_symbol(box.domain->kind()) << format_weight(r)
                    << " = " << format_terms(d) << "\n";
            return 0;
        }

        if (*c_moments) {
            const auto box = detail::make_domain(algebra, has_level, level, table, cache);
            const auto [l, r] = detail::domain_pair(box, lhs, rhs, conjugate_rhs);
            const Decomposition d = box.domain->decompose(l, r);
            const auto m = moments(d, r_max);
            const auto sig = multiset_signature(d);
            if (json) {
                std::string s = "{\n  \"context\": " + to_json(d.context, "  ") + ",\n";
                s += "  \"lambda\": " + fusionkit::detail::json_weight(l) + ",\n";
                s += "  \"mu\": " + fusionkit::detail::json_weight(r) + ",\n  \"moments\": [";
                for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + m[i].str();
                s += "],\n  \"signature\": \"" + json_escape(sig.str()) + "\"\n}";
                out << s << "\n";
            } else {
                out << "context: " << d.context.describe() << "\n";
                out << "product: " << format_weight(l) << detail::product_symbol(box.domain->kind())
                    << format_weight(r) << "\n";
                out << "moments:";
                for (std::size_t i = 0; i < m.size(); ++i) out << " m" << i << "=" << m[i].str();
                out << "\nsignature: " << sig.str() << "\n";
            }
            return 0;
        }

        if (*c_compare) {
            const auto box = detail::make_domain(algebra, has_level, level, table, cache);
            const auto [l, r] = detail::domain_pair(box, lhs, rhs, conjugate_rhs);
            const ComparisonReport rep = compare_conjugation(*box.domain, l, r, r_max);
            out << (json ? to_json(rep) + "\n" : format_report(rep));
            return 0;
        }

        if (*c_smatrix) {
            RootData rd = build_algebra(parse_algebra(algebra));
            const SMatrix s = smatrix(rd, level, cache);
            if (json)
                out << to_json(s) << "\n";
            else
                detail::print_smatrix(s, out);
            return 0;
        }

        if (*c_verify || *c_scan) {
            const auto box = detail::make_domain(algebra, has_level, level, table, cache);
            err << "scan: prop " << prop << " on " << box.domain->descriptor().describe() << ", bound " << bound
                << "\n";
            const VerificationReport rep = verify_proposition(prop, *box.domain, bound);
            err << "scan: done, " << rep.classes_checked << " classes / " << rep.pairs_checked << " pairs\n";
            if (*c_verify) {
                out << (json ? to_json(rep) + "\n" : format_report(rep));
            } else {
                std::vector<WitnessPair> wit = rep.violations;
                if (rep.prop == 6)
                    for (const Weight& kappa : rep.kappa_violations) wit.push_back({kappa, kappa});
                if (stop_after > 0 && wit.size() > stop_after) wit.resize(stop_after);
                if (json) {
                    std::string s = "{\n  \"prop\": " + std::to_string(prop) + ",\n";
                    s += "  \"context\": " + to_json(box.domain->descriptor(), "  ") + ",\n";
                    s += "  \"bound\": " + std::to_string(bound) + ",\n  \"witnesses\": [";
                    for (std::size_t i = 0; i < wit.size(); ++i) {
                        s += i ? ",\n    " : "\n    ";
                        s += "{\"lambda\": " + fusionkit::detail::json_weight(wit[i].lambda) +
                             ", \"mu\": " + fusionkit::detail::json_weight(wit[i].mu) + "}";
                    }
                    s += wit.empty() ? "]\n}" : "\n  ]\n}";
                    out << s << "\n";
                } else if (wit.empty()) {
                    out << "none\n";
                } else {
                    for (const auto& w : wit)
                        out << "lambda=" << format_weight(w.lambda) << " mu=" << format_weight(w.mu) << "\n";
                }
            }
            return rep.passed ? 0 : 2;
        }

        if (*c_graph) {
            if (format != "dot") throw domain_error_t("--format: graph output is dot only");
            if (!table.empty()) {
                const CharacterTable t = detail::resolve_table(table);
                const Weight f = detail::parse_weight_arg(weight_arg, "--weight");
                detail::require_irrep_arg(f, t, "--weight");
                out << group_graph(t, f[0]);
            } else {
                if (algebra.empty()) throw domain_error_t("--algebra: required unless --table is given");
                RootData rd = build_algebra(parse_algebra(algebra));
                const Weight f = detail::parse_weight_arg(weight_arg, "--weight");
                detail::require_rank(f, rd, "--weight");
                out << tensor_graph(rd, f, graph_bound, cache);
            }
            return 0;
        }

        if (*c_group) {
            const CharacterTable t = detail::resolve_table(table);
            if (!export_path.empty()) {
                std::ofstream file(export_path, std::ios::binary);
                if (!file) throw domain_error_t("--export: cannot open '" + export_path + "' for writing");
                file << to_json(t) << "\n";
                err << "wrote " << export_path << "\n";
            }
            if (json)
                out << to_json(t) << "\n";
            else
                detail::print_group_table(t, out);
            return 0;
        }

        if (*c_table1) {
            err << "table1: budget a2<=" << budget.a2_tensor_bound << " k<=" << budget.a2_max_level << ", a3<="
                << budget.a3_tensor_bound << " k<=" << budget.a3_max_level << ", a4<=" << budget.a4_tensor_bound
                << ", d5<=" << budget.d5_tensor_bound << ", affine k=" << budget.a4_fusion_level << "\n";
            const TableOneReport rep = table_one_report(budget, cache, &err);
            out << (json ? to_json(rep) + "\n" : rep.text());
            return 0;
        }

        throw domain_error_t("no subcommand selected");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace fusionkit::cli
