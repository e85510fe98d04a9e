#include "pjones/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "pjones/closedform.hpp"
#include "pjones/stability.hpp"
#include "pjones/tloracle.hpp"

namespace pjones {

namespace {

using nlohmann::json;

std::pair<int, int> parse_color_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--colors", "expected a..b, got '" + text + "'");
    int lo = 0, hi = 0;
    try {
        lo = std::stoi(text.substr(0, dots));
        hi = std::stoi(text.substr(dots + 2));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--colors", "expected a..b, got '" + text + "'");
    }
    if (lo < 1 || hi < lo)
        throw CLI::ValidationError("--colors", "need 1 <= a <= b, got '" + text + "'");
    return {lo, hi};
}

std::string join(const Series& s, const char* sep = " ") {
    std::string r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) r += sep;
        r += s[i].get_str();
    }
    return r;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_compute(const RunConfig& cfg, bool raw, std::ostream& out) {
    json results = json::array();
    for (int c = cfg.color_lo; c <= cfg.color_hi; ++c) {
        LaurentPoly p =
            raw ? colored_jones(c, cfg.spec, cfg.jobs) : normalized_colored_jones(c, cfg.spec, cfg.jobs);
        Canonical cn = canonicalize(p);
        if (cfg.format == "json") {
            results.push_back({{"color", c}, {"polynomial", to_json(cn)}});
        } else if (cfg.format == "csv") {
            out << c << "," << cn.shift << "," << cn.sign << "," << cn.step;
            for (const auto& x : cn.coefficients) out << "," << x.get_str();
            out << "\n";
        } else {
            out << "spec " << cfg.spec.str() << "  color " << c << (raw ? "  raw" : "") << "\n";
            out << "  [" << join(cn.coefficients, ", ") << "]  shift=" << cn.shift
                << " sign=" << cn.sign << " step=" << cn.step << "\n";
        }
    }
    if (cfg.format == "json")
        emit(out, json{{"command", "compute"},
                       {"spec", cfg.spec.str()},
                       {"normalized", !raw},
                       {"results", results}});
    return 0;
}

int cmd_heads(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ExtractOptions opt;
    opt.jobs = cfg.jobs;
    opt.depth = cfg.depth;
    const bool closed_h1 = cfg.order == 2 && cfg.spec == PretzelSpec{3, 3, 3};
    if (cfg.color_lo > 0) {
        opt.color_lo = cfg.color_lo;
        opt.color_hi = cfg.color_hi;
    } else {
        // smallest range whose consensus windows cover `depth` twice
        opt.color_lo = 2;
        if (cfg.order == 0)
            opt.color_hi = int(cfg.depth) + 1;
        else if (cfg.order == 1 || closed_h1)
            opt.color_hi = int(cfg.depth) + 2;
        else
            opt.color_hi = 2 * int(cfg.depth) + 4;
    }
    if (closed_h1)
        opt.head1 = one_head_935(2 * std::size_t(opt.color_hi) + cfg.depth + 16);

    HeadReport rep;
    try {
        rep = extract_khead(cfg.spec, cfg.order, opt);
    } catch (const NotStabilized& e) {
        err << "not stabilized: " << e.what() << "\n";
        return 3;
    }

    if (cfg.format == "json") {
        emit(out, to_json(rep));
    } else if (cfg.format == "csv") {
        out << "head," << join(rep.head, ",") << "\n";
        for (std::size_t i = 0; i < rep.rows.size(); ++i)
            out << rep.certificate[i].color << "," << join(rep.rows[i], ",") << "\n";
    } else {
        out << "spec " << cfg.spec.str() << "  order " << cfg.order << "  colors " << rep.color_lo
            << ".." << rep.color_hi << "  depth " << cfg.depth
            << (closed_h1 ? "  (closed 1-head subtracted)" : "") << "\n";
        out << "head: [" << join(rep.head, ", ") << "]\n";
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const CertEntry& e = rep.certificate[i];
            out << "  c=" << e.color << "  shift " << e.shift << "  window " << e.window
                << "  agree " << e.agreement << "  | " << join(rep.rows[i]) << "\n";
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, bool all_classes, bool lemmas, int max_n, std::ostream& out,
               std::ostream& err) {
    json checks = json::array();
    bool any_fail = false, any_unstable = false;

    if (lemmas) {
        for (const CheckResult& r : lemma_suite(max_n, cfg.jobs)) {
            checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            any_fail |= !r.pass;
            if (cfg.format == "pretty")
                out << (r.pass ? "PASS  " : "FAIL  ") << r.name
                    << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
        }
    } else {
        std::vector<PretzelSpec> specs =
            all_classes ? family_representatives() : std::vector<PretzelSpec>{cfg.spec};
        for (const PretzelSpec& sp : specs) {
            std::string name = "two-head " + sp.str() + " depth " + std::to_string(cfg.depth);
            try {
                TheoremCheck tc = verify_two_head(sp, cfg.depth, cfg.color_hi, cfg.jobs);
                checks.push_back({{"name", name},
                                  {"pass", tc.pass},
                                  {"detail", tc.detail},
                                  {"head", json::parse("[" + join(tc.report.head, ",") + "]")}});
                any_fail |= !tc.pass;
                if (cfg.format == "pretty")
                    out << (tc.pass ? "PASS  " : "FAIL  ") << name << "  head ["
                        << join(tc.report.head, ", ") << "]"
                        << (tc.detail.empty() ? "" : "  [" + tc.detail + "]") << "\n";
            } catch (const NotStabilized& e) {
                any_unstable = true;
                checks.push_back(
                    {{"name", name}, {"pass", false}, {"detail", std::string(e.what())}});
                if (cfg.format == "pretty") out << "UNSTABLE  " << name << "  " << e.what() << "\n";
            }
        }
    }

    if (cfg.format == "json")
        emit(out, json{{"command", "verify"}, {"checks", checks}});
    else if (cfg.format == "csv")
        for (const auto& c : checks)
            out << c["name"].get<std::string>() << "," << (c["pass"].get<bool>() ? 1 : 0) << "\n";
    if (any_fail) {
        err << "verification failed\n";
        return 3;
    }
    if (any_unstable) {
        err << "extraction not stabilized\n";
        return 4;
    }
    return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<int> colors;
    if (cfg.color_lo > 0)
        for (int c = cfg.color_lo; c <= cfg.color_hi; ++c) colors.push_back(c);
    else
        colors = {2, 3};
    std::size_t budget = cfg.budget ? cfg.budget : kDefaultBracketBudget;

    json results = json::array();
    bool mismatch = false;
    for (int c : colors) {
        LaurentPoly b;
        try {
            b = bracket_eval(cfg.spec, c, budget);
        } catch (const ResourceLimit& e) {
            err << "resource limit at color " << c << ": " << e.what() << "\n";
            return 5;
        }
        Canonical cb = canonicalize(b);
        Canonical cj = canonicalize(normalized_colored_jones(c, cfg.spec, cfg.jobs));
        // framing/orientation shifts are invisible to the bracket, so agreement
        // means equal canonical coefficients on the same lattice
        bool ok = cb.coefficients == cj.coefficients && cb.step == cj.step;
        mismatch |= !ok;
        if (cfg.format == "json") {
            results.push_back({{"color", c},
                               {"match", ok},
                               {"bracket", to_json(cb)},
                               {"statesum", to_json(cj)}});
        } else if (cfg.format == "csv") {
            out << c << "," << (ok ? "match" : "mismatch") << "\n";
        } else {
            out << "color " << c << ": " << (ok ? "MATCH" : "MISMATCH") << "  ["
                << join(cj.coefficients, ", ") << "]\n";
            if (!ok) out << "  bracket gave [" << join(cb.coefficients, ", ") << "]\n";
        }
    }
    if (cfg.format == "json")
        emit(out, json{{"command", "oracle"}, {"spec", cfg.spec.str()}, {"results", results}});
    return mismatch ? 3 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact colored Jones invariants of three-twist-region pretzel knots"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string pretzel, colors_text, format = "pretty", theorem;
    int color = 0, max_n = 25, jobs = 0;
    bool raw = false, all_classes = false, lemmas = false;
    std::size_t budget = 0;
    if (const char* env = std::getenv("PJONES_JOBS")) jobs = std::atoi(env);

    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        auto* p = sub->add_option("--pretzel", pretzel, "twist counts m1,m2,m3 (negative twists)");
        if (needs_spec) p->required();
        sub->add_option("--format", format, "json|csv|pretty")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("--jobs", jobs, "worker threads (default $PJONES_JOBS or automatic)")
            ->check(CLI::Range(1, 1 << 10));
        return sub;
    };

    auto* compute = add_common(app.add_subcommand("compute", "evaluate the invariant"), true);
    compute->add_option("--color", color, "single color N >= 1")->check(CLI::Range(1, 64));
    compute->add_option("--colors", colors_text, "color range a..b");
    compute->add_flag("--raw", raw, "emit the unnormalized state sum");

    auto* heads = add_common(app.add_subcommand("heads", "stabilized head extraction"), true);
    heads->add_option("--order", cfg.order, "head order k (0, 1 or 2)")->check(CLI::Range(0, 2));
    heads->add_option("--depth", cfg.depth, "certified head length")
        ->check(CLI::Range(std::size_t(1), std::size_t(256)));
    heads->add_option("--colors", colors_text, "color range a..b (default picked per order)");

    auto* verify = add_common(app.add_subcommand("verify", "closed-form verification suites"), false);
    verify->add_option("--theorem", theorem, "theorem id (1.1)");
    verify->add_flag("--all-classes", all_classes, "run every family representative");
    verify->add_flag("--lemmas", lemmas, "run the truncated-identity suites");
    verify->add_option("--max-n", max_n, "upper N for the identity suites")
        ->check(CLI::Range(1, 200));
    verify->add_option("--depth", cfg.depth, "two-head comparison depth")
        ->check(CLI::Range(std::size_t(1), std::size_t(64)));
    verify->add_option("--colors", colors_text, "override color range a..b");

    auto* oracle = add_common(app.add_subcommand("oracle", "diagrammatic bracket cross-check"), true);
    oracle->add_option("--color", color, "color (2 or 3; 4 needs --budget)")
        ->check(CLI::Range(1, 8));
    oracle->add_option("--budget", budget, "coefficient-storage cap in bytes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.format = format;
        cfg.jobs = jobs;
        cfg.budget = budget;
        if (!pretzel.empty()) cfg.spec = PretzelSpec::parse(pretzel);
        if (!colors_text.empty()) {
            auto [lo, hi] = parse_color_range(colors_text);
            cfg.color_lo = lo;
            cfg.color_hi = hi;
        } else if (color > 0) {
            cfg.color_lo = cfg.color_hi = color;
        }

        if (compute->parsed()) {
            if (cfg.color_lo == 0) {
                err << "compute needs --color or --colors\n";
                return 2;
            }
            return cmd_compute(cfg, raw, out);
        }
        if (heads->parsed()) return cmd_heads(cfg, out, err);
        if (verify->parsed()) {
            if (lemmas == !theorem.empty()) {  // exactly one mode
                err << "verify needs exactly one of --theorem 1.1 or --lemmas\n";
                return 2;
            }
            if (!lemmas) {
                if (theorem != "1.1") {
                    err << "unknown theorem '" << theorem << "' (only 1.1)\n";
                    return 2;
                }
                if (pretzel.empty() == !all_classes) {
                    err << "verify --theorem needs exactly one of --pretzel or --all-classes\n";
                    return 2;
                }
            }
            return cmd_verify(cfg, all_classes, lemmas, max_n, out, err);
        }
        if (oracle->parsed()) {
            int lo = cfg.color_lo;
            int hi = cfg.color_hi;
            if (lo != 0 && (lo < 2 || hi > 4)) {
                err << "oracle colors must lie in 2..4\n";
                return 2;
            }
            if (hi >= 4 && budget == 0) {
                err << "color 4 needs an explicit --budget\n";
                return 2;
            }
            return cmd_oracle(cfg, out, err);
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace pjones
