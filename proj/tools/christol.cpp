// christol: compile a bivariate polynomial equation over F_q into the
// minimal automaton computing the coefficient sequence of a chosen
// power-series root, with size bounds and an independent verification pass.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "christol/christol.hpp"

namespace {

using namespace christol;

constexpr int kExitParse = 2;
constexpr int kExitInput = 3;     // NotSeparable / DegreeZero
constexpr int kExitRoots = 4;     // root ambiguity or no root
constexpr int kExitInternal = 5;  // broken invariant

struct Job {
    std::string field_spec;
    std::string poly_text;
    std::optional<std::string> root_prefix;
    std::optional<long long> root_index;
    int precision = 4096;
    int l_min = 16;
    long long verify = 4096;
    bool forward = false;
    std::string emit_dot;
    std::string emit_json;
    bool list_roots = false;
};

void load_job_file(const std::string& path, Job& job) {
    std::ifstream in(path);
    require(in.good(), errc::parse_error, "cannot open job file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        raise(errc::parse_error, std::string("bad job JSON: ") + ex.what());
    }
    try {
        if (j.contains("field")) {
            const auto& f = j["field"];
            job.field_spec = "p=" + std::to_string(f.at("p").get<long long>()) +
                             ",e=" + std::to_string(f.value("e", 1LL));
            if (f.contains("modulus")) {
                job.field_spec += " modulus=";
                bool first = true;
                for (const auto& c : f["modulus"]) {
                    if (!first) job.field_spec += ',';
                    job.field_spec += std::to_string(c.get<long long>());
                    first = false;
                }
            }
        }
        if (j.contains("poly")) job.poly_text = j["poly"].get<std::string>();
        if (j.contains("root_prefix")) {
            if (j["root_prefix"].is_array()) {
                std::string s;
                for (const auto& c : j["root_prefix"]) {
                    if (!s.empty()) s += ',';
                    s += c.is_string() ? c.get<std::string>()
                                       : std::to_string(c.get<long long>());
                }
                job.root_prefix = s;
            } else {
                job.root_prefix = j["root_prefix"].get<std::string>();
            }
        }
        if (j.contains("root_index")) job.root_index = j["root_index"].get<long long>();
        if (j.contains("precision")) job.precision = j["precision"].get<int>();
        if (j.contains("lmin")) job.l_min = j["lmin"].get<int>();
        if (j.contains("verify")) job.verify = j["verify"].get<long long>();
        if (j.contains("forward")) job.forward = j["forward"].get<bool>();
        if (j.contains("emit_dot")) job.emit_dot = j["emit_dot"].get<std::string>();
        if (j.contains("emit_json")) job.emit_json = j["emit_json"].get<std::string>();
        if (j.contains("list_roots")) job.list_roots = j["list_roots"].get<bool>();
    } catch (const nlohmann::json::exception& ex) {
        raise(errc::parse_error, std::string("bad job JSON: ") + ex.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    require(out.good(), errc::parse_error, "cannot open output file: " + path);
    out << text;
}

int exit_code_for(const error& e) {
    switch (e.code()) {
    case errc::not_separable:
    case errc::degree_zero:
        return kExitInput;
    case errc::smoothness_check_failed:
    case errc::state_explosion:
    case errc::invariant_breach:
        return kExitInternal;
    default:
        return kExitParse;
    }
}

int run_job(const Job& job, bool list_mode) {
    FieldSpec fs = parse_field_spec(job.field_spec);
    FieldCtx F = make_field(fs.p, fs.e, fs.modulus);
    require(!job.poly_text.empty(), errc::parse_error, "missing --poly");
    BPoly P = parse_bpoly(F, job.poly_text);

    MinimalData md = degree_height(P);
    int r = resultant_order(md);
    auto prefixes = valid_root_prefixes(md);

    if (list_mode || job.list_roots) {
        std::cout << "r=" << r << "\n";
        for (std::size_t i = 0; i < prefixes.size(); ++i)
            std::cout << i << ":(" << fq_list_to_string(F, prefixes[i]) << ")\n";
        return 0;
    }

    std::vector<Fq> prefix;
    if (job.root_prefix && job.root_index)
        raise(errc::parse_error, "give only one of --root-prefix / --root-index");
    if (job.root_prefix) {
        prefix = parse_fq_list(F, *job.root_prefix);
    } else if (job.root_index) {
        if (*job.root_index < 0 ||
            *job.root_index >= static_cast<long long>(prefixes.size())) {
            std::cerr << "root index out of range; valid prefixes at depth r=" << r
                      << ":\n";
            for (std::size_t i = 0; i < prefixes.size(); ++i)
                std::cerr << "  " << i << ":(" << fq_list_to_string(F, prefixes[i])
                          << ")\n";
            return kExitRoots;
        }
        prefix = prefixes[*job.root_index];
    } else if (prefixes.size() == 1) {
        prefix = prefixes[0];
    } else {
        std::cerr << (prefixes.empty()
                          ? "no power-series root to depth r"
                          : "several roots; pick one with --root-prefix or --root-index")
                  << " (r=" << r << ")\n";
        for (std::size_t i = 0; i < prefixes.size(); ++i)
            std::cerr << "  " << i << ":(" << fq_list_to_string(F, prefixes[i]) << ")\n";
        return kExitRoots;
    }

    PipelineOptions opt;
    opt.forward = job.forward;
    opt.verify_horizon = job.verify;
    opt.precision = job.precision;
    opt.l_min = job.l_min;
    PipelineResult res = run_pipeline(P, prefix, opt);

    if (!job.emit_dot.empty()) write_file(job.emit_dot, to_dot(res.min_reverse, F));
    if (!job.emit_json.empty()) write_file(job.emit_json, to_json(res.min_reverse, F));

    std::cout << report_to_json(res.report) << "\n";

    const Report& rep = res.report;
    std::cerr << "comp_reverse=" << rep.comp_reverse << " (raw " << rep.states_raw
              << " states), span_dim=" << rep.span_dim;
    if (rep.comp_forward) std::cerr << ", comp_forward=" << *rep.comp_forward;
    std::cerr << "\nd=" << rep.d << " h=" << rep.h << " r=" << rep.r << " s=" << rep.s
              << " g_P=" << rep.g_P << (rep.smooth ? " (smooth)" : "") << "\n";
    if (rep.verification.horizon > 0)
        std::cerr << "verification: " << (rep.verification.ok ? "ok" : "FAILED")
                  << " over n < " << rep.verification.horizon << ", oracle count "
                  << rep.verification.oracle_count << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebraic power series over F_q -> minimal DFAO compiler"};
    app.require_subcommand(1);

    Job job;
    std::string job_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--field", job.field_spec, "field spec, e.g. p=2,e=1");
        cmd->add_option("--poly", job.poly_text, "bivariate polynomial over the field");
        cmd->add_option("--job", job_path, "JSON job file mirroring the flags");
    };

    CLI::App* compile = app.add_subcommand("compile", "build and verify the automaton");
    add_common(compile);
    std::string prefix_text;
    long long root_index = -1;
    compile->add_option("--root-prefix", prefix_text, "root prefix a0,a1,...");
    compile->add_option("--root-index", root_index, "index into the depth-r prefix list");
    compile->add_option("--precision", job.precision, "oracle expansion length");
    compile->add_option("--lmin", job.l_min, "oracle confidence threshold");
    compile->add_option("--verify", job.verify, "agreement horizon (0 skips verification)");
    compile->add_flag("--forward", job.forward, "also build the forward-reading DFAO");
    compile->add_option("--emit-dot", job.emit_dot, "write the minimized reverse DFAO as DOT");
    compile->add_option("--emit-json", job.emit_json, "write the minimized reverse DFAO as JSON");

    CLI::App* list = app.add_subcommand("list-roots", "list root prefixes at depth r");
    add_common(list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (!job_path.empty()) load_job_file(job_path, job);
        if (!prefix_text.empty()) job.root_prefix = prefix_text;
        if (root_index >= 0) job.root_index = root_index;
        return run_job(job, list->parsed());
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
