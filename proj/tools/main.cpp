#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cgp/constants.hpp"
#include "cgp/errors.hpp"
#include "cgp/fixtures.hpp"
#include "cgp/statespace.hpp"
#include "checks.hpp"
#include "evaluate.hpp"

using namespace cgp;
using cgp::cli::Settings;

namespace {

int require_level(const Settings& s) {
    if (!s.level) throw Error(ErrorKind::ParseError, "--level (or CGP_LEVEL) is required");
    if (*s.level < 4 || *s.level % 2 != 0) throw Error(ErrorKind::ParseError, "level must be an even integer >= 4");
    return *s.level;
}

ScalarContext context(const Settings& s) { return ScalarContext(require_level(s), s.precision.value_or(53), s.tol); }

void print(const Json& j) { std::cout << dump_canonical(j) << "\n"; }

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int cmd_cgp(const std::vector<std::string>& files, const Settings& s, const std::string& format) {
    const auto outcomes = cli::evaluate_batch(files, s);
    if (format == "csv") {
        std::cout << "input,status,re,im,abs,ell,sigma,pieces\n";
        for (const auto& o : outcomes) {
            std::cout << o.input << ",";
            if (!o.ok()) {
                std::cout << error_kind_name(o.error_kind) << ",,,,,,\n";
                continue;
            }
            const Json& j = *o.output;
            std::cout << "ok," << csv_number(j["cgp"][0].get<double>()) << "," << csv_number(j["cgp"][1].get<double>())
                      << "," << csv_number(j["abs"].get<double>()) << "," << j["ell"].get<int>() << ","
                      << j["sigma"].get<int>() << "," << j["pieces"].get<int>() << "\n";
        }
    } else {
        Json all = Json::array();
        for (const auto& o : outcomes) {
            if (o.ok()) {
                Json j = Json::object();
                j["input"] = o.input;
                for (auto it = o.output->begin(); it != o.output->end(); ++it) j[it.key()] = it.value();
                all.push_back(j);
            } else {
                all.push_back(cli::error_json(o));
            }
        }
        print(all.size() == 1 ? all[0] : all);
    }
    int code = 0;
    for (const auto& o : outcomes) {
        if (!o.ok()) {
            std::cerr << o.input << ": " << error_kind_name(o.error_kind) << ": " << o.error_message << "\n";
            if (code == 0) code = o.exit_code();
        }
    }
    return code;
}

int cmd_constants(const Settings& s) {
    const ScalarContext ctx = context(s);
    const InvariantConstants k = default_constants(ctx, EvalOptions{s.jobs});
    const Scalar lhs = k.delta_minus * k.delta_plus, rhs = static_cast<double>(k.z_mod_zplus) * k.zeta;
    const double err = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
    Json j = Json::object();
    j["level"] = ctx.r();
    j["constants"] = constants_to_json(k);
    j["identity"] = Json{{"delta_minus_delta_plus", scalar_to_json(lhs)},
                         {"z_mod_zplus_zeta", scalar_to_json(rhs)},
                         {"relative_error", err},
                         {"holds", err <= 1e-8}};
    print(j);
    if (err > 1e-8) {
        std::cerr << "constants identity fails: relative error " << err << "\n";
        return error_exit_code(ErrorKind::NumericInstability);
    }
    return 0;
}

int cmd_moddim(const Settings& s, const std::vector<std::string>& alphas, const std::string& format) {
    const ScalarContext ctx = context(s);
    Json rows = Json::array();
    if (format == "csv") std::cout << "alpha_re,alpha_im,d_re,d_im\n";
    for (const auto& text : alphas) {
        const Scalar a = cli::parse_complex(text);
        const Scalar d = modified_dimension(ctx, a);
        if (format == "csv")
            std::cout << csv_number(a.real()) << "," << csv_number(a.imag()) << "," << csv_number(d.real()) << ","
                      << csv_number(d.imag()) << "\n";
        rows.push_back(Json{{"alpha", scalar_to_json(a)}, {"d", scalar_to_json(d)}});
    }
    if (format != "csv") print(Json{{"level", ctx.r()}, {"moddim", rows}});
    return 0;
}

int cmd_statespace(const Settings& s, int genus, const std::vector<std::string>& degrees) {
    const ScalarContext ctx = context(s);
    if (genus < 1) throw Error(ErrorKind::ParseError, "--genus must be at least 1");
    if (static_cast<int>(degrees.size()) != genus)
        throw Error(ErrorKind::ParseError, "give one degree for genus 1 and m0 followed by genus-1 bubble degrees otherwise");
    std::vector<Degree> gs;
    Json dj = Json::array();
    for (const auto& t : degrees) {
        gs.emplace_back(cli::parse_complex(t));
        dj.push_back(scalar_to_json(gs.back().value()));
    }
    Json j = Json::object();
    j["level"] = ctx.r();
    j["genus"] = genus;
    j["degrees"] = dj;
    if (genus == 1) {
        const auto rep = genus1_report(ctx, gs[0]);
        j["dimension"] = rep.dimension;
        j["index_set_size"] = static_cast<int>(index_set(ctx, gs[0]).size());
        j["hom_sum"] = rep.hom_sum;
    } else {
        TrivalentSurfaceData data{genus, gs[0], std::vector<Degree>(gs.begin() + 1, gs.end())};
        j["dimension"] = genus_n_dim(ctx, data);
        if (genus == 2) j["direct"] = genus2_dim_direct(ctx, gs[0], gs[1]);
    }
    print(j);
    return 0;
}

int cmd_check(const Settings& s) {
    std::vector<int> levels;
    if (s.level)
        levels.push_back(require_level(s));
    else
        levels = {4, 6};
    bool all = true;
    for (int r : levels) {
        for (const auto& line : cli::run_checks(r, s.precision.value_or(53), s.tol, s.jobs)) {
            std::cout << (line.pass ? "PASS" : "FAIL") << "  r=" << r << "  " << line.name << ": " << line.detail << "\n";
            all = all && line.pass;
        }
    }
    std::cout << (all ? "all suites passed" : "some suites failed") << "\n";
    return all ? 0 : 1;
}

int cmd_fixture(const Settings& s, const std::string& name, const std::string& alpha_text, const std::string& g_text) {
    const Scalar a = cli::parse_complex(alpha_text);
    const Scalar g = cli::parse_complex(g_text);
    const std::map<std::string, std::function<SurgeryPresentation()>> table = {
        {"s3-unknot", [&] { return fixtures::s3_unknot(a); }},
        {"s3-blowup-plus", [&] { return fixtures::s3_blowup(a, +1); }},
        {"s3-blowup-minus", [&] { return fixtures::s3_blowup(a, -1); }},
        {"s3-hopf-critical", [&] { return fixtures::s3_hopf_critical(a); }},
        {"s1s2", [&] { return fixtures::s1s2_meridians(a, g); }},
        {"lens51-unknot", [&] { return fixtures::lens51_unknot(g); }},
        {"lens51-hopf", [&] { return fixtures::lens51_hopf(g); }},
        {"lens51-slide", [&] { return fixtures::lens51_slide(g); }},
        {"lens52-hopf", [&] { return fixtures::lens52_hopf(g); }},
        {"trefoil", [&] { return SurgeryPresentation{fixtures::trefoil(a), {}, {}, 0}; }},
        {"figure-eight", [&] { return SurgeryPresentation{fixtures::figure_eight(a), {}, {}, 0}; }},
    };
    const auto it = table.find(name);
    if (it == table.end()) {
        std::string names;
        for (const auto& [k, v] : table) names += " " + k;
        throw Error(ErrorKind::ParseError, "unknown fixture \"" + name + "\"; available:" + names);
    }
    InputFile in;
    in.level = s.level.value_or(4);
    in.precision = s.precision.value_or(53);
    in.presentation = it->second();
    print(input_to_json(in));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CGP invariants of decorated 3-manifolds for unrolled quantum sl2 at even roots of unity"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    int level = 0;
    unsigned precision = 0;
    app.add_option("--level,-r", level, "Level r (even, >= 4); overrides the input file")->envname("CGP_LEVEL");
    app.add_option("--precision", precision, "Working precision in bits for q-scalars")->envname("CGP_PRECISION");
    app.add_option("--tol", s.tol, "Tolerance for equality and typicality tests")->envname("CGP_TOL");
    app.add_flag("--auto-stabilize", s.auto_stabilize, "Stabilize presentations with critical meridians")
        ->envname("CGP_AUTO_STABILIZE");
    app.add_option("--jobs,-j", s.jobs, "Worker threads")->envname("CGP_JOBS")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", s.cache_dir, "Directory for cached results")->envname("CGP_CACHE_DIR");

    std::string format = "json";
    auto* c_cgp = app.add_subcommand("cgp", "Evaluate the invariant of one or more input files");
    std::vector<std::string> files;
    c_cgp->add_option("inputs", files, "Input JSON files")->required();
    c_cgp->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* c_constants = app.add_subcommand("constants", "Print Delta_-, Delta_+, D, eta, delta, zeta");

    auto* c_moddim = app.add_subcommand("moddim", "Modified dimensions d(V_alpha)");
    std::vector<std::string> alphas;
    c_moddim->add_option("alphas", alphas, "Highest weights as re or re,im")->required();
    c_moddim->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* c_state = app.add_subcommand("statespace", "State-space dimension of a generic decorated surface");
    int genus = 1;
    std::vector<std::string> degrees;
    c_state->add_option("--genus,-g", genus, "Genus");
    c_state->add_option("degrees", degrees, "Meridian degrees: g for genus 1, else m0 then one m' per bubble")
        ->required();

    auto* c_check = app.add_subcommand("check", "Run the axiom and property suites");

    auto* c_fixture = app.add_subcommand("fixture", "Print a built-in presentation as an input file");
    std::string fixture_name, alpha_text = "0.37,0.11", g_text = "0.4";
    c_fixture->add_option("name", fixture_name, "Fixture name")->required();
    c_fixture->add_option("--alpha", alpha_text, "Color of the graph component (re or re,im)");
    c_fixture->add_option("--degree", g_text, "Meridian degree (re or re,im)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : error_exit_code(ErrorKind::ParseError);
    }
    if (app.count("--level") || std::getenv("CGP_LEVEL")) s.level = level;
    if (app.count("--precision") || std::getenv("CGP_PRECISION")) s.precision = precision;

    try {
        if (*c_cgp) return cmd_cgp(files, s, format);
        if (*c_constants) return cmd_constants(s);
        if (*c_moddim) return cmd_moddim(s, alphas, format);
        if (*c_state) return cmd_statespace(s, genus, degrees);
        if (*c_check) return cmd_check(s);
        if (*c_fixture) return cmd_fixture(s, fixture_name, alpha_text, g_text);
    } catch (const Error& e) {
        std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return error_exit_code(e.kind());
    }
    return 0;
}
