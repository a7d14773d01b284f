#include "covergrowth/covers.hpp"
#include "covergrowth/errors.hpp"
#include "covergrowth/examples.hpp"
#include "covergrowth/growth.hpp"
#include "covergrowth/presentation.hpp"
#include "covergrowth/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace covergrowth;

enum class Format { text, json, csv };

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Inputs are either file paths or built-in examples addressed as @name.
// COVER_GROWTH_EXAMPLES redirects @name lookups to <dir>/<name>.gp.
PresentationFile load_input(const std::string& arg) {
    std::string text;
    if (!arg.empty() && arg[0] == '@') {
        std::string name = arg.substr(1);
        if (const char* dir = std::getenv("COVER_GROWTH_EXAMPLES")) {
            text = slurp(std::string(dir) + "/" + name + ".gp");
        } else if (auto builtin = examples::find(name)) {
            text = std::string(*builtin);
        } else {
            throw std::runtime_error("unknown built-in example '" + name + "'");
        }
    } else {
        text = slurp(arg);
    }
    return parse_presentation(text);
}

template <typename Report>
void emit(const Report& report, Format format) {
    if (format == Format::json)
        std::cout << nlohmann::json(report).dump(2) << "\n";
    else
        std::cout << render_text(report);
}

void emit_tabular(const GrowthReport& report, Format format) {
    if (format == Format::csv)
        std::cout << render_csv(report);
    else
        emit(report, format);
}

void emit_tabular(const KnotReport& report, Format format) {
    if (format == Format::csv)
        std::cout << render_csv(report);
    else
        emit(report, format);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"first Betti numbers of cyclic and abelian covers from group presentations"};
    app.require_subcommand(1);

    bool json = false, csv = false, dump_matrices = false;
    long long seed = 0;
    int max_degree = 0;
    app.add_flag("--json", json, "emit reports as JSON");
    app.add_flag("--csv", csv, "emit tables as CSV (growth and knot only)");
    app.add_flag("--dump-matrices", dump_matrices,
                 "include the boundary matrices in analyze reports");
    app.add_option("--seed", seed, "seed for randomized subroutines (reserved)");
    app.add_option("--max-degree", max_degree,
                   "cap on Laurent polynomial degree spans (default 512)");

    std::string input;
    long long max_n = 8;
    bool verify = false;
    long long cyclic = 0;
    std::string abelian, output, delta;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "abelianization, cover module, torsion exponent, and growth class");
    analyze->add_option("input", input, "presentation file or @builtin")->required();
    analyze->fallthrough();

    CLI::App* growth =
        app.add_subcommand("growth", "table of cover Betti numbers b1(M_n) for n = 1..max-n");
    growth->add_option("input", input, "presentation file or @builtin")->required();
    growth->add_option("--max-n", max_n, "largest cover order (default 8)");
    growth->add_flag("--verify", verify,
                     "recompute each row by rewriting the cover presentation");
    growth->fallthrough();

    CLI::App* classify =
        app.add_subcommand("classify", "linear or bounded growth of the cover Betti numbers");
    classify->add_option("input", input, "presentation file or @builtin")->required();
    classify->fallthrough();

    CLI::App* cover = app.add_subcommand(
        "cover", "rewrite the presentation of a finite abelian cover");
    cover->add_option("input", input, "presentation file or @builtin")->required();
    CLI::Option* cyclic_opt =
        cover->add_option("--cyclic", cyclic, "cyclic quotient of this order");
    CLI::Option* abelian_opt = cover->add_option(
        "--abelian", abelian, "quotient spec, e.g. \"mod 2,4; x=(1,0) y=(0,1)\"");
    cyclic_opt->excludes(abelian_opt);
    cover->add_option("-o,--output", output, "also write the cover presentation to a file");
    cover->fallthrough();

    CLI::App* knot =
        app.add_subcommand("knot", "growth verdict for a knot's Alexander polynomial");
    knot->add_option("--delta", delta, "polynomial in t, e.g. \"t^2-t+1\"")->required();
    knot->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (json && csv) throw std::runtime_error("choose one of --json and --csv");
        Format format = json ? Format::json : csv ? Format::csv : Format::text;
        if (csv && !growth->parsed() && !knot->parsed())
            throw std::runtime_error("--csv is only available for growth and knot tables");
        if (max_degree != 0) set_degree_cap(max_degree);
        (void)seed;

        if (analyze->parsed()) {
            emit(make_analyze_report(load_input(input), dump_matrices), format);
        } else if (growth->parsed()) {
            emit_tabular(make_growth_report(load_input(input), max_n, verify), format);
        } else if (classify->parsed()) {
            emit(make_classify_report(load_input(input)), format);
        } else if (cover->parsed()) {
            if (cyclic_opt->count() == 0 && abelian_opt->count() == 0)
                throw std::runtime_error("cover needs --cyclic or --abelian");
            PresentationFile base = load_input(input);
            FiniteAbelianQuotient quo;
            if (cyclic_opt->count() > 0) {
                if (!base.psi)
                    throw std::runtime_error("cyclic covers need a map line in the input");
                quo = cyclic_quotient(*base.psi, cyclic);
            } else {
                quo = parse_quotient_spec(abelian, base.group);
            }
            PresentationFile rewritten = reidemeister_schreier(base, quo);
            CoverReport report = make_cover_report(rewritten, quo);
            if (!output.empty()) {
                std::ofstream out(output, std::ios::binary);
                if (!out) throw std::runtime_error("cannot write '" + output + "'");
                out << report.presentation;
            }
            emit(report, format);
        } else if (knot->parsed()) {
            emit_tabular(make_knot_report(canonicalize(parse_poly(delta)).canonical), format);
        }
    } catch (const oracle_mismatch_error& e) {
        std::cerr << "error: " << e.what() << "\n" << e.details() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
