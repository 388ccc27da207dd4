#include <iostream>

#include "CLI11.hpp"
#include "folia/runner.hpp"
#include "folia/sceneio.hpp"

namespace {

int run_command(const std::string& scene_arg, const std::string& suites_arg, int samples,
                unsigned seed, double tol_algebraic, bool tol_algebraic_set, double tol_derived,
                bool tol_derived_set, const std::string& out_path,
                const std::vector<std::string>& emits, const std::string& g2_variant,
                const std::string& h_convention) {
    using namespace folia;

    Scene scene;
    std::optional<double> file_tol_a, file_tol_d;
    try {
        if (scene_arg.rfind("builtin:", 0) == 0) {
            scene = builtin_scene(scene_arg.substr(8));
        } else {
            SceneFile sf = load_scene(scene_arg);
            scene = sf.scene;
            file_tol_a = sf.tol_algebraic;
            file_tol_d = sf.tol_derived;
        }
    } catch (const std::exception& err) {
        std::cerr << "folia: scene error: " << err.what() << "\n";
        return 2;
    }

    RunOptions options;
    try {
        std::stringstream ss(suites_arg);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) options.suites.push_back(parse_suite(tok));
        if (options.suites.empty()) throw std::invalid_argument("no suite requested");
        if (g2_variant == "printed")
            options.g2_variant = G2Variant::Printed;
        else if (g2_variant == "symmetric")
            options.g2_variant = G2Variant::Symmetric;
        else
            throw std::invalid_argument("--g2-variant must be printed or symmetric");
        if (h_convention == "E")
            options.h_convention = HConvention::E;
        else if (h_convention == "Delta")
            options.h_convention = HConvention::Delta;
        else
            throw std::invalid_argument("--h-convention must be E or Delta");
    } catch (const std::exception& err) {
        std::cerr << "folia: " << err.what() << "\n";
        return 2;
    }
    options.samples = samples;
    options.seed = seed;
    // precedence: explicit flag > scene-file override > default
    options.tol_algebraic = tol_algebraic_set ? tol_algebraic : file_tol_a.value_or(tol_algebraic);
    options.tol_derived = tol_derived_set ? tol_derived : file_tol_d.value_or(tol_derived);

    RunResult result = run(scene, options);
    try {
        if (!out_path.empty()) write_text_file(out_path, dump_stable(result.report));
        for (const std::string& e : emits) {
            auto colon = e.find(':');
            std::string kind = colon == std::string::npos ? e : e.substr(0, colon);
            std::string path = colon == std::string::npos ? "" : e.substr(colon + 1);
            if (kind == "csv") {
                if (path.empty()) throw std::invalid_argument("--emit csv:PATH needs a path");
                write_text_file(path, csv_samples(result.rows));
            } else if (kind == "summary") {
                if (path.empty() || path == "-")
                    std::cout << summary_text(result.report);
                else
                    write_text_file(path, summary_text(result.report));
            } else {
                throw std::invalid_argument("unknown --emit format '" + kind +
                                            "' (expected csv:PATH or summary[:PATH])");
            }
        }
    } catch (const std::exception& err) {
        std::cerr << "folia: output error: " << err.what() << "\n";
        return 2;
    }

    if (result.exit_code != 0 && result.report.contains("error"))
        std::cerr << "folia: " << result.report["error"].get<std::string>() << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"folia: numerical verification of foliation and curvature identities"};
    app.require_subcommand(1);

    auto* runc = app.add_subcommand("run", "evaluate suites on a scene");
    std::string scene_arg, out_path, g2_variant = "symmetric", h_convention = "E";
    std::string suites_arg = "calculus,kahler,foliation,qch";
    int samples = 200;
    unsigned seed = 42;
    double tol_algebraic = 1e-8, tol_derived = 1e-6;
    std::vector<std::string> emits;
    runc->add_option("--scene", scene_arg, "scene file path or builtin:NAME")->required();
    runc->add_option("--suites", suites_arg, "comma-separated subset of calculus,kahler,foliation,qch,theorem9");
    runc->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    runc->add_option("--seed", seed, "sample plan seed");
    auto* tol_a_opt = runc->add_option("--tol-algebraic", tol_algebraic, "tolerance for jet-exact identities");
    auto* tol_d_opt = runc->add_option("--tol-derived", tol_derived, "tolerance for solved/fitted quantities");
    runc->add_option("--out", out_path, "JSON report path");
    runc->add_option("--emit", emits, "extra outputs: csv:PATH or summary[:PATH]");
    runc->add_option("--g2-variant", g2_variant, "printed|symmetric");
    runc->add_option("--h-convention", h_convention, "E|Delta");

    auto* list = app.add_subcommand("list-scenes", "print builtin scene names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list->parsed()) {
        for (const auto& n : folia::builtin_names()) std::cout << n << "\n";
        return 0;
    }
    return run_command(scene_arg, suites_arg, samples, seed, tol_algebraic, tol_a_opt->count() > 0,
                       tol_derived, tol_d_opt->count() > 0, out_path, emits, g2_variant,
                       h_convention);
}
