#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "asota/errors.hpp"
#include "asota/manifest.hpp"
#include "asota/report.hpp"

namespace {

struct CliArgs {
    std::string command;
    std::string manifest_path;
    std::string out_dir;
    bool strict_formula = false;
    double phi_ai = 0.0; // 0 means: use the manifest value
};

int run_cli(const CliArgs& args) {
    using namespace asota;
    try {
        report::Manifest manifest = report::Manifest::load(args.manifest_path);
        report::RunOptions options;
        options.log = &std::cout;
        if (!args.out_dir.empty()) options.out_dir = args.out_dir;
        if (args.strict_formula) options.strict_formula = true;
        if (args.phi_ai != 0.0) options.phi_ai = args.phi_ai;

        const auto bundle = report::run(report::parse_command(args.command), manifest, options);
        std::cout << "emitted " << bundle.files.size() << " files under " << bundle.root.string()
                  << "\n";
        return 0;
    } catch (const ManifestError& e) {
        std::cerr << "manifest error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"asota: aggregate ML-progress indices, factor inputs, production and scaling fits"};
    app.require_subcommand(1);

    CliArgs args;
    for (const char* name : {"ingest", "index", "inputs", "fit", "scaling", "all"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--manifest", args.manifest_path, "run manifest (JSON)")->required();
        sub->add_option("--out", args.out_dir, "output directory (defaults to the manifest's)");
        sub->add_flag("--strict-formula", args.strict_formula,
                      "rate loss-like metrics against the literal running maximum");
        sub->add_option("--phi-ai", args.phi_ai,
                        "fraction of compute capital applied to the modeled activity, (0,1]");
        sub->callback([&args, name] { args.command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return run_cli(args);
}
