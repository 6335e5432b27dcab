#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Adaptive multiresolution solver for 1D conservation laws"};
    app.require_subcommand(1);
    mrs::cli::Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "experiment config (JSON)")->required();
        sub->add_option("--out", opt.out, "output directory");
        sub->add_flag("--quiet", opt.quiet, "suppress progress output");
    };
    CLI::App* run = app.add_subcommand("run", "run one solver path and write metrics");
    add_common(run);
    run->add_flag("--uniform", opt.uniform, "use the uniform fine-grid path");
    CLI::App* cmp = app.add_subcommand("compare", "run the adaptive and uniform paths side by side");
    add_common(cmp);
    CLI::App* tr = app.add_subcommand("transform", "encode the initial data and report details");
    add_common(tr);
    tr->add_option("--input", opt.input, "CSV of samples to transform instead of the initial data");
    app.add_subcommand("list-models", "list the available model problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mrs::cli::kConfigError;
    }
    if (app.got_subcommand("list-models")) return mrs::cli::list_models(std::cout);
    if (run->parsed()) return mrs::cli::run(opt, std::cout, std::cerr);
    if (cmp->parsed()) return mrs::cli::compare(opt, std::cout, std::cerr);
    return mrs::cli::transform(opt, std::cout, std::cerr);
}
