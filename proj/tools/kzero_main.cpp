#include <iostream>

#include <CLI11.hpp>

#include "kzero/cli.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Kloosterman zero tester: Sylow p-subgroups of associated elliptic curves"};
    app.require_subcommand(1);

    kzero::cli::RunConfig cfg;

    auto *setup = app.add_subcommand("setup", "write a deterministic field context file");
    setup->add_option("-p", cfg.p, "characteristic (2 or 3)")->required();
    setup->add_option("-n", cfg.n, "extension degree")->required();
    setup->add_option("-o", cfg.output_path, "output path (default stdout)");

    auto *test = app.add_subcommand("test", "decide whether one element is a Kloosterman zero");
    test->add_option("--ctx", cfg.ctx_path, "context file from `setup`");
    test->add_option("-p", cfg.p, "characteristic (2 or 3)");
    test->add_option("-n", cfg.n, "extension degree");
    test->add_option("-a", cfg.element, "element (hex for p=2, trits for p=3)")->required();

    auto *search = app.add_subcommand("search", "find a Kloosterman zero by random trials");
    search->add_option("--ctx", cfg.ctx_path, "context file from `setup`");
    search->add_option("-p", cfg.p, "characteristic (2 or 3)");
    search->add_option("-n", cfg.n, "extension degree");
    search->add_option("--seed", cfg.seed, "PRNG seed");
    search->add_option("--workers", cfg.workers, "parallel workers")->check(CLI::PositiveNumber);
    search->add_option("--max-trials", cfg.max_trials, "total trial budget");

    auto *table = app.add_subcommand("table", "divisibility counts for n = 1..n_max");
    table->add_option("-p", cfg.p, "characteristic (2 or 3)")->required();
    table->add_option("--n-max", cfg.n_max, "largest degree")->required();
    table->add_option("--format", cfg.format, "csv or json");
    table->add_option("--workers", cfg.workers, "parallel workers")->check(CLI::PositiveNumber);
    table->add_option("-o", cfg.output_path, "output path (default stdout)");

    auto *bench = app.add_subcommand("bench", "time the Sylow test against the baselines");
    bench->add_option("--ctx", cfg.ctx_path, "context file from `setup`");
    bench->add_option("-p", cfg.p, "characteristic (2 or 3)");
    bench->add_option("-n", cfg.n, "extension degree");
    bench->add_option("--samples", cfg.samples, "number of random elements");
    bench->add_option("--seed", cfg.seed, "PRNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    for (auto *sub : {setup, test, search, table, bench}) {
        if (sub->parsed()) {
            cfg.command = sub->get_name();
            break;
        }
    }
    return kzero::cli::run(cfg, std::cout, std::cerr);
}
