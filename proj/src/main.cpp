// parnode: exact engine for parabolic-bundle degenerations on a two-component
// nodal curve. Thin argument-parsing shell over parnode::run.
#include <CLI11.hpp>
#include <iostream>

#include "parnode/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Exact combinatorics of parabolic-bundle degenerations on a "
        "two-component nodal curve"};
    app.require_subcommand(1);

    parnode::RunConfig cfg;
    const char* names[] = {"check",  "certify",  "components", "mu-enum",
                           "dim",    "factorize", "local-model"};
    const char* descriptions[] = {
        "Validate a spec and report the balance identity",
        "Certify semistability over a list of subobject profiles",
        "Enumerate the component window of Euler-characteristic splits",
        "Enumerate the node labels for the spec's (r, k)",
        "Evaluate one dimension query with both oracles",
        "Run the factorization cross-check for a spec",
        "Census of the commuting-pair local model over F_q"};

    for (std::size_t i = 0; i < 7; ++i) {
        const bool is_local_model = std::string(names[i]) == "local-model";
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        CLI::Option* input =
            sub->add_option("--input,-i", cfg.input_path, "Input JSON document");
        if (!is_local_model) input->required();
        sub->add_option("--format,-f", cfg.output_format, "Output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--tolerance", cfg.tolerance,
                        "Integer-rounding tolerance of the trigonometric oracle")
            ->capture_default_str();
        sub->add_option("--workers", cfg.workers, "Worker threads for partitionable work")
            ->capture_default_str();
        if (is_local_model) {
            sub->add_option("--size", cfg.size, "Matrix size n (with --field)");
            sub->add_option("--field", cfg.field, "Field order q (with --size)");
        }
        sub->callback([&cfg, name = std::string(names[i])]() { cfg.subcommand = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return parnode::run(cfg, std::cout, std::cerr);
}
