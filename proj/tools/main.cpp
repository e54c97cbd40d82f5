#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "drot/errors.hpp"

using namespace drot;
using namespace drot::cli;

int main(int argc, char** argv)
{
    CLI::App app{"drot: exact experiments with the lattice map F(x,y) = (floor(lambda x) - y, x)"};
    app.require_subcommand(1);

    std::string lambda_text, seed_text, window_text, value_text, format_text;
    RunConfig cfg;
    i64 e = -1, e_max = -1;

    using Command = std::function<int(const RunConfig&, std::ostream&)>;
    std::map<CLI::App*, Command> commands;
    auto sub = [&](const char* name, const char* help, Command fn) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--lambda", lambda_text, "lambda as p/q or 2^-k");
        s->add_option("--seed", seed_text, "seed point x,y");
        s->add_option("--e", e, "critical number (polygon class)");
        s->add_option("--e-max", e_max, "largest critical number in a range");
        s->add_option("--window", window_text, "seed range lo,hi");
        s->add_option("--cap", cfg.cap, "iteration cap")->check(CLI::NonNegativeNumber);
        s->add_option("--out", cfg.out, "output file (default stdout)");
        s->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        commands[s] = std::move(fn);
        return s;
    };
    sub("orbit", "full orbit of one seed", cmd_orbit);
    sub("period-scan", "normalised periods along the diagonal", cmd_period_scan);
    sub("polygon", "vertices of a level set", cmd_polygon)->add_option("--value", value_text, "level a, as p/q");
    sub("vertex-list", "vertex lists of polygon classes", cmd_vertex_list);
    sub("critical-numbers", "sums of two squares up to --e-max", cmd_critical_numbers);
    sub("density", "densities of symmetric minimal orbits", cmd_density);
    sub("verify", "bundled checks, exit 0 iff all pass", cmd_verify)
        ->add_flag("--corrupt", cfg.corrupt, "perturb Phi at one point (self-test, must fail)");

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    try {
        if (!lambda_text.empty()) cfg.lambda = Lambda::parse(lambda_text);
        if (!seed_text.empty()) {
            const auto [x, y] = parse_pair(seed_text);
            cfg.seed = LatticePoint{x, y};
        }
        if (!window_text.empty()) cfg.window = parse_pair(window_text);
        if (!value_text.empty()) cfg.value = Rational::parse(value_text);
        if (e >= 0) cfg.e = e;
        if (e_max >= 0) cfg.e_max = e_max;
        if (format_text == "json" || (format_text.empty() && chosen->get_name() == "verify")) cfg.format = Format::Json;

        if (cfg.out.empty()) return commands.at(chosen)(cfg, std::cout);
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open " << cfg.out << '\n';
            return 2;
        }
        return commands.at(chosen)(cfg, file);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
}
