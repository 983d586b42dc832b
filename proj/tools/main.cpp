#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

struct Flags {
    pfaff::cli::CommandOptions options;
    std::string format;
    std::uint64_t seed = 0;
    std::vector<double> lambda;
    std::string output;
};

void add_common(CLI::App& sub, Flags& flags) {
    sub.add_option("inputs", flags.options.inputs, "Input files ('-' for stdin)")->required();
    sub.add_option("--format", flags.format, "Input/output format")->check(CLI::IsMember({"mm", "json"}));
    sub.add_option("--tol-eig", flags.options.tol.eig_residual, "Relative eigen-residual and normality threshold");
    sub.add_option("--tol-cluster", flags.options.tol.cluster,
                   "Relative clustering distance for eigenvalues of A A*, scaled by 1 + ||A||^2");
    sub.add_option("--seed", flags.seed, "Seed (default: $PFAFF_SEED or 0)");
    sub.add_option("--output", flags.output, "Write the result to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pfaff: Wigner normal form and generalized Pfaffians of complex matrices"};
    app.require_subcommand(1);
    Flags flags;

    struct Spec {
        const char* name;
        const char* help;
    };
    const std::vector<Spec> commands{
        {"pf", "Generalized Pfaffian of a conjugate-normal matrix"},
        {"apf", "Pfaffian of the antisymmetrized matrix (A - A^T)/2"},
        {"wnf", "Wigner normal form A = U Sigma U^T"},
        {"check", "Conjugate-normality test"},
        {"identities", "Evaluate the Pfaffian identity battery"},
        {"gen", "Generate a conjugate-normal matrix from a spectrum spec JSON"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(*sub, flags);
        if (std::string(c.name) == "pf") {
            sub->add_option("--method", flags.options.method, "Route to the Pfaffian")
                ->check(CLI::IsMember({"normal-form", "relation", "polynomial"}));
        }
        if (std::string(c.name) == "identities") {
            sub->add_option("--partner-b", flags.options.partner_b, "Symmetric matrix B for the tensor identity");
            sub->add_option("--lambda", flags.lambda, "Complex scale factor as 're im'")->expected(2);
        }
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    if (!flags.format.empty()) {
        flags.options.format = pfaff::matrix_format_from_string(flags.format);
    }
    if (chosen->count("--seed") > 0) {
        flags.options.seed = flags.seed;
    }
    if (flags.lambda.size() == 2) {
        flags.options.lambda = {flags.lambda[0], flags.lambda[1]};
    }

    const pfaff::cli::CommandResult result = pfaff::cli::run_command(chosen->get_name(), flags.options);
    if (!flags.output.empty() && result.exit_code == pfaff::cli::kOk) {
        std::ofstream out(flags.output, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << flags.output << "'\n";
            return pfaff::cli::kUsage;
        }
        out << result.text;
    } else {
        std::cout << result.text;
    }
    return result.exit_code;
}
