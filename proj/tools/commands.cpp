#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pfaff/errors.hpp"
#include "pfaff/generalized_pfaffian.hpp"
#include "pfaff/generators.hpp"
#include "pfaff/normal_form.hpp"
#include "pfaff/skew_pfaffian.hpp"

namespace pfaff::cli {

namespace {

// Keys are emitted in insertion order so output follows the documented schema.
using json = nlohmann::ordered_json;

/// Error raised for bad command-line usage (unknown command, missing input).
class UsageError : public Error {
public:
    using Error::Error;
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'", 0, 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

MatrixDocument load_matrix(const std::string& path, const CommandOptions& options) {
    MatrixFormat format = MatrixFormat::MatrixMarket;
    if (options.format) {
        format = *options.format;
    } else if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        format = MatrixFormat::Json;
    }
    return parse_matrix(std::string_view(read_input(path)), format);
}

json pf_result_json(const PfResult& r) {
    json out{{"pfaffian", complex_json(r.value)},
             {"method", std::string(to_string(r.method))},
             {"det", complex_json(r.diagnostics.det_a)},
             {"singular", r.diagnostics.singular}};
    out["cross_check_residual"] =
        r.diagnostics.cross_check_residual ? json(*r.diagnostics.cross_check_residual) : json(nullptr);
    return out;
}

json run_pf(const ComplexMatrix& a, const CommandOptions& options) {
    if (options.method == "normal-form") {
        return pf_result_json(generalized_pfaffian(a, options.tol));
    }
    if (options.method == "relation") {
        return pf_result_json(generalized_pfaffian_via_relation(a, options.tol));
    }
    if (options.method == "polynomial") {
        // The relation route with the matching sum in place of the skew kernel.
        const Complex poly = polynomial_pfaffian(a).value;
        PfResult r = generalized_pfaffian_via_relation(a, options.tol);
        const Complex ratio = r.diagnostics.det_a / r.diagnostics.det_as;
        r.value = std::sqrt(ratio.real()) * poly;
        r.method = PfMethod::Polynomial;
        return pf_result_json(r);
    }
    throw UsageError("unknown --method '" + options.method + "' (expected normal-form, relation or polynomial)");
}

json run_apf(const ComplexMatrix& a) {
    const PfResult r = antisymmetrized_pfaffian(a);
    json out{{"pfaffian", complex_json(r.value)},
             {"method", std::string(to_string(r.method))},
             {"det_as", complex_json(r.diagnostics.det_as)},
             {"singular", r.diagnostics.singular}};
    if (a.rows() % 2 == 1) {
        out["warning"] = "odd dimension: the Pfaffian vanishes";
    }
    return out;
}

json run_wnf(const ComplexMatrix& a, const CommandOptions& options) {
    const NormalForm nf = wigner_normal_form(a, options.tol);
    json blocks = json::array();
    for (const auto& block : nf.blocks) {
        if (const auto* b = std::get_if<OffDiagBlock>(&block)) {
            blocks.push_back({{"type", "offdiag"}, {"value", complex_json(b->s)}, {"multiplicity", b->multiplicity}});
        } else {
            const auto& r = std::get<RealBlock>(block);
            blocks.push_back({{"type", "real1"}, {"value", r.sigma}, {"multiplicity", r.multiplicity}});
        }
    }
    return {{"det_U", complex_json(nf.det_u)},
            {"half_dim", nf.half_dim},
            {"blocks", std::move(blocks)},
            {"reconstruction_residual", nf.reconstruction_residual},
            {"unitarity_residual", nf.unitarity_residual}};
}

json run_check(const ComplexMatrix& a, const CommandOptions& options) {
    const ConjugateNormalCheck c = is_conjugate_normal(a, options.tol);
    return {{"conjugate_normal", c.conjugate_normal}, {"residual", c.residual}};
}

json run_identities(const ComplexMatrix& a, const CommandOptions& options) {
    std::optional<ComplexMatrix> b;
    if (options.partner_b) {
        b = load_matrix(*options.partner_b, options).matrix;
    }
    IdentityOptions io;
    io.seed = resolve_seed(options);
    const IdentityReport report = identity_report(a, b, options.lambda, options.tol, io);
    json checks = json::array();
    for (const auto& c : report.checks) {
        json entry{{"name", c.name}, {"evaluated", c.evaluated}};
        entry["residual"] = c.evaluated ? json(c.residual) : json(nullptr);
        entry["passed"] = c.evaluated ? json(c.passed) : json(nullptr);
        if (!c.note.empty()) {
            entry["note"] = c.note;
        }
        checks.push_back(std::move(entry));
    }
    return {{"pfaffian", complex_json(report.pfaffian)},
            {"half_dim", report.half_dim},
            {"threshold", report.threshold},
            {"all_passed", report.all_passed()},
            {"checks", std::move(checks)}};
}

std::string run_gen(const std::string& path, const CommandOptions& options) {
    SpectrumSpec spec = parse_spectrum_spec(read_input(path));
    if (options.seed || std::getenv(kSeedEnvVar) != nullptr) {
        spec.seed = resolve_seed(options);
    }
    MatrixDocument doc{options.format.value_or(MatrixFormat::Json), random_conjugate_normal(spec), {}};
    doc.metadata["seed"] = std::to_string(spec.seed);
    doc.metadata["generator"] = "random_conjugate_normal";
    return write_matrix(doc);
}

int exit_code_for(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const ParseError&) {
        return kParse;
    } catch (const NonFiniteError&) {
        return kParse;
    } catch (const std::invalid_argument&) {
        return kParse;
    } catch (const NotConjugateNormalError&) {
        return kNotConjugateNormal;
    } catch (const PfaffianUndefinedError&) {
        return kPfaffianUndefined;
    } catch (const SingularMatrixError&) {
        return kPfaffianUndefined;
    } catch (const SpectralConsistencyError&) {
        return kToleranceFailure;
    } catch (const NumericalError&) {
        return kToleranceFailure;
    } catch (const NotNormalError&) {
        return kToleranceFailure;
    } catch (...) {
        return kUsage;
    }
}

std::string message_of(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const std::exception& e) {
        return e.what();
    } catch (...) {
        return "unknown error";
    }
}

struct Outcome {
    json value;
    std::string raw;  // gen output
    int exit_code = kOk;
};

Outcome error_outcome(const std::exception_ptr& error) {
    const int code = exit_code_for(error);
    return {json{{"error", {{"code", code}, {"message", message_of(error)}}}}, {}, code};
}

Outcome run_one(std::string_view command, const std::string& input, const CommandOptions& options) {
    try {
        if (command == "gen") {
            return {json(), run_gen(input, options), kOk};
        }
        const ComplexMatrix a = load_matrix(input, options).matrix;
        if (command == "pf") {
            return {run_pf(a, options)};
        }
        if (command == "apf") {
            return {run_apf(a)};
        }
        if (command == "wnf") {
            return {run_wnf(a, options)};
        }
        if (command == "check") {
            return {run_check(a, options)};
        }
        if (command == "identities") {
            return {run_identities(a, options)};
        }
        throw UsageError("unknown command '" + std::string(command) + "'");
    } catch (...) {
        return error_outcome(std::current_exception());
    }
}

}  // namespace

std::uint64_t resolve_seed(const CommandOptions& options) {
    if (options.seed) {
        return *options.seed;
    }
    if (const char* env = std::getenv(kSeedEnvVar)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            return 0;
        }
    }
    return 0;
}

CommandResult run_command(std::string_view command, const CommandOptions& options) {
    static const std::vector<std::string_view> known{"pf", "apf", "wnf", "check", "identities", "gen"};
    if (std::find(known.begin(), known.end(), command) == known.end()) {
        const json err{{"error", {{"code", int{kUsage}}, {"message", "unknown command '" + std::string(command) + "'"}}}};
        return {err.dump() + "\n", kUsage};
    }
    if (options.inputs.empty()) {
        const json err{{"error", {{"code", int{kUsage}}, {"message", "no input given"}}}};
        return {err.dump() + "\n", kUsage};
    }
    try {
        options.tol.validate();
    } catch (const std::exception& e) {
        const json err{{"error", {{"code", int{kUsage}}, {"message", e.what()}}}};
        return {err.dump() + "\n", kUsage};
    }

    std::vector<std::future<Outcome>> pending;
    pending.reserve(options.inputs.size());
    for (const auto& input : options.inputs) {
        const auto policy = options.inputs.size() > 1 && input != "-" ? std::launch::async : std::launch::deferred;
        pending.push_back(std::async(policy, run_one, command, input, std::cref(options)));
    }
    std::vector<Outcome> outcomes;
    for (auto& f : pending) {
        outcomes.push_back(f.get());
    }

    int exit_code = kOk;
    for (const auto& o : outcomes) {
        if (exit_code == kOk) {
            exit_code = o.exit_code;
        }
    }
    if (outcomes.size() == 1) {
        const Outcome& o = outcomes.front();
        return {o.raw.empty() || o.exit_code != kOk ? o.value.dump() + "\n" : o.raw, o.exit_code};
    }
    json all = json::array();
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const Outcome& o = outcomes[k];
        json result = o.raw.empty() || o.exit_code != kOk ? o.value : json(o.raw);
        all.push_back({{"input", options.inputs[k]}, {"result", std::move(result)}});
    }
    return {all.dump() + "\n", exit_code};
}

}  // namespace pfaff::cli
