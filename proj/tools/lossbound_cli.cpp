// Command-line front end: load instances, compute certified bounds, run the
// soundness fuzzer, and compile bandit specs.  Reports go to stdout,
// diagnostics to stderr.  Exit codes: 0 success (including vacuous bounds),
// 1 soundness violations from `verify`, 2 file/parse errors, 3 validation
// failures (row sums, loss range, transcript cap).
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lossbound/fuzz.hpp"
#include "lossbound/montecarlo.hpp"
#include "lossbound/serialize.hpp"

namespace {

using namespace lossbound;

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

struct CliConfig {
    double tol = kDefaultMeanTol;
    int t_refine = 16;
    std::string format = "json";
    std::string div = "kl";
    std::string ref = "mixture";
    std::string transform;
    double alpha = 0.9;
    double delta = 0.0;
    double t = 0.0;
};

DivergenceSpec parse_divergence(const std::string& name) {
    if (name == "kl") return DivergenceSpec(DivergenceKind::KL);
    if (name == "tv") return DivergenceSpec(DivergenceKind::TotalVariation);
    if (name == "chi2") return DivergenceSpec(DivergenceKind::ChiSquared);
    if (name == "hellinger2") return DivergenceSpec(DivergenceKind::SquaredHellinger);
    throw std::runtime_error("unknown divergence '" + name + "' (kl|tv|chi2|hellinger2)");
}

// "kind:key=value,..." e.g. "hinge:t=2,lmax=10", "indicator:delta=3".
TransformSpec parse_transform(const std::string& text, double default_lmax) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::istringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("transform parameter '" + item + "' is not key=value");
            params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
    }
    auto get = [&](const std::string& key, std::optional<double> fallback = {}) {
        auto it = params.find(key);
        if (it != params.end()) return it->second;
        if (fallback) return *fallback;
        throw std::runtime_error("transform '" + kind + "' needs parameter '" + key + "'");
    };
    if (kind == "indicator") return TransformSpec::quantile_indicator(get("delta"));
    if (kind == "hinge") return TransformSpec::hinge(get("t"), get("lmax", default_lmax));
    if (kind == "clipped") return TransformSpec::clipped_mean(get("tau"));
    if (kind == "laplace") return TransformSpec::laplace(get("lambda"));
    throw std::runtime_error("unknown transform '" + kind + "' (indicator|hinge|clipped|laplace)");
}

FiniteDistribution resolve_reference(const FiniteISDM& instance, const std::string& ref) {
    if (ref == "mixture") return mixture_reference(instance);
    if (ref.rfind("model:", 0) == 0) {
        const std::size_t m = std::stoul(ref.substr(6));
        if (m >= instance.num_models()) throw std::runtime_error("reference model index out of range");
        return instance.obs_laws[m];
    }
    if (ref.rfind("file:", 0) == 0) {
        const FiniteISDM aux = load_instance(ref.substr(5));
        return aux.obs_laws.at(0);
    }
    throw std::runtime_error("unknown reference '" + ref + "' (mixture|model:K|file:PATH)");
}

void print_report(const BoundReport& report, const std::string& format) {
    if (format == "json")
        std::cout << report_to_json(report) << "\n";
    else if (format == "csv")
        std::cout << report_to_csv(report);
    else
        std::cout << report_to_table(report);
}

int run_bound(const std::string& sub, const FiniteISDM& instance, const CliConfig& cfg) {
    const DivergenceSpec spec = parse_divergence(cfg.div);
    const CandidateRefs refs;
    BoundReport report;
    if (sub == "two-sided") {
        const auto transform = parse_transform(cfg.transform, instance.l_max);
        report = two_sided_transform_bound(instance, transform, spec,
                                           resolve_reference(instance, cfg.ref), cfg.tol);
        report.reference = cfg.ref;
    } else if (sub == "one-sided") {
        const auto transform = parse_transform(cfg.transform, instance.l_max);
        report = one_sided_transform_bound(instance, transform, spec, refs, cfg.tol);
    } else if (sub == "quantile") {
        report = quantile_fano_bound(instance, cfg.delta, spec, refs, cfg.tol);
    } else if (sub == "expectation") {
        report = tail_to_expectation(
            quantile_fano_bound(instance, cfg.delta, spec, refs, cfg.tol), cfg.delta);
    } else if (sub == "hinge") {
        report = hinge_lower_bound(instance, cfg.t, spec, resolve_reference(instance, cfg.ref),
                                   cfg.tol);
        report.reference = cfg.ref;
    } else if (sub == "cvar") {
        report = cvar_lower_bound(instance, cfg.alpha, spec, resolve_reference(instance, cfg.ref),
                                  {cfg.t_refine}, cfg.tol);
        report.reference = cfg.ref;
    } else if (sub == "cvar-pinsker") {
        report = cvar_lower_bound_kl_pinsker(instance, cfg.alpha, {cfg.t_refine}, cfg.tol);
    } else {
        throw std::runtime_error("unknown bound subcommand '" + sub + "'");
    }
    print_report(report, cfg.format);
    return 0;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LOSSBOUND_SEED")) return std::stoull(env);
    return 0x10552ecf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified information-theoretic lower bounds on bounded loss functionals"};
    app.require_subcommand(1);
    CliConfig cfg;

    std::string bound_kind, instance_path, bandit_path;
    auto add_bound_opts = [&](CLI::App* cmd) {
        cmd->add_option("kind", bound_kind,
                        "two-sided|one-sided|quantile|expectation|hinge|cvar|cvar-pinsker")
            ->required();
        cmd->add_option("--div", cfg.div, "divergence: kl|tv|chi2|hellinger2");
        cmd->add_option("--ref", cfg.ref, "reference: mixture|model:K|file:PATH");
        cmd->add_option("--transform", cfg.transform, "e.g. hinge:t=2,lmax=10");
        cmd->add_option("--alpha", cfg.alpha, "CVaR level in (0,1)");
        cmd->add_option("--delta", cfg.delta, "loss threshold for quantile bounds");
        cmd->add_option("--t", cfg.t, "hinge threshold");
        cmd->add_option("--tol", cfg.tol, "mean-axis bisection tolerance");
        cmd->add_option("--t-refine", cfg.t_refine, "subdivisions per loss-atom gap");
        cmd->add_option("--format", cfg.format, "json|csv|table");
    };

    CLI::App* bound = app.add_subcommand("bound", "compute a bound on an instance file");
    add_bound_opts(bound);
    bound->add_option("instance", instance_path, "instance JSON file")->required();

    CLI::App* bandit = app.add_subcommand("bandit", "compile a bandit spec, then bound it");
    bandit->add_option("spec", bandit_path, "bandit spec JSON file")->required();
    add_bound_opts(bandit);

    FuzzConfig fuzz;
    fuzz.master_seed = default_seed();
    CLI::App* verify = app.add_subcommand("verify", "run the soundness fuzzer");
    verify->add_option("--iterations", fuzz.iterations, "number of random instances");
    verify->add_option("--seed", fuzz.master_seed, "master seed");
    verify->add_option("--soundness-tol", fuzz.soundness_tol, "comparison tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) {
            FiniteISDM instance;
            try {
                instance = load_instance(instance_path);
            } catch (const std::runtime_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitParse;
            }
            try {
                instance.validate();
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitValidation;
            }
            return run_bound(bound_kind, instance, cfg);
        }
        if (bandit->parsed()) {
            BanditInstanceSpec spec;
            try {
                spec = load_bandit_spec(bandit_path);
            } catch (const std::runtime_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitParse;
            }
            FiniteISDM instance;
            try {
                instance = compile_bandit(spec);
            } catch (const std::length_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitValidation;
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitValidation;
            }
            std::cerr << "transcripts: " << instance.num_outcomes()
                      << "  l_max: " << instance.l_max
                      << "  mutual_information: " << mutual_information(instance) << "\n";
            return run_bound(bound_kind, instance, cfg);
        }
        if (verify->parsed()) {
            const FuzzSummary summary = fuzz_soundness(fuzz);
            std::cout << summary.to_json() << "\n";
            return summary.violations == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
