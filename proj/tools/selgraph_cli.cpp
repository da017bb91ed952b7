// Command-line front end: simulate / theory / compare / check-conditions.
// Exit codes: 0 success, 2 configuration error, 3 invariant violation.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "selgraph/selgraph.hpp"

namespace {

selgraph::ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw selgraph::ConfigError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return selgraph::config_from_string(text);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw selgraph::ConfigError("cannot write " + path);
    out << content << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"scale-free graph evolution with selected-vertex degree tracking"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a configured experiment");
    std::string config_path;
    unsigned threads = 0;
    simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
    simulate->add_option("--threads", threads, "worker threads (default: hardware)");

    // theory
    auto* theory = app.add_subcommand("theory", "compute the limit distribution");
    std::string model_name, theory_out, q_mode = "same-as-p", empirical_c;
    double beta = 0.0, lambda = 1.0, alpha = 0.0;
    int m_arity = 2, d_max = 10000;
    bool beta_set = false, lambda_set = false, m_set = false;
    theory->add_option("--model", model_name, "port | indep | multitree")->required();
    theory->add_option("--beta", beta, "port parameter")->each([&](const std::string&) {
        beta_set = true;
    });
    theory->add_option("--lambda", lambda, "indep parameter")->each([&](const std::string&) {
        lambda_set = true;
    });
    theory->add_option("--m-arity", m_arity, "multitree parameter")->each([&](const std::string&) {
        m_set = true;
    });
    theory->add_option("--alpha", alpha, "growth exponent of |S_n|")->required();
    theory->add_option("--dmax", d_max, "truncation degree D (default 10000)");
    theory->add_option("--q-mode", q_mode, "same-as-p | shift1 | empirical");
    theory->add_option("--empirical-c", empirical_c,
                       "plug-in c: run directory or d,value CSV");
    theory->add_option("--out", theory_out, "output theory JSON")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "empirical run vs theory");
    std::string run_dir, theory_path, report_out;
    compare->add_option("--run", run_dir, "run directory")->required();
    compare->add_option("--theory", theory_path, "theory JSON")->required();
    compare->add_option("--out", report_out, "output report JSON")->required();

    // check-conditions
    auto* check = app.add_subcommand("check-conditions", "finite-n condition diagnostics");
    std::string check_run, check_theory, check_out;
    check->add_option("--run", check_run, "run directory")->required();
    check->add_option("--theory", check_theory, "theory JSON (optional)");
    check->add_option("--out", check_out, "output JSON (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        const auto cfg = load_config_file(config_path);
        const auto summary = selgraph::run_experiment(cfg, threads);
        std::cout << "wrote " << summary.replicas.size() << " replica(s) to "
                  << cfg.output_dir << "\n";
        return 0;
    }

    if (theory->parsed()) {
        selgraph::TheorySpec spec;
        if (model_name == "port") {
            spec.model.kind = selgraph::ModelKind::Port;
            if (!beta_set) throw selgraph::ConfigError("port theory requires --beta");
            spec.model.beta = beta;
        } else if (model_name == "indep") {
            spec.model.kind = selgraph::ModelKind::Indep;
            if (!lambda_set) throw selgraph::ConfigError("indep theory requires --lambda");
            spec.model.lambda = lambda;
        } else if (model_name == "multitree") {
            spec.model.kind = selgraph::ModelKind::Multitree;
            if (!m_set) throw selgraph::ConfigError("multitree theory requires --m-arity");
            spec.model.m_arity = m_arity;
        } else {
            throw selgraph::ConfigError("unknown theory model '" + model_name + "'");
        }
        spec.alpha = alpha;
        spec.d_max = d_max;
        spec.q_mode = q_mode;
        spec.empirical_c = empirical_c;
        const auto tf = selgraph::build_theory(spec);
        selgraph::write_theory_file(theory_out, tf);
        std::cout << "gamma = " << tf.gamma << ", gamma* = " << tf.gamma_star
                  << ", condition6_ok = " << (tf.condition6_ok ? "true" : "false") << "\n";
        return 0;
    }

    if (compare->parsed()) {
        const auto tf = selgraph::load_theory_file(theory_path);
        const auto report = selgraph::compare_report(run_dir, tf, theory_path);
        write_text(report_out, selgraph::report_to_json(report));
        std::cout << selgraph::report_table(report);
        return 0;
    }

    if (check->parsed()) {
        selgraph::TheoryFile tf;
        const selgraph::TheoryFile* tf_ptr = nullptr;
        if (!check_theory.empty()) {
            tf = selgraph::load_theory_file(check_theory);
            tf_ptr = &tf;
        }
        const auto rep = selgraph::check_conditions(check_run, tf_ptr);
        const auto json = selgraph::conditions_to_json(rep);
        if (check_out.empty()) std::cout << json << "\n";
        else write_text(check_out, json);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const selgraph::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const selgraph::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
