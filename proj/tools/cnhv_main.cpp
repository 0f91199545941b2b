// cnhv: command line front end for the two-qubit hidden-variable laboratory.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure (no root or
// stalled quadrature), 4 theorem violation found by a scan.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <cnhv/cnhv.hpp>

namespace {

cnhv::vec3 parse_triple(const std::string& s)
{
    double x = 0, y = 0, z = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &x, &y, &z, &tail) != 3)
        throw std::invalid_argument("expected a comma-separated triple x,y,z, got: " + s);
    return {x, y, z};
}

nlohmann::json vec_json(const cnhv::vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

int run_oracle(double theta, const std::string& a_text, const std::string& b_text)
{
    const cnhv::two_qubit_state st(theta);
    const cnhv::setting a(parse_triple(a_text));
    const cnhv::setting b(parse_triple(b_text));
    const cnhv::outcome_distribution dist(st, a, b);

    nlohmann::json out;
    out["theta"] = theta;
    out["a"] = vec_json(a);
    out["b"] = vec_json(b);
    out["marginal_x"] = cnhv::marginal_x(st, a);
    out["marginal_y"] = cnhv::marginal_y(st, b);
    out["correlation"] = cnhv::joint_correlation(st, a, b);
    out["distribution"] = {{"p_pp", dist.p(+1, +1)},
                           {"p_pm", dist.p(+1, -1)},
                           {"p_mp", dist.p(-1, +1)},
                           {"p_mm", dist.p(-1, -1)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_model(double theta, const std::string& a_text, const std::string& b_text,
              const std::string& method, std::uint64_t n, std::uint64_t seed, double tol)
{
    const cnhv::two_qubit_state st(theta);
    const cnhv::setting a(parse_triple(a_text));
    const cnhv::setting b(parse_triple(b_text));

    const cnhv::effective_setting eff = cnhv::solve_a_hat(st, a, b, tol);
    const cnhv::thresholds th = cnhv::thresholds_for(st, a, b);
    const cnhv::recovery_report rec = cnhv::verify_quantum_recovery(st, a);

    nlohmann::json out;
    out["theta"] = theta;
    out["a"] = vec_json(a);
    out["b"] = vec_json(b);
    out["a_hat"] = vec_json(eff.a_hat);
    out["alpha"] = eff.alpha;
    out["residual"] = eff.residual;
    out["xi"] = th.xi;
    out["chi"] = th.chi;
    out["method"] = method;
    if (method == "monte_carlo") {
        const cnhv::mc_estimate est = cnhv::model_joint_correlation_mc(eff.a_hat, b, th, n, seed);
        out["correlation_model"] = est.mean;
        out["std_error"] = est.std_error;
        out["n"] = est.n;
        out["seed"] = seed;
    } else {
        out["correlation_model"] = cnhv::model_joint_correlation(eff.a_hat, b, th);
    }
    out["correlation_quantum"] = cnhv::joint_correlation(st, a, b);
    out["recovery"] = {{"integral", rec.integral},
                       {"quantum_marginal", rec.quantum_marginal},
                       {"abs_diff", rec.abs_diff}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_sweep(const std::string& a_text, int n_theta, const std::string& out_path)
{
    const cnhv::setting a(parse_triple(a_text));
    const std::string csv = cnhv::sweep_csv(cnhv::figure_sweep(a, n_theta));
    if (out_path.empty()) {
        std::cout << csv;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + out_path);
    out << csv;
    return 0;
}

int run_logic_scan(std::uint64_t n, std::uint64_t seed)
{
    const cnhv::logic::scan_summary s = cnhv::logic::theorem_scan(n, seed);
    std::printf("instances: %llu\n", static_cast<unsigned long long>(s.instances));
    std::printf("non_compliant: %llu\n", static_cast<unsigned long long>(s.non_compliant));
    std::printf("violations: %llu\n", static_cast<unsigned long long>(s.fr_violations));
    std::printf("max_fr_deviation: %.17g\n", s.max_fr_deviation);
    std::printf("max_gate_deviation: %.17g\n", s.max_gate_deviation);
    if (s.fr_violations > 0) {
        std::printf("worst_witness: %s\n", s.worst_witness.c_str());
        return 4;
    }
    return 0;
}

int run_logic_counterexample()
{
    const cnhv::logic::finite_joint J = cnhv::logic::strictness_counterexample();
    std::printf("FW = %.17g\n", cnhv::logic::check_FW(J, "L").max_violation);
    std::printf("NS = %.17g\n", cnhv::logic::check_NS(J).max_violation);
    std::printf("ST = %.17g\n", cnhv::logic::check_ST(J).max_violation);
    std::printf("FR = %.17g\n", cnhv::logic::check_FR(J).max_violation);
    return 0;
}

int run_logic_check(const std::string& path, std::string lambda)
{
    const cnhv::logic::finite_joint J = cnhv::logic::load_joint(path);
    if (lambda.empty()) lambda = J.has("L") ? "L" : "Z";

    nlohmann::json out;
    out["file"] = path;
    out["lambda"] = lambda;
    auto emit = [&](const cnhv::logic::predicate_report& r) {
        out[r.name] = {{"max_violation", r.max_violation}, {"witness", r.witness}};
    };
    emit(cnhv::logic::check_FR(J));
    emit(cnhv::logic::check_FW(J, lambda));
    emit(cnhv::logic::check_factorization(J, lambda));
    emit(cnhv::logic::check_NS(J));
    emit(cnhv::logic::check_ST(J));
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"numerical laboratory for a crypto-nonlocal two-qubit model"};
    app.require_subcommand(1);

    double theta = 0.0;
    std::string a_text = "0,0,1";
    std::string b_text = "0,0,1";
    std::string method = "quadrature";
    std::string out_path;
    std::string check_file;
    std::string lambda;
    std::uint64_t n_samples = 1000000;
    std::uint64_t n_scan = 1000;
    std::uint64_t seed = 7;
    int n_theta = 101;
    double tol = cnhv::default_solver_tol;

    CLI::App* oracle = app.add_subcommand("oracle", "exact two-qubit expectations");
    oracle->add_option("--theta", theta, "state angle in radians, in [0, pi/2]")->required();
    oracle->add_option("--a", a_text, "first-wing setting x,y,z")->required();
    oracle->add_option("--b", b_text, "second-wing setting x,y,z")->required();

    CLI::App* model = app.add_subcommand("model", "effective setting and model correlation");
    model->add_option("--theta", theta)->required();
    model->add_option("--a", a_text)->required();
    model->add_option("--b", b_text)->required();
    model->add_option("--method", method, "quadrature or monte_carlo")
        ->check(CLI::IsMember({"quadrature", "monte_carlo"}));
    model->add_option("--n", n_samples, "monte carlo sample count");
    model->add_option("--seed", seed, "monte carlo seed");
    model->add_option("--tol", tol, "solver residual tolerance");

    CLI::App* sweep = app.add_subcommand("sweep", "departure and bound over a theta grid, as CSV");
    sweep->add_option("--a", a_text, "setting x,y,z (default 0,0,1)");
    sweep->add_option("--n-theta", n_theta, "grid points over [0, pi/2], at least 2");
    sweep->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* logic = app.add_subcommand("logic", "finite-distribution predicate checks");
    logic->require_subcommand(1);
    CLI::App* scan = logic->add_subcommand("scan", "test the implication on generated tables");
    scan->add_option("--n", n_scan, "number of tables");
    scan->add_option("--seed", seed, "generator seed");
    logic->add_subcommand("counterexample", "fixed table separating the antecedents");
    CLI::App* check = logic->add_subcommand("check", "evaluate all predicates on a joint file");
    check->add_option("file", check_file, "joint distribution JSON")->required();
    check->add_option("--lambda", lambda, "ontic variable name (default L if present, else Z)");

    int rc = 0;
    oracle->callback([&]() { rc = run_oracle(theta, a_text, b_text); });
    model->callback([&]() { rc = run_model(theta, a_text, b_text, method, n_samples, seed, tol); });
    sweep->callback([&]() { rc = run_sweep(a_text, n_theta, out_path); });
    scan->callback([&]() { rc = run_logic_scan(n_scan, seed); });
    logic->get_subcommand("counterexample")->callback([&]() { rc = run_logic_counterexample(); });
    check->callback([&]() { rc = run_logic_check(check_file, lambda); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const cnhv::no_root_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const cnhv::quadrature_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
