#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <cnhv/logic.hpp>
#include <cnhv/logic_io.hpp>

using namespace cnhv::logic;
using Catch::Matchers::WithinAbs;

namespace {

// Independent uniform table over the named binary variables.
finite_joint uniform_product(const std::vector<std::string>& names)
{
    std::vector<variable_spec> vars;
    std::size_t n = 1;
    for (const std::string& s : names) {
        vars.push_back({s, 2});
        n *= 2;
    }
    return finite_joint(std::move(vars), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// Uniform over A,B,C,X,Y,Z with one variable forced to copy another.
finite_joint copy_table(const std::string& target, const std::string& source)
{
    const std::vector<std::string> names{"A", "B", "C", "X", "Y", "Z"};
    std::vector<variable_spec> vars;
    for (const std::string& s : names) vars.push_back({s, 2});
    finite_joint shape(vars, std::vector<double>(64, 1.0 / 64));
    const std::size_t ti = shape.var_index(target);
    const std::size_t si = shape.var_index(source);
    std::vector<double> p(64, 0.0);
    std::vector<int> d;
    int live = 0;
    for (std::size_t f = 0; f < 64; ++f) {
        shape.decode(f, d);
        if (d[ti] == d[si]) ++live;
    }
    for (std::size_t f = 0; f < 64; ++f) {
        shape.decode(f, d);
        if (d[ti] == d[si]) p[f] = 1.0 / live;
    }
    return finite_joint(std::move(vars), std::move(p));
}

} // namespace

TEST_CASE("joint constructor rejects malformed tables")
{
    using spec = std::vector<variable_spec>;
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 2}}, {0.5, -0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 2}}, {0.5, std::numeric_limits<double>::quiet_NaN()}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 2}}, {0.5, 0.6}), std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 2}}, {0.5, 0.25, 0.25}), std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 2}, {"A", 2}}, {0.25, 0.25, 0.25, 0.25}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"Q", 2}}, {0.5, 0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 0}}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(finite_joint(spec{{"A", 7}}, std::vector<double>(7, 1.0 / 7)),
                      unsupported_alphabet_error);
    REQUIRE_THROWS_AS(finite_joint(spec{}, {}), std::invalid_argument);

    const finite_joint J = uniform_product({"A", "B"});
    REQUIRE_THROWS_AS(J.marginal({"X"}), missing_variable_error);
    REQUIRE_THROWS_AS(J.marginal({}), std::invalid_argument);
}

TEST_CASE("marginals preserve order and mass")
{
    // P(A,B,X) with A fair, B biased, X = A XOR B
    std::vector<variable_spec> vars{{"A", 2}, {"B", 2}, {"X", 2}};
    std::vector<double> p(8, 0.0);
    const double pb1 = 0.3;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            p[static_cast<std::size_t>(((a * 2 + b) * 2) + (a ^ b))] = 0.5 * (b ? pb1 : 1 - pb1);
    const finite_joint J(vars, p);

    const finite_joint mb = J.marginal({"B"});
    REQUIRE_THAT(mb.probs()[0], WithinAbs(1 - pb1, 1e-15));
    REQUIRE_THAT(mb.probs()[1], WithinAbs(pb1, 1e-15));

    const finite_joint mxa = J.marginal({"X", "A"});
    REQUIRE(mxa.variables()[0].name == "X");
    REQUIRE(mxa.variables()[1].name == "A");
    // P(X=1, A=0) = P(A=0) P(B=1) under the XOR rule
    REQUIRE_THAT(mxa.probs()[2], WithinAbs(0.5 * pb1, 1e-15));

    std::vector<int> d;
    for (std::size_t f = 0; f < J.size(); ++f) {
        J.decode(f, d);
        REQUIRE(J.encode(d) == f);
    }
}

TEST_CASE("input independence holds on products and fails on leaks")
{
    const finite_joint prod = uniform_product({"A", "B", "C", "X", "Y", "Z"});
    REQUIRE(check_FR(prod).max_violation <= 1e-15);

    // Z copying A: conditioning on Z pins A down
    const predicate_report leak = check_FR(copy_table("Z", "A"));
    REQUIRE_THAT(leak.max_violation, WithinAbs(0.5, 1e-12));
    REQUIRE_FALSE(leak.witness.empty());

    // outcome correlation alone does not touch the inputs
    REQUIRE(check_FR(copy_table("Y", "X")).max_violation <= 1e-15);
}

TEST_CASE("setting freedom sees only the settings and the ontic variable")
{
    const finite_joint prod = uniform_product({"A", "B", "L"});
    REQUIRE(check_FW(prod).max_violation <= 1e-15);
    REQUIRE(check_factorization(prod).max_violation <= 1e-15);

    // correlated settings
    std::vector<variable_spec> vars{{"A", 2}, {"B", 2}, {"L", 2}};
    std::vector<double> p(8, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int l = 0; l < 2; ++l) p[static_cast<std::size_t>((a * 2 + a) * 2 + l)] = 0.25;
    const finite_joint glued(vars, p);
    REQUIRE_THAT(check_FW(glued).max_violation, WithinAbs(0.5, 1e-12));
    REQUIRE(check_factorization(glued).max_violation > 0.1);

    // ontic variable leaking into a setting
    std::vector<double> q(8, 0.0);
    for (int b = 0; b < 2; ++b)
        for (int l = 0; l < 2; ++l) q[static_cast<std::size_t>((l * 2 + b) * 2 + l)] = 0.25;
    REQUIRE_THAT(check_FW(finite_joint(vars, q)).max_violation, WithinAbs(0.5, 1e-12));
}

TEST_CASE("product-form freedom matches the conditional form on generated tables")
{
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const finite_joint J = generate_compliant(seed, {}, {});
        REQUIRE(check_FW(J, "Z").max_violation <= 1e-12);
        REQUIRE(check_factorization(J, "Z").max_violation <= 1e-12);
    }
}

TEST_CASE("no-signalling distinguishes marginal behaviour from signalling")
{
    REQUIRE(check_NS(uniform_product({"A", "B", "X", "Y"})).max_violation <= 1e-15);

    // deterministic local box x = a, y = b
    std::vector<variable_spec> vars{{"A", 2}, {"B", 2}, {"X", 2}, {"Y", 2}};
    std::vector<double> p(16, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            p[static_cast<std::size_t>(((a * 2 + b) * 2 + a) * 2 + b)] = 0.25;
    REQUIRE(check_NS(finite_joint(vars, p)).max_violation <= 1e-15);

    // maximally nonlocal but still non-signalling
    const finite_joint pr = generate_compliant(3, {}, {box_family::pr_box, 0});
    REQUIRE(check_NS(pr).max_violation <= 1e-12);
    REQUIRE(check_ST(pr).max_violation <= 1e-12);

    // x = b is pure signalling
    std::vector<double> q(16, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int y = 0; y < 2; ++y)
                q[static_cast<std::size_t>(((a * 2 + b) * 2 + b) * 2 + y)] = 0.125;
    REQUIRE_THAT(check_NS(finite_joint(vars, q)).max_violation, WithinAbs(0.5, 1e-12));
}

TEST_CASE("staticity fails exactly when the supplementary data leaks")
{
    REQUIRE(check_ST(uniform_product({"A", "B", "C", "X", "Y", "Z"})).max_violation <= 1e-15);
    // target is the pair (C, Z); the free C contributes a factor 1/2
    REQUIRE_THAT(check_ST(copy_table("Z", "X")).max_violation, WithinAbs(0.25, 1e-12));
    REQUIRE(check_FR(copy_table("Z", "X")).max_violation <= 1e-15); // inputs stay free
}

TEST_CASE("derivation steps all hold on compliant tables")
{
    for (std::uint64_t seed : {11ULL, 12ULL}) {
        const finite_joint J = generate_compliant(seed, {3, 2, 2, 3, 2, 4}, {});
        for (const proof_step_report& s : check_proof_steps(J, "Z")) {
            INFO(s.step << ": " << s.witness);
            REQUIRE(s.max_violation <= 1e-9);
        }
    }
    const finite_joint pr = generate_compliant(21, {}, {box_family::pr_box, 0});
    for (const proof_step_report& s : check_proof_steps(pr, "Z"))
        REQUIRE(s.max_violation <= 1e-9);

    // the gate refuses tables that break an antecedent
    REQUIRE_THROWS_AS(check_proof_steps(strictness_counterexample(), "L"), precondition_error);
}

TEST_CASE("generated tables are compliant by construction")
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const box_spec box = (seed % 2) ? box_spec{box_family::pr_box, 0}
                                        : box_spec{box_family::local_mixture, 3};
        const finite_joint J = generate_compliant(seed, {}, box);
        const compliance_report c = check_compliance(J, "Z");
        REQUIRE(c.max_violation <= 1e-12);
        REQUIRE(check_FR(J).max_violation <= 1e-9);
    }

    REQUIRE_THROWS_AS(generate_compliant(1, {3, 2, 2, 2, 2, 2}, {box_family::pr_box, 0}),
                      unsupported_alphabet_error);
    REQUIRE_THROWS_AS(generate_compliant(1, {7, 2, 2, 2, 2, 2}, {}), unsupported_alphabet_error);
    REQUIRE_THROWS_AS(generate_compliant(1, {0, 2, 2, 2, 2, 2}, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(generate_compliant(1, {}, {box_family::local_mixture, 0}),
                      std::invalid_argument);
}

TEST_CASE("generation is a pure function of the seed")
{
    const finite_joint a = generate_compliant(99, {2, 3, 2, 4, 2, 3}, {box_family::local_mixture, 5});
    const finite_joint b = generate_compliant(99, {2, 3, 2, 4, 2, 3}, {box_family::local_mixture, 5});
    REQUIRE(a.probs() == b.probs());
    const finite_joint c = generate_compliant(100, {2, 3, 2, 4, 2, 3}, {box_family::local_mixture, 5});
    REQUIRE(a.probs() != c.probs());
}

TEST_CASE("the fixed counterexample separates the antecedents from the conclusion")
{
    const finite_joint J = strictness_counterexample();
    REQUIRE(check_FW(J, "L").max_violation <= 1e-12);
    REQUIRE(check_NS(J).max_violation <= 1e-12);
    const double st = check_ST(J).max_violation;
    const double fr = check_FR(J).max_violation;
    REQUIRE_THAT(st, WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(fr, WithinAbs(0.5, 1e-12));
    REQUIRE(st >= 0.25);
    REQUIRE(fr >= 0.25);
}

TEST_CASE("converse direction holds with the supplementary data as ontic variable")
{
    const converse_report prod = check_converse(uniform_product({"A", "B", "C", "X", "Y", "Z"}));
    REQUIRE(prod.max_conclusion <= 1e-12);

    for (std::uint64_t seed = 40; seed < 48; ++seed) {
        const box_spec box = (seed % 2) ? box_spec{box_family::pr_box, 0}
                                        : box_spec{box_family::local_mixture, 4};
        const converse_report r = check_converse(generate_compliant(seed, {}, box));
        REQUIRE(r.fr_deviation <= 1e-9);
        REQUIRE(r.fw.max_violation <= 1e-6);
        REQUIRE(r.ns.max_violation <= 1e-6);
        REQUIRE(r.st.max_violation <= 1e-6);
    }

    REQUIRE_THROWS_AS(check_converse(strictness_counterexample(), "L"), precondition_error);
}

TEST_CASE("scan over generated instances finds no violations")
{
    const scan_summary s = theorem_scan(200, 2024);
    REQUIRE(s.instances == 200);
    REQUIRE(s.fr_violations == 0);
    REQUIRE(s.non_compliant == 0);
    REQUIRE(s.max_fr_deviation <= 1e-9);
    REQUIRE(s.max_gate_deviation <= 1e-12);

    const scan_summary again = theorem_scan(200, 2024);
    REQUIRE(again.max_fr_deviation == s.max_fr_deviation);
    REQUIRE(again.worst_witness == s.worst_witness);

    REQUIRE_THROWS_AS(theorem_scan(0, 1), std::invalid_argument);
}

TEST_CASE("the compliance gate catches an injected staticity defect")
{
    const finite_joint J = generate_compliant(5, {}, {});
    const std::size_t xi = J.var_index("X");
    const std::size_t zi = J.var_index("Z");
    std::vector<double> p = J.probs();
    std::vector<int> d;
    double total = 0.0;
    for (std::size_t f = 0; f < p.size(); ++f) {
        J.decode(f, d);
        if (d[xi] == d[zi]) p[f] *= 1.5;
        total += p[f];
    }
    for (double& v : p) v /= total;
    const finite_joint bad(J.variables(), p);
    const compliance_report c = check_compliance(bad, "Z");
    REQUIRE(c.st.max_violation > 1e-9);
    REQUIRE(c.max_violation > 1e-9);
}

TEST_CASE("joints survive a json round trip")
{
    const finite_joint J = generate_compliant(17, {2, 3, 2, 2, 4, 2}, {box_family::local_mixture, 3});
    const finite_joint back = joint_from_json(joint_to_json(J));
    REQUIRE(back.probs() == J.probs());
    REQUIRE(back.variables().size() == J.variables().size());
    for (std::size_t i = 0; i < J.variables().size(); ++i) {
        REQUIRE(back.variables()[i].name == J.variables()[i].name);
        REQUIRE(back.variables()[i].card == J.variables()[i].card);
    }

    const std::string path = "roundtrip_joint.json";
    save_joint(J, path);
    const finite_joint loaded = load_joint(path);
    REQUIRE(loaded.probs() == J.probs());
    std::remove(path.c_str());

    REQUIRE_THROWS_AS(joint_from_json("not json"), std::invalid_argument);
    REQUIRE_THROWS_AS(joint_from_json("[1,2,3]"), std::invalid_argument);
    REQUIRE_THROWS_AS(joint_from_json("{\"variables\":[]}"), std::invalid_argument);
    REQUIRE_THROWS_AS(joint_from_json("{\"variables\":[{\"name\":\"A\"}],\"probs\":[1.0]}"),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(load_joint("no_such_file.json"), std::invalid_argument);
}
