// Finite-distribution engine for the operational conditions on a
// bipartite experiment with settings A, B, outcomes X, Y, preparation
// C, supplementary information Z and ontic variable L:
//
//   FR    P(A|B,C,Y,Z) = P(A),  P(B|A,C,X,Z) = P(B),  P(C|A,B,X,Y) = P(C)
//   FW    P(A|B,l) = P(A),      P(B|A,l) = P(B)
//   NS    P(X|A,B) = P(X|A),    P(Y|A,B) = P(Y|B)
//   ST    P(C,Z|A,B,X,Y) = P(C,Z)
//
// All checks are exhaustive table computations; violations are maxima
// of absolute probability differences, so they live in [0, 1].
// Conditioning events of probability zero are skipped: the conditions
// constrain defined conditionals only.
//
// FW and NS and ST together imply FR; the implication is strict (see
// strictness_counterexample), and with Z = l the converse holds on the
// generated family.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnhv/errors.hpp"
#include "cnhv/rng.hpp"

namespace cnhv::logic {

inline constexpr double table_sum_tol = 1e-12;
inline constexpr int max_cardinality = 6;
inline constexpr double compliance_gate_tol = 1e-9;
inline constexpr double fr_violation_tol = 1e-9;

/// "L" is the ASCII spelling of the ontic variable's name.
inline bool allowed_variable_name(const std::string& name)
{
    static const char* names[] = {"A", "B", "C", "X", "Y", "Z", "L"};
    for (const char* n : names)
        if (name == n) return true;
    return false;
}

struct variable_spec {
    std::string name;
    int card = 0;
};

/// Immutable joint distribution over named finite variables, stored
/// row-major with the last variable fastest.
class finite_joint {
public:
    finite_joint(std::vector<variable_spec> vars, std::vector<double> probs)
        : vars_(std::move(vars)), p_(std::move(probs))
    {
        if (vars_.empty()) throw std::invalid_argument("joint needs at least one variable");
        std::size_t n = 1;
        for (const variable_spec& v : vars_) {
            if (!allowed_variable_name(v.name))
                throw std::invalid_argument("unknown variable name: " + v.name);
            if (v.card < 1)
                throw std::invalid_argument("cardinality must be at least 1: " + v.name);
            if (v.card > max_cardinality)
                throw unsupported_alphabet_error("cardinality of " + v.name + " exceeds " +
                                                 std::to_string(max_cardinality));
            n *= static_cast<std::size_t>(v.card);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i].name == vars_[j].name)
                    throw std::invalid_argument("duplicate variable name: " + vars_[i].name);
        if (p_.size() != n) throw std::invalid_argument("table size does not match the product alphabet");
        double sum = 0.0;
        for (double v : p_) {
            if (!(v >= 0.0)) throw std::invalid_argument("probabilities must be nonnegative");
            sum += v;
        }
        if (std::abs(sum - 1.0) > table_sum_tol)
            throw std::invalid_argument("probabilities must sum to 1");
    }

    const std::vector<variable_spec>& variables() const { return vars_; }
    const std::vector<double>& probs() const { return p_; }
    std::size_t n_vars() const { return vars_.size(); }
    std::size_t size() const { return p_.size(); }
    int card(std::size_t var) const { return vars_[var].card; }

    bool has(const std::string& name) const
    {
        for (const variable_spec& v : vars_)
            if (v.name == name) return true;
        return false;
    }

    std::size_t var_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        throw missing_variable_error("variable not in the joint: " + name);
    }

    void decode(std::size_t flat, std::vector<int>& digits) const
    {
        digits.resize(vars_.size());
        for (std::size_t i = vars_.size(); i-- > 0;) {
            digits[i] = static_cast<int>(flat % static_cast<std::size_t>(vars_[i].card));
            flat /= static_cast<std::size_t>(vars_[i].card);
        }
    }

    std::size_t encode(const std::vector<int>& digits) const
    {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            flat = flat * static_cast<std::size_t>(vars_[i].card) + static_cast<std::size_t>(digits[i]);
        return flat;
    }

    /// Marginal over the named variables, in the order given.
    finite_joint marginal(const std::vector<std::string>& names) const
    {
        if (names.empty()) throw std::invalid_argument("marginal needs at least one variable");
        std::vector<std::size_t> idx;
        std::vector<variable_spec> mv;
        std::size_t n = 1;
        for (const std::string& name : names) {
            idx.push_back(var_index(name));
            mv.push_back(vars_[idx.back()]);
            n *= static_cast<std::size_t>(mv.back().card);
        }
        std::vector<double> mp(n, 0.0);
        std::vector<int> digits;
        for (std::size_t f = 0; f < p_.size(); ++f) {
            decode(f, digits);
            std::size_t k = 0;
            for (std::size_t j = 0; j < idx.size(); ++j)
                k = k * static_cast<std::size_t>(mv[j].card) + static_cast<std::size_t>(digits[idx[j]]);
            mp[k] += p_[f];
        }
        return finite_joint(std::move(mv), std::move(mp));
    }

private:
    std::vector<variable_spec> vars_;
    std::vector<double> p_;
};

struct predicate_report {
    std::string name; // FR, FW, NS, ST, FACT
    double max_violation = 0.0;
    std::string witness;
};

namespace detail {

struct sub_table {
    std::vector<std::size_t> vars; // parent variable indices, table order
    std::vector<int> cards;
    std::vector<double> p;
};

inline sub_table marginalize(const finite_joint& J, const std::vector<std::size_t>& vars)
{
    sub_table t;
    t.vars = vars;
    std::size_t n = 1;
    for (std::size_t v : vars) {
        t.cards.push_back(J.card(v));
        n *= static_cast<std::size_t>(J.card(v));
    }
    t.p.assign(n, 0.0);
    std::vector<int> digits;
    for (std::size_t f = 0; f < J.size(); ++f) {
        J.decode(f, digits);
        std::size_t k = 0;
        for (std::size_t j = 0; j < vars.size(); ++j)
            k = k * static_cast<std::size_t>(t.cards[j]) + static_cast<std::size_t>(digits[vars[j]]);
        t.p[k] += J.probs()[f];
    }
    return t;
}

inline std::string assignment_text(const finite_joint& J, const std::vector<std::size_t>& vars,
                                   const std::vector<int>& digits, std::size_t lo, std::size_t hi)
{
    std::string out;
    for (std::size_t i = lo; i < hi; ++i) {
        if (!out.empty()) out += ", ";
        out += J.variables()[vars[i]].name + "=" + std::to_string(digits[i]);
    }
    return out;
}

// Max over assignments of |P(t | g, d) - P(t | g)|; with empty g the
// right-hand side is the plain marginal. Assignments whose conditioning
// event has probability zero are skipped.
inline predicate_report conditional_deviation(const finite_joint& J, const std::string& name,
                                              const std::vector<std::string>& target,
                                              const std::vector<std::string>& given,
                                              const std::vector<std::string>& dropped)
{
    std::vector<std::size_t> tv, gv, dv;
    for (const std::string& s : target) tv.push_back(J.var_index(s));
    for (const std::string& s : given) gv.push_back(J.var_index(s));
    for (const std::string& s : dropped) dv.push_back(J.var_index(s));

    std::vector<std::size_t> tgd = tv, tg = tv, gd = gv;
    tgd.insert(tgd.end(), gv.begin(), gv.end());
    tgd.insert(tgd.end(), dv.begin(), dv.end());
    tg.insert(tg.end(), gv.begin(), gv.end());
    gd.insert(gd.end(), dv.begin(), dv.end());

    const sub_table m_all = marginalize(J, tgd);
    const sub_table m_tg = marginalize(J, tg);
    const sub_table m_gd = marginalize(J, gd);
    const sub_table m_g = marginalize(J, gv); // single cell 1 when empty

    predicate_report rep{name, 0.0, ""};
    const std::size_t nt = tv.size(), ng = gv.size(), nd = dv.size();
    std::vector<int> digits(nt + ng + nd, 0);
    for (std::size_t f = 0; f < m_all.p.size(); ++f) {
        std::size_t rem = f;
        for (std::size_t i = digits.size(); i-- > 0;) {
            digits[i] = static_cast<int>(rem % static_cast<std::size_t>(m_all.cards[i]));
            rem /= static_cast<std::size_t>(m_all.cards[i]);
        }
        std::size_t k_gd = 0, k_tg = 0, k_g = 0;
        for (std::size_t i = 0; i < ng + nd; ++i)
            k_gd = k_gd * static_cast<std::size_t>(m_all.cards[nt + i]) +
                   static_cast<std::size_t>(digits[nt + i]);
        for (std::size_t i = 0; i < nt + ng; ++i)
            k_tg = k_tg * static_cast<std::size_t>(m_all.cards[i]) + static_cast<std::size_t>(digits[i]);
        for (std::size_t i = 0; i < ng; ++i)
            k_g = k_g * static_cast<std::size_t>(m_all.cards[nt + i]) +
                  static_cast<std::size_t>(digits[nt + i]);

        const double p_gd = m_gd.p[k_gd];
        if (p_gd <= 0.0) continue;
        const double lhs = m_all.p[f] / p_gd;
        const double rhs = m_tg.p[k_tg] / m_g.p[k_g];
        const double dev = std::abs(lhs - rhs);
        if (dev > rep.max_violation || rep.witness.empty()) {
            rep.max_violation = std::max(rep.max_violation, dev);
            std::string lt = assignment_text(J, tgd, digits, 0, nt);
            std::string ct = assignment_text(J, tgd, digits, nt, nt + ng + nd);
            std::string gt = assignment_text(J, tgd, digits, nt, nt + ng);
            rep.witness = "P(" + lt + " | " + ct + ") - P(" + lt + (gt.empty() ? "" : " | " + gt) + ")";
        }
    }
    return rep;
}

inline predicate_report worst(const std::string& name, std::initializer_list<predicate_report> reports)
{
    predicate_report best{name, -1.0, ""};
    for (const predicate_report& r : reports)
        if (r.max_violation > best.max_violation) best = {name, r.max_violation, r.witness};
    return best;
}

} // namespace detail

/// Free-choice condition on all three inputs A, B, C.
inline predicate_report check_FR(const finite_joint& J)
{
    return detail::worst("FR", {
                                   detail::conditional_deviation(J, "FR", {"A"}, {}, {"B", "C", "Y", "Z"}),
                                   detail::conditional_deviation(J, "FR", {"B"}, {}, {"A", "C", "X", "Z"}),
                                   detail::conditional_deviation(J, "FR", {"C"}, {}, {"A", "B", "X", "Y"}),
                               });
}

/// Free-will condition: settings independent of each other and of the
/// ontic variable.
inline predicate_report check_FW(const finite_joint& J, const std::string& lambda_name = "L")
{
    return detail::worst("FW", {
                                   detail::conditional_deviation(J, "FW", {"A"}, {}, {"B", lambda_name}),
                                   detail::conditional_deviation(J, "FW", {"B"}, {}, {"A", lambda_name}),
                               });
}

/// FW restated as a product form: P(A,B,l) = P(A) P(B) P(l).
inline predicate_report check_factorization(const finite_joint& J, const std::string& lambda_name = "L")
{
    const std::vector<std::size_t> abl{J.var_index("A"), J.var_index("B"), J.var_index(lambda_name)};
    const detail::sub_table m = detail::marginalize(J, abl);
    const detail::sub_table ma = detail::marginalize(J, {abl[0]});
    const detail::sub_table mb = detail::marginalize(J, {abl[1]});
    const detail::sub_table ml = detail::marginalize(J, {abl[2]});

    predicate_report rep{"FACT", 0.0, ""};
    std::vector<int> digits(3, 0);
    for (std::size_t f = 0; f < m.p.size(); ++f) {
        std::size_t rem = f;
        for (std::size_t i = 3; i-- > 0;) {
            digits[i] = static_cast<int>(rem % static_cast<std::size_t>(m.cards[i]));
            rem /= static_cast<std::size_t>(m.cards[i]);
        }
        const double dev = std::abs(m.p[f] - ma.p[static_cast<std::size_t>(digits[0])] *
                                                 mb.p[static_cast<std::size_t>(digits[1])] *
                                                 ml.p[static_cast<std::size_t>(digits[2])]);
        if (dev > rep.max_violation || rep.witness.empty()) {
            rep.max_violation = std::max(rep.max_violation, dev);
            const std::string at = detail::assignment_text(J, abl, digits, 0, 3);
            rep.witness = "P(" + at + ") - product of marginals";
        }
    }
    return rep;
}

/// No-signalling: each outcome's statistics ignore the remote setting.
inline predicate_report check_NS(const finite_joint& J)
{
    return detail::worst("NS", {
                                   detail::conditional_deviation(J, "NS", {"X"}, {"A"}, {"B"}),
                                   detail::conditional_deviation(J, "NS", {"Y"}, {"B"}, {"A"}),
                               });
}

/// Staticity: the supplementary pair (C, Z) is independent of settings
/// and outcomes.
inline predicate_report check_ST(const finite_joint& J)
{
    return detail::conditional_deviation(J, "ST", {"C", "Z"}, {}, {"A", "B", "X", "Y"});
}

struct compliance_report {
    predicate_report fw, ns, st;
    double max_violation = 0.0;
};

inline compliance_report check_compliance(const finite_joint& J, const std::string& lambda_name = "Z")
{
    compliance_report rep{check_FW(J, lambda_name), check_NS(J), check_ST(J), 0.0};
    rep.max_violation =
        std::max({rep.fw.max_violation, rep.ns.max_violation, rep.st.max_violation});
    return rep;
}

struct proof_step_report {
    std::string step;
    double max_violation = 0.0;
    std::string witness;
};

/// Replays the derivation of FR's first condition from FW, NS and ST on
/// the table: the chain rule over (C, Z), the staticity marginals, the
/// factorization of P(A,B,Y), and the conclusion P(A|B,Y,C,Z) = P(A).
/// Throws precondition_error unless FW, NS, ST all hold within 1e-9.
inline std::vector<proof_step_report> check_proof_steps(const finite_joint& J,
                                                        const std::string& lambda_name = "Z")
{
    const compliance_report gate = check_compliance(J, lambda_name);
    for (const predicate_report* r : {&gate.fw, &gate.ns, &gate.st})
        if (r->max_violation > compliance_gate_tol)
            throw precondition_error("antecedent " + r->name + " deviates by " +
                                     std::to_string(r->max_violation));

    const std::vector<std::size_t> v{J.var_index("A"), J.var_index("B"), J.var_index("Y"),
                                     J.var_index("C"), J.var_index("Z")};
    const detail::sub_table m_abycz = detail::marginalize(J, v);
    const detail::sub_table m_bycz = detail::marginalize(J, {v[1], v[2], v[3], v[4]});
    const detail::sub_table m_cz = detail::marginalize(J, {v[3], v[4]});
    const detail::sub_table m_aby = detail::marginalize(J, {v[0], v[1], v[2]});
    const detail::sub_table m_by = detail::marginalize(J, {v[1], v[2]});
    const detail::sub_table m_a = detail::marginalize(J, {v[0]});
    const detail::sub_table m_b = detail::marginalize(J, {v[1]});

    std::vector<proof_step_report> steps{
        {"chain_rule", 0.0, ""},        // P(A,B,Y|C,Z) = P(A|B,Y,C,Z) P(B,Y|C,Z)
        {"staticity_marginal", 0.0, ""}, // P(A,B,Y|C,Z) = P(A,B,Y)
        {"by_marginal", 0.0, ""},        // P(B,Y|C,Z) = P(B,Y)
        {"factor_y", 0.0, ""},           // P(A,B,Y) = P(A) P(B) P(Y|B)
        {"conclusion", 0.0, ""},         // P(A|B,Y,C,Z) = P(A)
    };
    auto note = [](proof_step_report& s, double dev, const std::string& w) {
        if (dev > s.max_violation || s.witness.empty()) {
            s.max_violation = std::max(s.max_violation, dev);
            s.witness = w;
        }
    };

    std::vector<int> d(5, 0);
    for (std::size_t f = 0; f < m_abycz.p.size(); ++f) {
        std::size_t rem = f;
        for (std::size_t i = 5; i-- > 0;) {
            d[i] = static_cast<int>(rem % static_cast<std::size_t>(m_abycz.cards[i]));
            rem /= static_cast<std::size_t>(m_abycz.cards[i]);
        }
        const std::size_t a = static_cast<std::size_t>(d[0]);
        const std::size_t k_by = static_cast<std::size_t>(d[1]) * m_abycz.cards[2] +
                                 static_cast<std::size_t>(d[2]);
        const std::size_t k_cz = static_cast<std::size_t>(d[3]) * m_abycz.cards[4] +
                                 static_cast<std::size_t>(d[4]);
        const std::size_t k_bycz = k_by * m_cz.p.size() + k_cz;
        const std::size_t k_aby = a * m_by.p.size() + k_by;

        const double p_full = m_abycz.p[f];
        const double p_bycz = m_bycz.p[k_bycz];
        const double p_cz = m_cz.p[k_cz];
        const double p_aby = m_aby.p[k_aby];
        const double p_by = m_by.p[k_by];
        const std::string w = detail::assignment_text(J, v, d, 0, 5);

        if (p_cz > 0.0) {
            if (p_bycz > 0.0)
                note(steps[0], std::abs(p_full / p_cz - (p_full / p_bycz) * (p_bycz / p_cz)), w);
            note(steps[1], std::abs(p_full / p_cz - p_aby), w);
            note(steps[2], std::abs(p_bycz / p_cz - p_by), w);
        }
        if (p_bycz > 0.0) note(steps[4], std::abs(p_full / p_bycz - m_a.p[a]), w);
    }

    std::vector<int> d3(3, 0);
    for (std::size_t f = 0; f < m_aby.p.size(); ++f) {
        std::size_t rem = f;
        for (std::size_t i = 3; i-- > 0;) {
            d3[i] = static_cast<int>(rem % static_cast<std::size_t>(m_aby.cards[i]));
            rem /= static_cast<std::size_t>(m_aby.cards[i]);
        }
        const std::size_t a = static_cast<std::size_t>(d3[0]);
        const std::size_t b = static_cast<std::size_t>(d3[1]);
        const std::size_t k_by = b * m_aby.cards[2] + static_cast<std::size_t>(d3[2]);
        if (m_b.p[b] <= 0.0) continue;
        const double rhs = m_a.p[a] * m_b.p[b] * (m_by.p[k_by] / m_b.p[b]);
        note(steps[3], std::abs(m_aby.p[f] - rhs),
             detail::assignment_text(J, {v[0], v[1], v[2]}, d3, 0, 3));
    }
    return steps;
}

struct alphabet_sizes {
    int a = 2, b = 2, c = 2, x = 2, y = 2, z = 2;
};

enum class box_family { local_mixture, pr_box };

struct box_spec {
    box_family family = box_family::local_mixture;
    int mixture_size = 4;
};

namespace detail {

inline std::vector<double> dirichlet_uniform(counter_rng& rng, int m)
{
    std::vector<double> w(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (double& v : w) {
        v = -std::log(1.0 - rng.next_double());
        sum += v;
    }
    if (sum <= 0.0) {
        std::fill(w.begin(), w.end(), 1.0 / m);
        return w;
    }
    for (double& v : w) v /= sum;
    return w;
}

inline int uniform_int(counter_rng& rng, int n)
{
    return std::min(n - 1, static_cast<int>(rng.next_double() * n));
}

} // namespace detail

/// Random joint of the form P(a) P(b) P(c) P(z) P(x,y|a,b) with a
/// non-signalling conditional box, so FW (with l = Z), NS and ST hold
/// by construction and FR follows.
inline finite_joint generate_compliant(std::uint64_t seed, const alphabet_sizes& n,
                                       const box_spec& box)
{
    for (int card : {n.a, n.b, n.c, n.x, n.y, n.z}) {
        if (card < 1) throw std::invalid_argument("cardinality must be at least 1");
        if (card > max_cardinality)
            throw unsupported_alphabet_error("cardinality exceeds " +
                                             std::to_string(max_cardinality));
    }
    if (box.family == box_family::pr_box && (n.a != 2 || n.b != 2 || n.x != 2 || n.y != 2))
        throw unsupported_alphabet_error("the PR box needs binary A, B, X, Y");
    if (box.family == box_family::local_mixture && box.mixture_size < 1)
        throw std::invalid_argument("mixture size must be at least 1");

    counter_rng rng(seed, 0);
    const std::vector<double> pa = detail::dirichlet_uniform(rng, n.a);
    const std::vector<double> pb = detail::dirichlet_uniform(rng, n.b);
    const std::vector<double> pc = detail::dirichlet_uniform(rng, n.c);
    const std::vector<double> pz = detail::dirichlet_uniform(rng, n.z);

    // cond[((a*nb + b)*nx + x)*ny + y] = P(x,y|a,b)
    std::vector<double> cond(static_cast<std::size_t>(n.a) * n.b * n.x * n.y, 0.0);
    auto cond_at = [&](int a, int b, int x, int y) -> double& {
        return cond[((static_cast<std::size_t>(a) * n.b + b) * n.x + x) * n.y + y];
    };
    if (box.family == box_family::pr_box) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int x = 0; x < 2; ++x)
                    cond_at(a, b, x, (x ^ (a & b))) = 0.5;
    } else {
        const std::vector<double> w = detail::dirichlet_uniform(rng, box.mixture_size);
        std::vector<int> fa(static_cast<std::size_t>(n.a));
        std::vector<int> gb(static_cast<std::size_t>(n.b));
        for (int j = 0; j < box.mixture_size; ++j) {
            for (int& v : fa) v = detail::uniform_int(rng, n.x);
            for (int& v : gb) v = detail::uniform_int(rng, n.y);
            for (int a = 0; a < n.a; ++a)
                for (int b = 0; b < n.b; ++b)
                    cond_at(a, b, fa[static_cast<std::size_t>(a)], gb[static_cast<std::size_t>(b)]) +=
                        w[static_cast<std::size_t>(j)];
        }
    }

    std::vector<variable_spec> vars{{"A", n.a}, {"B", n.b}, {"C", n.c},
                                    {"X", n.x}, {"Y", n.y}, {"Z", n.z}};
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(n.a) * n.b * n.c * n.x * n.y * n.z);
    double total = 0.0;
    for (int a = 0; a < n.a; ++a)
        for (int b = 0; b < n.b; ++b)
            for (int c = 0; c < n.c; ++c)
                for (int x = 0; x < n.x; ++x)
                    for (int y = 0; y < n.y; ++y)
                        for (int z = 0; z < n.z; ++z) {
                            const double v = pa[static_cast<std::size_t>(a)] *
                                             pb[static_cast<std::size_t>(b)] *
                                             pc[static_cast<std::size_t>(c)] * cond_at(a, b, x, y) *
                                             pz[static_cast<std::size_t>(z)];
                            p.push_back(v);
                            total += v;
                        }
    for (double& v : p) v /= total;
    return finite_joint(std::move(vars), std::move(p));
}

/// Fixed table showing FR is strictly stronger than FW and NS: settings
/// and the ontic coin are free (FW = NS = 0) yet the supplementary Z
/// copies an outcome, breaking ST and FR by 0.5 each.
inline finite_joint strictness_counterexample()
{
    std::vector<variable_spec> vars{{"A", 2}, {"B", 2}, {"C", 1}, {"X", 2},
                                    {"Y", 2}, {"Z", 2}, {"L", 2}};
    std::vector<double> p(64, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int l = 0; l < 2; ++l) {
                // digits (a, b, c=0, x=a, y=b, z=a, l), last fastest
                const std::size_t k = ((((static_cast<std::size_t>(a) * 2 + b) * 2 + a) * 2 + b) * 2 + a) * 2 + l;
                p[k] = 1.0 / 8;
            }
    return finite_joint(std::move(vars), std::move(p));
}

struct converse_report {
    double fr_deviation = 0.0;
    predicate_report fw, ns, st;
    double max_conclusion = 0.0;
};

/// Converse direction with the supplementary information playing the
/// ontic role (l = Z): an FR-satisfying table must satisfy FW, NS, ST.
/// Throws precondition_error if FR itself deviates beyond fr_tol.
inline converse_report check_converse(const finite_joint& J, const std::string& lambda_name = "Z",
                                      double fr_tol = fr_violation_tol)
{
    const predicate_report fr = check_FR(J);
    if (fr.max_violation > fr_tol)
        throw precondition_error("FR deviates by " + std::to_string(fr.max_violation) +
                                 "; the converse applies to FR-satisfying tables");
    const compliance_report c = check_compliance(J, lambda_name);
    return {fr.max_violation, c.fw, c.ns, c.st, c.max_violation};
}

struct scan_summary {
    std::uint64_t instances = 0;
    std::uint64_t fr_violations = 0;
    std::uint64_t non_compliant = 0;
    double max_fr_deviation = 0.0;
    double max_gate_deviation = 0.0;
    std::string worst_witness;
};

namespace detail {

/// Instance i of the scan family: alternating box types over mixed
/// alphabet sizes in {2,3,4}.
inline finite_joint scan_instance(std::uint64_t seed, std::uint64_t i)
{
    counter_rng cfg(seed, ~i);
    auto pick = [&](int lo, int hi) { return lo + uniform_int(cfg, hi - lo + 1); };
    alphabet_sizes n;
    box_spec box;
    if (i % 2 == 1) {
        box.family = box_family::pr_box;
        n.a = n.b = n.x = n.y = 2;
    } else {
        box.family = box_family::local_mixture;
        box.mixture_size = pick(2, 6);
        n.a = pick(2, 4);
        n.b = pick(2, 4);
        n.x = pick(2, 4);
        n.y = pick(2, 4);
    }
    n.c = pick(2, 4);
    n.z = pick(2, 4);
    const std::uint64_t sub_seed = cnhv::detail::mix64(seed ^ cnhv::detail::mix64((i + 1) * 0x9e3779b97f4a7c15ULL));
    return generate_compliant(sub_seed, n, box);
}

} // namespace detail

/// Generates n compliant tables, gates each on FW/NS/ST before testing
/// FR. A correct generator and a true implication give zero of both
/// failure counts.
inline scan_summary theorem_scan(std::uint64_t n, std::uint64_t seed)
{
    if (n < 1) throw std::invalid_argument("scan needs at least one instance");
    scan_summary s;
    s.instances = n;
    for (std::uint64_t i = 0; i < n; ++i) {
        const finite_joint J = detail::scan_instance(seed, i);
        const compliance_report gate = check_compliance(J, "Z");
        s.max_gate_deviation = std::max(s.max_gate_deviation, gate.max_violation);
        if (gate.max_violation > compliance_gate_tol) {
            ++s.non_compliant;
            continue;
        }
        const predicate_report fr = check_FR(J);
        if (fr.max_violation > s.max_fr_deviation) {
            s.max_fr_deviation = fr.max_violation;
            s.worst_witness = fr.witness;
        }
        if (fr.max_violation > fr_violation_tol) ++s.fr_violations;
    }
    return s;
}

} // namespace cnhv::logic
