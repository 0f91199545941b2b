// Exercises the probability-logic engine: a compliance scan plus the
// fixed counterexample showing FR is strictly stronger than FW and NS.
#include <cstdio>

#include <cnhv/logic.hpp>

int main()
{
    using namespace cnhv::logic;

    const scan_summary s = theorem_scan(200, 7);
    std::printf("scan: %llu instances, %llu FR violations, max deviation %.3g\n",
                static_cast<unsigned long long>(s.instances),
                static_cast<unsigned long long>(s.fr_violations), s.max_fr_deviation);

    const finite_joint J = strictness_counterexample();
    std::printf("counterexample: FW=%g NS=%g ST=%g FR=%g\n",
                check_FW(J, "L").max_violation, check_NS(J).max_violation,
                check_ST(J).max_violation, check_FR(J).max_violation);
    return s.fr_violations == 0 ? 0 : 1;
}
