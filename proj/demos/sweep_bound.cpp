// Prints the departure-vs-bound sweep for a = (0,0,1) as CSV.
// Usage: demo_sweep [n_theta]
#include <cstdio>
#include <cstdlib>

#include <cnhv/departure.hpp>

int main(int argc, char** argv)
{
    const int n = argc > 1 ? std::atoi(argv[1]) : 101;
    try {
        const auto rows = cnhv::figure_sweep(cnhv::setting(0, 0, 1), n);
        std::fputs(cnhv::sweep_csv(rows).c_str(), stdout);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
