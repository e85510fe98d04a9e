// Serial vs parallel state-sum timing.  --quick runs a small sweep and checks
// that both paths agree, so it doubles as a smoke test.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "pjones/statesum.hpp"

using namespace pjones;

namespace {

double time_ms(LaurentPoly (*eval)(int, const PretzelSpec&), int color,
               const PretzelSpec& spec, LaurentPoly& out) {
    clear_gamma_cache();
    auto t0 = std::chrono::steady_clock::now();
    out = eval(color, spec);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

LaurentPoly run_parallel(int color, const PretzelSpec& spec) {
    return colored_jones(color, spec, 0);
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    PretzelSpec spec{3, 3, 3};
    int hi = 9;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) {
            quick = true;
        } else if (!std::strcmp(argv[i], "--spec") && i + 1 < argc) {
            spec = PretzelSpec::parse(argv[++i]);
        } else if (!std::strcmp(argv[i], "--max-color") && i + 1 < argc) {
            hi = std::stoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--quick] [--spec a,b,c] [--max-color N]\n",
                         argv[0]);
            return 2;
        }
    }
    if (quick) hi = 5;

    std::printf("state sum for (%s), jobs=%d\n", spec.str().c_str(), default_jobs());
    std::printf("%7s %12s %12s %9s\n", "color", "serial ms", "parallel ms", "speedup");
    bool ok = true;
    for (int color = 2; color <= hi; ++color) {
        LaurentPoly s, p;
        clear_gamma_cache();
        colored_jones_serial(color, spec);  // warm shared memo tables once
        double ts = time_ms(colored_jones_serial, color, spec, s);
        double tp = time_ms(run_parallel, color, spec, p);
        if (!(s == p)) ok = false;
        std::printf("%7d %12.2f %12.2f %8.2fx%s\n", color, ts, tp, ts / tp,
                    s == p ? "" : "  MISMATCH");
    }
    if (!ok) {
        std::printf("serial and parallel outputs differ\n");
        return 1;
    }
    std::printf("outputs agree\n");
    return 0;
}
