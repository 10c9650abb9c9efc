#include <string_view>
#include <iostream>

#include "pht/verify/suite.hpp"

int main(int argc, char** argv) {
    const bool quiet = argc > 1 && std::string_view(argv[1]) == "--quiet";
    const auto results = pht::verify::run_suite();
    pht::verify::print_report(std::cout, results, !quiet);
    for (const auto& r : results) {
        if (!r.passed()) return 1;
    }
    return 0;
}
