#include <iostream>

#include "vclab/acceptance.hpp"

int main(int argc, char** argv) {
    vclab::acceptance::Options opts;
    if (argc > 1) opts.vclab_path = argv[1];
    auto results = vclab::acceptance::run_all(opts, std::cout);
    const bool ok = vclab::acceptance::all_pass(results);
    std::cout << (ok ? "ACCEPTANCE: all criteria passed\n"
                     : "ACCEPTANCE: some criteria FAILED\n");
    return ok ? 0 : 1;
}
