// One line per criterion; exit status 1 if any criterion fails.
#include "rwlab/acceptance.hpp"
#include "rwlab/mc.hpp"
#include "rwlab/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    rwlab::AcceptanceOptions opts;
    opts.threads = rwlab::default_threads();
    for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
    bool ok = true;
    rwlab::Json all = rwlab::Json::array();
    rwlab::run_acceptance(opts, [&](const rwlab::CriterionResult& r) {
        std::cout << rwlab::format_result(r) << std::endl;
        ok = ok && r.pass;
        all.push_back({{"id", r.id}, {"pass", r.pass}, {"summary", r.summary}, {"seconds", r.seconds}, {"report", r.report}});
    });
    if (const char* path = std::getenv("RWLAB_ACCEPTANCE_JSON")) std::ofstream(path) << rwlab::dump(all);
    std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << std::endl;
    return ok ? 0 : 1;
}
