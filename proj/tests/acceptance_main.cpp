// Acceptance runner for ctest: one PASS/FAIL line per criterion, nonzero
// exit if any criterion fails.
#include "cdef/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
	CLI::App app{"acceptance criteria"};
	cdef::AcceptanceOptions opts;
	app.add_option("--seed", opts.seed, "seed for the randomized criteria");
	app.add_option("--fixtures", opts.fixtures_dir, "directory with the shipped negative controls");
	app.add_option("--only", opts.only, "run only these criteria");
	CLI11_PARSE(app, argc, argv);
	const auto results = cdef::run_acceptance(opts, &std::cout);
	int failed = 0;
	for (auto& r : results) failed += !r.pass;
	std::cout << (failed ? "FAIL" : "PASS") << " " << results.size() - failed << "/" << results.size()
	          << " criteria" << std::endl;
	return failed ? 2 : 0;
}
