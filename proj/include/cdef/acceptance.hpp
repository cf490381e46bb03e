// The executable acceptance suite: ten criteria, each exact, seeded and
// timed against its own budget.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cdef {

struct CriterionResult {
	int id = 0;
	std::string name;
	bool pass = false;
	double seconds = 0, limit_seconds = 0;
	std::string detail; // what was checked, or the first failure
	std::string line() const; // "PASS 3 convolution-dg-lie (0.41 s, limit 120 s): ..."
};

struct AcceptanceOptions {
	std::uint64_t seed = 0;
	// Directory holding the shipped negative controls; generated in memory when empty.
	std::string fixtures_dir;
	std::vector<int> only; // run these criteria only (all when empty)
};

// Runs the criteria in order, writing each line to `progress` as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress = nullptr);

} // namespace cdef
