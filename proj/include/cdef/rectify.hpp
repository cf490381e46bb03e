// Gauge descent: turning an A-infinity gauge between C-infinity structures
// into a C-infinity one, one filtration step at a time.
#pragma once

#include "cdef/structures.hpp"

#include <string>
#include <vector>

namespace cdef {

// A precondition or a per-step invariant failed. `arity` is the first
// offending arity (0 when not applicable).
struct RectifyError : Error {
	RectifyError(const std::string& what, int arity_) : Error(what), arity(arity_) {}
	int arity;
};

struct RetractionSetup {
	ContextPtr big;   // associative flavor
	ContextPtr small; // its commutative counterpart, same ambient algebra

	// Checks the retraction laws (identity on small, module map, filtration)
	// on a few seeded samples before anything relies on them.
	static RetractionSetup make(const ContextPtr& big, const ContextPtr& small, bool verify = true);
	static RetractionSetup for_context(const ContextPtr& ctx, bool verify = true);
	ConvElement retract(const ConvElement& f) const { return pbw_retraction(f, small); }
	RetractionSetup twisted(const ConvElement& y) const;
};

struct DescentStep {
	int n = 0;
	int fd_s = 0, fd_x = 0, fd_da = 0; // filtration degrees of s(a_n), x_n, d a_n
	std::size_t x_terms = 0;           // number of nonzero entries left in x_n
};

struct DescentTrace {
	std::vector<DescentStep> steps;
	int iterations() const { return static_cast<int>(steps.size()); }
	std::string format() const;
};

// x: MC in setup.small, a: degree 0 in setup.big with gauge_act(a, x) = 0.
// Returns g in setup.small with gauge_act(g, x) = 0.
ConvElement gauge_descend(const RetractionSetup& setup, const ConvElement& x, const ConvElement& a,
                          DescentTrace* trace = nullptr);

// gauge_act(a, x) = y in big; returns g in small with gauge_act(g, x) = y.
ConvElement rectify_pair(const RetractionSetup& setup, const ConvElement& x, const ConvElement& y,
                         const ConvElement& a, DescentTrace* trace = nullptr);

// phi: an isotopy m -> m2 with arbitrary components; m, m2 commutative.
// Returns an isotopy m -> m2 whose components all vanish on shuffle products.
Isotopy theorem_a_driver(const InftyStructure& m, const InftyStructure& m2, const Isotopy& phi,
                         DescentTrace* trace = nullptr);

} // namespace cdef
