// Generated inputs: gauge-equivalent C-infinity pairs joined by a deliberately
// non-commutative gauge, and random C-infinity structures.
#pragma once

#include "cdef/structures.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cdef {

// Unshifted unital commutative product on a small graded space: e is the
// unit, every other basis vector squares to zero against the rest. For
// coalgebras the same table is read as a coproduct on the negated degrees.
struct BaseAlgebra {
	SpacePtr space;
	MultilinearMap product;
};
BaseAlgebra base_algebra(int dim, Orientation o);

// Degree-d admissible (tuple, single) pairs of arity n in ctx's shifted space.
std::vector<std::pair<Tuple, int>> degree_basis(const ContextPtr& ctx, int arity, int degree);

// y = m, x = exp(h) m for a commutative gauge h, c a stabilizer of m with a
// non-commutative arity-2 part, a = bch(c, -h). Then exp(a) x = y in the
// associative complex although a is not commutative.
struct StabilizerFixture {
	int dim = 0, arity_max = 0;
	Orientation orientation = Orientation::algebra;
	std::uint64_t seed = 0;
	ContextPtr big, small;
	ConvElement x, y, h, c, a;

	Isotopy phi() const { return isotopy_from_gauge(a); }
};

// Throws Error if no fixture was found within a bounded number of attempts.
StabilizerFixture stabilizer_fixture(int dim, int arity_max, Orientation o, std::uint64_t seed);
// The same construction around any C-infinity MC element m (y = m); nullopt
// when no non-commutative stabilizer turns up within `attempts` draws.
std::optional<StabilizerFixture> stabilizer_fixture_for(const ConvElement& m, std::uint64_t seed, int attempts = 64);

// Solves exp(c) m = m arity by arity starting from a given arity-2 part c2
// (which must satisfy d_m c2 = 0 in arity 3). Free variables are set to zero
// except the top arity, which is `top` (may be zero). nullopt if obstructed.
std::optional<ConvElement> extend_stabilizer(const ConvElement& m, const MultilinearMap& c2, const MultilinearMap& top);

// exp(h) m0 plus a random commutative top-arity term, m0 the base algebra.
InftyStructure random_c_infinity(int dim, int arity_max, Orientation o, std::uint64_t seed);

// Deliberately broken inputs for the negative controls.
InftyStructure broken_mc_fixture();          // fails mc_defect in arity 3
ConvElement broken_harrison_fixture();       // a non-commutative arity-2 gauge
MultilinearMap broken_associativity_fixture(SpacePtr* space_out); // non-associative product

} // namespace cdef
