// Glue between the deformation side and the Lie side: chain complexes and
// filtered chain maps as JSON, the Chevalley-Eilenberg coalgebra as a strict
// coalgebra-oriented C-infinity structure, and the end-to-end completion demo.
#pragma once

#include "cdef/liealg.hpp"
#include "cdef/rectify.hpp"

namespace cdef {

// {"basis": [[name, degree, weight], ...], "differential": [[from, to, "c"], ...]}
Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

// A chain map with filtration levels on both sides, ready for filtered_qi_check.
struct FilteredChainMap {
	ChainComplex source, target;
	std::vector<SparseVec> f;
	std::vector<int> source_level, target_level;
	int p_max = 3;

	ChainMap map() const { return ChainMap{&source, &target, f}; }
	FilteredQiReport check() const { return filtered_qi_check(map(), source_level, target_level, p_max); }
};
Json filtered_map_to_json(const FilteredChainMap& m);
FilteredChainMap filtered_map_from_json(const Json& j);
// Q g -> g with the F-levels.
FilteredChainMap counit_as_filtered_map(const CompletionModel& m, int p_max);

// Q g -> g for the Heisenberg algebra at weight 4 with the leaf over z
// dropped from the map: a chain map that fails to be a quasi-isomorphism on Gr^2.
FilteredChainMap broken_filtered_qi_fixture();

// A classical binary (co)algebra: {"kind": "algebra", "orientation", "space",
// "product", "differential"?, "commutative"}.
struct BinaryAlgebraDoc {
	SpacePtr space;
	MultilinearMap product;
	std::optional<MultilinearMap> d;
	bool commutative = false;
	std::optional<CheckFailure> check() const;
};
Json algebra_to_json(const BinaryAlgebraDoc& a);
BinaryAlgebraDoc algebra_from_json(const Json& j);

// File names of the shipped negative controls.
inline constexpr const char* kBrokenMcFile = "broken-mc.json";
inline constexpr const char* kBrokenHarrisonFile = "broken-harrison.json";
inline constexpr const char* kBrokenFilteredQiFile = "broken-filtered-qi.json";
inline constexpr const char* kBrokenAssociativityFile = "broken-associativity.json";

// Reduced coproduct as the arity-2 component, d as the base differential.
InftyStructure coalgebra_structure(const WeightCoalgebra& C, int arity_max);

struct CompletionDemo {
	std::size_t coalgebra_dim = 0;
	bool stabilizer_found = false; // the isotopy fed to the driver is not commutative
	bool rectified = false;        // commutative isotopy found and its transport verified
	DescentTrace trace;
	FilteredQiReport qi;
	bool pass() const { return rectified && qi.pass(); }
	Json to_json() const;
};

// C = CE chains of g cut at coalgebra_weight, read as a C-infinity coalgebra
// of arity <= arity_max; a non-commutative isotopy onto C built from a
// stabilizer is rectified to a commutative one; then the completed Lie cobar
// of the CE chains at weight W is compared with g along the counit, or along
// `explicit_map` when given (it must have the counit's source and target).
CompletionDemo theorem_b_demo(const FiniteDgLie& g, int W, int coalgebra_weight, int arity_max, std::uint64_t seed,
                              const FilteredChainMap* explicit_map = nullptr);

} // namespace cdef
