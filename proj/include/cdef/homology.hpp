// Finite chain complexes bigraded by (homological degree, weight), exact
// homology per block, induced maps and filtered quasi-isomorphism checks.
#pragma once

#include "cdef/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cdef {

using Bigrade = std::pair<int, int>; // (degree, weight)

// d lowers degree by one and preserves weight; d[i] is the image of basis i.
struct ChainComplex {
	std::vector<std::string> names;
	std::vector<int> degree, weight;
	std::vector<SparseVec> d;

	std::size_t size() const { return degree.size(); }
	// Homogeneity and d^2 = 0; a description of the first problem.
	std::optional<std::string> defect() const;
	std::map<Bigrade, std::vector<int>> blocks() const;
};

std::map<Bigrade, std::size_t> homology_dims(const ChainComplex& c);
// Euler characteristic per weight.
std::map<int, long> euler_characteristic(const ChainComplex& c);

// f[i] is the image of source basis i; f preserves degree and weight.
struct ChainMap {
	const ChainComplex* src = nullptr;
	const ChainComplex* dst = nullptr;
	std::vector<SparseVec> f;
};

// First source basis index with d f != f d, if any.
std::optional<int> chain_map_defect(const ChainMap& m);
// Rank of the induced map on homology per bigrade of the source.
std::map<Bigrade, std::size_t> induced_rank(const ChainMap& m);
bool is_quasi_isomorphism(const ChainMap& m);

// Filtrations adapted to the bases: F^p is spanned by the basis vectors
// whose level is >= p.
struct FilteredQiError : Error {
	using Error::Error;
};

struct FilteredQiLevel {
	int p = 0;
	bool pass = false;
	std::map<Bigrade, std::size_t> src_homology, dst_homology, rank;
	std::string detail;
};

struct FilteredQiReport {
	std::vector<FilteredQiLevel> levels;
	bool pass() const;
	std::optional<int> first_failure() const;
	std::string format() const;
};

// Compares Gr^p of source and target for p = 1..p_max. Throws
// FilteredQiError when d or f lowers a filtration level, naming the basis
// element.
FilteredQiReport filtered_qi_check(const ChainMap& m, const std::vector<int>& src_level,
                                   const std::vector<int>& dst_level, int p_max);

} // namespace cdef
