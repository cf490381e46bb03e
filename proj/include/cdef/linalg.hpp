// Sparse exact linear algebra over Q: incremental elimination, rank, kernels
// and basic solutions of linear systems.
#pragma once

#include "cdef/exactcore.hpp"

#include <optional>
#include <vector>

namespace cdef {

using SparseVec = std::map<int, Rational>;

// Columns are added one at a time. Each column is reduced against the current
// pivots while remembering which original columns it is a combination of.
class ColumnEliminator {
public:
	// Returns a kernel vector (over column indices) when the new column is
	// dependent on the previous ones, otherwise nullopt.
	std::optional<SparseVec> add_column(const SparseVec& image);

	std::size_t rank() const { return pivots_.size(); }
	std::size_t columns() const { return ncols_; }

	// Some x with sum_j x_j col_j = target, supported on pivot columns
	// (free variables set to zero), or nullopt if target is not in the span.
	std::optional<SparseVec> solve(const SparseVec& target) const;
	bool in_span(const SparseVec& v) const;
	// Remainder of v after reduction by the pivots (zero iff v is in the span).
	SparseVec reduce(SparseVec v) const;
	// Fully reduced pivot rows, ordered by pivot index.
	std::vector<SparseVec> pivot_rows() const;

private:
	struct Pivot {
		SparseVec row;   // leading entry 1 at the pivot index
		SparseVec combo; // row = sum combo_j col_j
	};
	void reduce_tracked(SparseVec& v, SparseVec& combo) const;

	std::map<int, Pivot> pivots_;
	std::size_t ncols_ = 0;
};

std::size_t rank_of(const std::vector<SparseVec>& vectors);

// Basis of {x : sum_j x_j cols[j] = 0}.
std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& cols);

// Reduced echelon basis of the span of the given vectors.
std::vector<SparseVec> span_basis(const std::vector<SparseVec>& vectors);

} // namespace cdef
