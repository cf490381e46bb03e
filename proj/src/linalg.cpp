#include "cdef/linalg.hpp"

namespace cdef {

void ColumnEliminator::reduce_tracked(SparseVec& v, SparseVec& combo) const {
	auto it = v.begin();
	while (it != v.end()) {
		auto pv = pivots_.find(it->first);
		if (pv == pivots_.end()) {
			++it;
			continue;
		}
		const int key = it->first;
		const Rational c = it->second;
		add_to(v, pv->second.row, -c);
		add_to(combo, pv->second.combo, -c);
		it = v.upper_bound(key);
	}
}

std::optional<SparseVec> ColumnEliminator::add_column(const SparseVec& image) {
	SparseVec v = image;
	SparseVec combo;
	combo[static_cast<int>(ncols_)] = 1;
	++ncols_;
	reduce_tracked(v, combo);
	if (v.empty()) return combo;
	const int lead = v.begin()->first;
	const Rational inv = 1 / v.begin()->second;
	for (auto& [k, x] : v) x *= inv;
	for (auto& [k, x] : combo) x *= inv;
	// keep pivot rows mutually reduced so reduce() stays a single sweep
	for (auto& [p, piv] : pivots_) {
		auto f = piv.row.find(lead);
		if (f == piv.row.end()) continue;
		const Rational c = f->second;
		add_to(piv.row, v, -c);
		add_to(piv.combo, combo, -c);
	}
	pivots_.emplace(lead, Pivot{std::move(v), std::move(combo)});
	return std::nullopt;
}

SparseVec ColumnEliminator::reduce(SparseVec v) const {
	SparseVec dummy;
	reduce_tracked(v, dummy);
	return v;
}

bool ColumnEliminator::in_span(const SparseVec& v) const { return reduce(v).empty(); }

std::optional<SparseVec> ColumnEliminator::solve(const SparseVec& target) const {
	SparseVec v = target;
	SparseVec combo;
	reduce_tracked(v, combo);
	if (!v.empty()) return std::nullopt;
	// target - sum combo_j col_j = 0 after reduction sign flip
	for (auto& [k, x] : combo) x = -x;
	return combo;
}

std::size_t rank_of(const std::vector<SparseVec>& vectors) {
	ColumnEliminator e;
	for (auto& v : vectors) e.add_column(v);
	return e.rank();
}

std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& cols) {
	ColumnEliminator e;
	std::vector<SparseVec> out;
	for (auto& c : cols)
		if (auto k = e.add_column(c)) out.push_back(std::move(*k));
	return out;
}

std::vector<SparseVec> span_basis(const std::vector<SparseVec>& vectors) {
	ColumnEliminator e;
	for (auto& v : vectors) e.add_column(v);
	return e.pivot_rows();
}

std::vector<SparseVec> ColumnEliminator::pivot_rows() const {
	std::vector<SparseVec> rows;
	for (auto& [k, p] : pivots_) rows.push_back(p.row);
	return rows;
}

} // namespace cdef
