#include "cdef/homology.hpp"

#include <sstream>

namespace cdef {

namespace {

SparseVec apply_map(const std::vector<SparseVec>& f, const SparseVec& v) {
	SparseVec out;
	for (auto& [i, c] : v) add_to(out, f[i], c);
	return out;
}

std::size_t block_rank(const ChainComplex& c, const std::vector<int>& idx) {
	std::vector<SparseVec> img;
	img.reserve(idx.size());
	for (int i : idx) img.push_back(c.d[i]);
	return rank_of(img);
}

// Kernel of d on a block, as vectors over the global basis.
std::vector<SparseVec> cycles(const ChainComplex& c, const std::vector<int>& idx) {
	std::vector<SparseVec> img;
	for (int i : idx) img.push_back(c.d[i]);
	std::vector<SparseVec> out;
	for (auto& k : kernel_basis(img)) {
		SparseVec z;
		for (auto& [j, q] : k) z[idx[j]] = q;
		out.push_back(std::move(z));
	}
	return out;
}

std::string bigrade_string(const Bigrade& b) {
	return "(degree " + std::to_string(b.first) + ", weight " + std::to_string(b.second) + ")";
}

} // namespace

std::optional<std::string> ChainComplex::defect() const {
	if (names.size() != size() || weight.size() != size() || d.size() != size())
		return std::string("basis arrays have different lengths");
	for (std::size_t i = 0; i < size(); ++i) {
		for (auto& [j, q] : d[i]) {
			if (j < 0 || j >= static_cast<int>(size())) return "d(" + names[i] + ") leaves the basis";
			if (degree[j] != degree[i] - 1 || weight[j] != weight[i])
				return "d(" + names[i] + ") has a term " + names[j] + " of the wrong degree or weight";
		}
		auto dd = apply_map(d, d[i]);
		if (!dd.empty()) return "d^2(" + names[i] + ") != 0";
	}
	return std::nullopt;
}

std::map<Bigrade, std::vector<int>> ChainComplex::blocks() const {
	std::map<Bigrade, std::vector<int>> out;
	for (std::size_t i = 0; i < size(); ++i) out[{degree[i], weight[i]}].push_back(static_cast<int>(i));
	return out;
}

std::map<Bigrade, std::size_t> homology_dims(const ChainComplex& c) {
	const auto bl = c.blocks();
	std::map<Bigrade, std::size_t> rank;
	for (auto& [b, idx] : bl) rank[b] = block_rank(c, idx);
	std::map<Bigrade, std::size_t> out;
	for (auto& [b, idx] : bl) {
		std::size_t incoming = 0;
		if (auto it = rank.find({b.first + 1, b.second}); it != rank.end()) incoming = it->second;
		out[b] = idx.size() - rank[b] - incoming;
	}
	return out;
}

std::map<int, long> euler_characteristic(const ChainComplex& c) {
	std::map<int, long> out;
	for (std::size_t i = 0; i < c.size(); ++i) out[c.weight[i]] += (c.degree[i] % 2 == 0) ? 1 : -1;
	return out;
}

std::optional<int> chain_map_defect(const ChainMap& m) {
	for (std::size_t i = 0; i < m.src->size(); ++i) {
		auto lhs = apply_map(m.dst->d, m.f[i]);
		auto rhs = apply_map(m.f, m.src->d[i]);
		add_to(lhs, rhs, -1);
		if (!lhs.empty()) return static_cast<int>(i);
	}
	return std::nullopt;
}

std::map<Bigrade, std::size_t> induced_rank(const ChainMap& m) {
	const auto dst_blocks = m.dst->blocks();
	std::map<Bigrade, std::size_t> out;
	for (auto& [b, idx] : m.src->blocks()) {
		std::vector<SparseVec> boundaries;
		if (auto it = dst_blocks.find({b.first + 1, b.second}); it != dst_blocks.end())
			for (int j : it->second) boundaries.push_back(m.dst->d[j]);
		const auto rb = rank_of(boundaries);
		for (auto& z : cycles(*m.src, idx)) boundaries.push_back(apply_map(m.f, z));
		out[b] = rank_of(boundaries) - rb;
	}
	return out;
}

bool is_quasi_isomorphism(const ChainMap& m) {
	const auto hs = homology_dims(*m.src), ht = homology_dims(*m.dst);
	const auto r = induced_rank(m);
	for (auto& [b, h] : hs)
		if (h != r.at(b)) return false;
	for (auto& [b, h] : ht) {
		auto it = r.find(b);
		if (h != (it == r.end() ? 0 : it->second)) return false;
	}
	return true;
}

bool FilteredQiReport::pass() const {
	for (auto& l : levels)
		if (!l.pass) return false;
	return true;
}

std::optional<int> FilteredQiReport::first_failure() const {
	for (auto& l : levels)
		if (!l.pass) return l.p;
	return std::nullopt;
}

std::string FilteredQiReport::format() const {
	std::ostringstream os;
	for (auto& l : levels) {
		os << "p = " << l.p << ": " << (l.pass ? "quasi-isomorphism" : "FAIL");
		if (!l.detail.empty()) os << " (" << l.detail << ")";
		os << "\n";
		for (auto& [b, h] : l.src_homology) {
			auto t = l.dst_homology.count(b) ? l.dst_homology.at(b) : 0;
			if (h || t) os << "  " << bigrade_string(b) << ": " << h << " -> " << t << ", rank " << l.rank.at(b) << "\n";
		}
	}
	return os.str();
}

namespace {

// Gr^p as a complex in its own right, with the inclusion indices.
ChainComplex graded_piece(const ChainComplex& c, const std::vector<int>& level, int p, std::vector<int>& keep,
                          std::map<int, int>& pos) {
	keep.clear();
	pos.clear();
	for (std::size_t i = 0; i < c.size(); ++i)
		if (level[i] == p) {
			pos[static_cast<int>(i)] = static_cast<int>(keep.size());
			keep.push_back(static_cast<int>(i));
		}
	ChainComplex g;
	for (int i : keep) {
		g.names.push_back(c.names[i]);
		g.degree.push_back(c.degree[i]);
		g.weight.push_back(c.weight[i]);
		SparseVec v;
		for (auto& [j, q] : c.d[i])
			if (level[j] == p) v[pos[j]] = q;
		g.d.push_back(std::move(v));
	}
	return g;
}

} // namespace

FilteredQiReport filtered_qi_check(const ChainMap& m, const std::vector<int>& src_level,
                                   const std::vector<int>& dst_level, int p_max) {
	auto check_complex = [](const ChainComplex& c, const std::vector<int>& level, const char* side) {
		for (std::size_t i = 0; i < c.size(); ++i)
			for (auto& [j, q] : c.d[i])
				if (level[j] < level[i])
					throw FilteredQiError(std::string(side) + " differential lowers the filtration at " + c.names[i]);
	};
	check_complex(*m.src, src_level, "source");
	check_complex(*m.dst, dst_level, "target");
	for (std::size_t i = 0; i < m.src->size(); ++i)
		for (auto& [j, q] : m.f[i])
			if (dst_level[j] < src_level[i])
				throw FilteredQiError("map lowers the filtration at " + m.src->names[i]);

	FilteredQiReport rep;
	for (int p = 1; p <= p_max; ++p) {
		std::vector<int> ks, kt;
		std::map<int, int> ps, pt;
		const auto gs = graded_piece(*m.src, src_level, p, ks, ps);
		const auto gt = graded_piece(*m.dst, dst_level, p, kt, pt);
		ChainMap gm{&gs, &gt, {}};
		for (int i : ks) {
			SparseVec v;
			for (auto& [j, q] : m.f[i])
				if (dst_level[j] == p) v[pt[j]] = q;
			gm.f.push_back(std::move(v));
		}
		FilteredQiLevel lv;
		lv.p = p;
		lv.src_homology = homology_dims(gs);
		lv.dst_homology = homology_dims(gt);
		lv.rank = induced_rank(gm);
		if (auto bad = chain_map_defect(gm)) {
			lv.detail = "not a chain map at " + gs.names[*bad];
			lv.pass = false;
		} else {
			lv.pass = is_quasi_isomorphism(gm);
			if (!lv.pass) lv.detail = "homology differs";
		}
		rep.levels.push_back(std::move(lv));
	}
	return rep;
}

} // namespace cdef
