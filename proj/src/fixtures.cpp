#include "cdef/fixtures.hpp"

#include "cdef/linalg.hpp"

#include <random>

namespace cdef {

namespace {

// Coordinates for maps of one arity: (tuple, single) pairs numbered on demand.
class EntryIndex {
public:
	int operator()(const Tuple& t, int j) {
		auto [it, fresh] = index_.try_emplace({t, j}, static_cast<int>(index_.size()));
		return it->second;
	}
	SparseVec encode(const MultilinearMap& f) {
		SparseVec v;
		for (auto& [t, c] : f.entries())
			for (auto& [j, q] : c) v[(*this)(t, j)] = q;
		return v;
	}

private:
	std::map<std::pair<Tuple, int>, int> index_;
};

// c -> arity n+1 part of d_m c, c of arity n.
MultilinearMap linearized(const ConvElement& m, const MultilinearMap& c) {
	ConvElement e(m.context(), 0);
	e.add_component(c);
	return (differential(e) + bracket(m, e)).component(c.arity() + 1);
}

MultilinearMap from_coords(const ContextPtr& ctx, const std::vector<std::pair<Tuple, int>>& basis, int arity,
                           const SparseVec& coords) {
	MultilinearMap f(ctx->shifted, arity, 0, ctx->orientation);
	for (auto& [i, q] : coords) f.add(basis[i].first, basis[i].second, q);
	return f;
}

} // namespace

BaseAlgebra base_algebra(int dim, Orientation o) {
	if (dim < 2 || dim > 3) throw Error("base algebra: dim must be 2 or 3");
	const int odd = o == Orientation::algebra ? -1 : 1;
	std::vector<std::pair<std::string, int>> basis{{"e", 0}, {"f", odd}};
	if (dim == 3) basis.push_back({"g", odd});
	auto V = make_space(basis);
	MultilinearMap m(V, 2, 0, o);
	m.add({0, 0}, 0, 1);
	for (int i = 1; i < dim; ++i) {
		m.add({0, i}, i, 1);
		m.add({i, 0}, i, 1);
	}
	return {V, m};
}

std::vector<std::pair<Tuple, int>> degree_basis(const ContextPtr& ctx, int arity, int degree) {
	std::vector<std::pair<Tuple, int>> out;
	MultilinearMap probe(ctx->shifted, arity, degree, ctx->orientation);
	const int d = static_cast<int>(ctx->shifted->dim());
	for (auto& t : MultilinearMap::all_tuples(d, arity))
		for (int j = 0; j < d; ++j)
			if (probe.admissible(t, j)) out.emplace_back(t, j);
	return out;
}

std::optional<ConvElement> extend_stabilizer(const ConvElement& m, const MultilinearMap& c2, const MultilinearMap& top) {
	const auto& ctx = m.context();
	const int N = ctx->arity_max;
	ConvElement c(ctx, 0);
	c.add_component(c2);
	if (!linearized(m, c2).is_zero()) return std::nullopt;
	for (int k = 3; k < N; ++k) {
		const auto F = gauge_act(c, m) - m;
		if (!F.arity_range(1, k).is_zero()) return std::nullopt;
		const auto basis = degree_basis(ctx, k, 0);
		EntryIndex idx;
		ColumnEliminator elim;
		for (auto& [t, j] : basis) {
			MultilinearMap e(ctx->shifted, k, 0, ctx->orientation);
			e.add(t, j, 1);
			elim.add_column(idx.encode(linearized(m, e)));
		}
		// exp(c) m - m gains -d_m c_k in arity k+1
		auto sol = elim.solve(idx.encode(F.component(k + 1)));
		if (!sol) return std::nullopt;
		c.add_component(from_coords(ctx, basis, k, *sol));
	}
	if (N > 2) c.add_component(top);
	if (!(gauge_act(c, m) == m)) return std::nullopt;
	return c;
}

std::optional<StabilizerFixture> stabilizer_fixture_for(const ConvElement& m, std::uint64_t seed, int attempts) {
	auto small = m.context();
	const int N = small->arity_max;
	if (N < 3) throw Error("stabilizer fixture: arity_max must be at least 3");
	if (small->flavor != Flavor::C) throw Error("stabilizer fixture: the structure must live in a C context");
	const Orientation o = small->orientation;
	auto big = small->with_flavor(Flavor::A);
	const auto mb = m.with_context(big);

	// closed arity-2 gauges d_m c2 = 0
	const auto basis2 = degree_basis(big, 2, 0);
	std::vector<SparseVec> cols;
	EntryIndex idx;
	for (auto& [t, j] : basis2) {
		MultilinearMap e(big->shifted, 2, 0, o);
		e.add(t, j, 1);
		cols.push_back(idx.encode(linearized(mb, e)));
	}
	const auto closed = kernel_basis(cols);

	std::mt19937_64 rng(seed);
	for (int attempt = 0; attempt < attempts; ++attempt) {
		SparseVec combo;
		for (auto& v : closed)
			if (rng() & 1) add_to(combo, v, random_rational(rng));
		const auto c2 = from_coords(big, basis2, 2, combo);
		if (!harrison_witness(c2)) continue;
		const auto top = random_element(big, 0, rng, N, N, 0.3).component(N);
		auto c = extend_stabilizer(mb, c2, top);
		if (!c) continue;
		const auto h = random_element(small, 0, rng, 2, N, 0.4);
		if (h.is_zero()) continue;
		StabilizerFixture fx;
		fx.dim = static_cast<int>(small->space->dim());
		fx.arity_max = N;
		fx.orientation = o;
		fx.seed = seed;
		fx.big = big;
		fx.small = small;
		fx.y = m;
		fx.x = gauge_act(h, m);
		fx.h = h;
		fx.c = *c;
		fx.a = bch(*c, -h.with_context(big));
		if (fx.x == fx.y || !harrison_check(fx.a)) continue;
		if (!(gauge_act(fx.a, fx.x.with_context(big)) == fx.y.with_context(big)))
			throw Error("stabilizer fixture: corrupted gauge does not reach y");
		return fx;
	}
	return std::nullopt;
}

StabilizerFixture stabilizer_fixture(int dim, int N, Orientation o, std::uint64_t seed) {
	if (N < 3) throw Error("stabilizer fixture: arity_max must be at least 3");
	const auto base = base_algebra(dim, o);
	auto small = ConvContext::make(base.space, o, Flavor::C, N);
	auto fx = stabilizer_fixture_for(from_binary_algebra(small, base.product).mc, seed);
	if (!fx) throw Error("stabilizer fixture: no non-commutative stabilizer found");
	return *fx;
}

InftyStructure random_c_infinity(int dim, int N, Orientation o, std::uint64_t seed) {
	const auto base = base_algebra(dim, o);
	auto small = ConvContext::make(base.space, o, Flavor::C, N);
	const auto m0 = from_binary_algebra(small, base.product).mc;
	std::mt19937_64 rng(seed);
	auto m = gauge_act(random_element(small, 0, rng, 2, N, 0.4), m0);
	// a commutative top-arity term is MC-neutral under truncation
	m += random_element(small, -1, rng, N, N, 0.4);
	if (!is_mc(m) || flavor_witness(m)) throw Error("random C-infinity structure failed its own checks");
	return InftyStructure{m};
}

namespace {

// a.a = b, b.b = a: commutative, not associative
MultilinearMap jordan_like(const SpacePtr& V) {
	MultilinearMap m(V, 2, 0);
	m.add({0, 0}, 1, 1);
	m.add({1, 1}, 0, 1);
	return m;
}

} // namespace

InftyStructure broken_mc_fixture() {
	auto V = make_space({{"a", 0}, {"b", 0}});
	auto ctx = ConvContext::make(V, Orientation::algebra, Flavor::C, 3);
	ConvElement x(ctx, -1);
	x.add_component(shift_map(jordan_like(V), ctx));
	return InftyStructure{x};
}

ConvElement broken_harrison_fixture() {
	const auto base = base_algebra(2, Orientation::algebra);
	auto ctx = ConvContext::make(base.space, Orientation::algebra, Flavor::A, 3);
	MultilinearMap g(ctx->shifted, 2, 0);
	g.add({1, 1}, 1, 1); // shifted f has even degree, so g(f,f) survives symmetrization
	ConvElement a(ctx, 0);
	a.add_component(g);
	return a;
}

MultilinearMap broken_associativity_fixture(SpacePtr* space_out) {
	auto V = make_space({{"a", 0}, {"b", 0}});
	if (space_out) *space_out = V;
	return jordan_like(V);
}

} // namespace cdef
