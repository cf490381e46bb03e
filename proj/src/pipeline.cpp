#include "cdef/pipeline.hpp"

#include "cdef/fixtures.hpp"

namespace cdef {

Json complex_to_json(const ChainComplex& c) {
	Json j;
	j["basis"] = Json::array();
	for (std::size_t i = 0; i < c.size(); ++i) j["basis"].push_back({c.names[i], c.degree[i], c.weight[i]});
	j["differential"] = Json::array();
	for (std::size_t i = 0; i < c.size(); ++i)
		for (auto& [k, q] : c.d[i]) j["differential"].push_back({c.names[i], c.names[k], format_rational(q)});
	return j;
}

namespace {

std::map<std::string, int> name_index(const std::vector<std::string>& names, const std::string& where) {
	std::map<std::string, int> idx;
	for (std::size_t i = 0; i < names.size(); ++i)
		if (!idx.emplace(names[i], static_cast<int>(i)).second)
			throw ParseError(where + ": duplicate basis name \"" + names[i] + "\"");
	return idx;
}

int lookup(const std::map<std::string, int>& idx, const Json& e, const std::string& where) {
	auto name = json_string(e, where);
	auto it = idx.find(name);
	if (it == idx.end()) throw ParseError(where + ": unknown basis element \"" + name + "\"");
	return it->second;
}

std::vector<int> int_list(const Json& j, const std::string& where, std::size_t n) {
	if (!j.is_array() || j.size() != n)
		throw ParseError(where + " must be an array of " + std::to_string(n) + " integers");
	std::vector<int> out;
	for (std::size_t i = 0; i < n; ++i) out.push_back(json_int(j[i], where + "[" + std::to_string(i) + "]"));
	return out;
}

void read_triples(const Json& arr, const std::string& where, const std::map<std::string, int>& from,
                  const std::map<std::string, int>& to, std::vector<SparseVec>& out) {
	if (!arr.is_array()) throw ParseError(where + " must be an array");
	for (std::size_t i = 0; i < arr.size(); ++i) {
		const std::string w = where + "[" + std::to_string(i) + "]";
		const auto& e = arr[i];
		if (!e.is_array() || e.size() != 3) throw ParseError(w + " must be [from, to, coefficient]");
		add_to(out[lookup(from, e[0], w)], lookup(to, e[1], w), json_rational(e[2], w));
	}
}

} // namespace

ChainComplex complex_from_json(const Json& j) {
	const auto& jb = require(j, "basis");
	if (!jb.is_array()) throw ParseError("\"basis\" must be an array of [name, degree, weight]");
	ChainComplex c;
	for (std::size_t i = 0; i < jb.size(); ++i) {
		const std::string w = "basis[" + std::to_string(i) + "]";
		const auto& e = jb[i];
		if (!e.is_array() || e.size() != 3) throw ParseError(w + " must be [name, degree, weight]");
		c.names.push_back(json_string(e[0], w));
		c.degree.push_back(json_int(e[1], w));
		c.weight.push_back(json_int(e[2], w));
	}
	const auto idx = name_index(c.names, "basis");
	c.d.assign(c.size(), {});
	read_triples(require(j, "differential"), "differential", idx, idx, c.d);
	if (auto bad = c.defect()) throw ParseError("not a chain complex: " + *bad);
	return c;
}

Json filtered_map_to_json(const FilteredChainMap& m) {
	Json j;
	j["kind"] = "filtered-chain-map";
	j["p_max"] = m.p_max;
	j["source"] = complex_to_json(m.source);
	j["target"] = complex_to_json(m.target);
	j["source_level"] = m.source_level;
	j["target_level"] = m.target_level;
	j["map"] = Json::array();
	for (std::size_t i = 0; i < m.f.size(); ++i)
		for (auto& [k, q] : m.f[i]) j["map"].push_back({m.source.names[i], m.target.names[k], format_rational(q)});
	return j;
}

FilteredChainMap filtered_map_from_json(const Json& j) {
	FilteredChainMap m;
	try {
		m.source = complex_from_json(require(j, "source"));
	} catch (const ParseError& e) {
		throw ParseError(std::string("source: ") + e.what());
	}
	try {
		m.target = complex_from_json(require(j, "target"));
	} catch (const ParseError& e) {
		throw ParseError(std::string("target: ") + e.what());
	}
	m.source_level = int_list(require(j, "source_level"), "source_level", m.source.size());
	m.target_level = int_list(require(j, "target_level"), "target_level", m.target.size());
	if (j.contains("p_max")) m.p_max = json_int(j["p_max"], "p_max");
	m.f.assign(m.source.size(), {});
	read_triples(require(j, "map"), "map", name_index(m.source.names, "source"), name_index(m.target.names, "target"),
	             m.f);
	for (std::size_t i = 0; i < m.f.size(); ++i)
		for (auto& [k, q] : m.f[i])
			if (m.target.degree[k] != m.source.degree[i] || m.target.weight[k] != m.source.weight[i])
				throw ParseError("map: " + m.source.names[i] + " -> " + m.target.names[k] + " changes degree or weight");
	return m;
}

FilteredChainMap counit_as_filtered_map(const CompletionModel& m, int p_max) {
	FilteredChainMap f;
	f.source = m.source;
	f.target = m.target;
	f.f = m.counit;
	f.source_level = m.F;
	f.target_level = m.target_F;
	f.p_max = p_max;
	return f;
}

FilteredChainMap broken_filtered_qi_fixture() {
	const auto m = homotopy_completion_model(heisenberg_lie(), 4);
	auto f = counit_as_filtered_map(m, 3);
	const SparseVec z{{2, Rational(1)}};
	for (auto& v : f.f)
		if (v == z) {
			v.clear();
			break;
		}
	return f;
}

std::optional<CheckFailure> BinaryAlgebraDoc::check() const {
	return check_binary_algebra(product, d ? &*d : nullptr, commutative);
}

Json algebra_to_json(const BinaryAlgebraDoc& a) {
	Json j;
	j["kind"] = "algebra";
	j["orientation"] = to_string(a.product.orientation());
	j["space"] = space_to_json(*a.space);
	j["product"] = map_to_json(a.product);
	if (a.d) j["differential"] = map_to_json(*a.d);
	j["commutative"] = a.commutative;
	return j;
}

BinaryAlgebraDoc algebra_from_json(const Json& j) {
	BinaryAlgebraDoc a;
	const auto o = parse_orientation(json_string(require(j, "orientation"), "orientation"));
	a.space = make_space(space_from_json(require(j, "space")));
	a.product = map_from_json(require(j, "product"), a.space, o);
	if (a.product.arity() != 2 || a.product.degree() != 0) throw ParseError("product: must be binary of degree 0");
	if (j.contains("differential")) {
		a.d = map_from_json(j["differential"], a.space, o);
		if (a.d->arity() != 1 || a.d->degree() != -1) throw ParseError("differential: must be unary of degree -1");
	}
	if (j.contains("commutative")) {
		if (!j["commutative"].is_boolean()) throw ParseError("commutative: must be true or false");
		a.commutative = j["commutative"].get<bool>();
	}
	return a;
}

InftyStructure coalgebra_structure(const WeightCoalgebra& C, int arity_max) {
	std::vector<std::pair<std::string, int>> basis;
	for (std::size_t i = 0; i < C.size(); ++i) basis.emplace_back(C.names[i], C.degree[i]);
	auto V = make_space(basis);
	MultilinearMap delta(V, 2, 0, Orientation::coalgebra), d(V, 1, -1, Orientation::coalgebra);
	for (std::size_t i = 0; i < C.size(); ++i) {
		for (auto& [lr, q] : C.coproduct[i]) delta.add({lr.first, lr.second}, static_cast<int>(i), q);
		for (auto& [k, q] : C.d[i]) d.add({k}, static_cast<int>(i), q);
	}
	auto ctx = context_with_differential(V, Orientation::coalgebra, C.cocommutative ? Flavor::C : Flavor::A, arity_max,
	                                     &d);
	return from_binary_algebra(ctx, delta);
}

Json CompletionDemo::to_json() const {
	Json j;
	j["coalgebra_dim"] = coalgebra_dim;
	j["stabilizer_found"] = stabilizer_found;
	j["rectified"] = rectified;
	j["iterations"] = trace.iterations();
	j["steps"] = Json::array();
	for (auto& s : trace.steps)
		j["steps"].push_back({{"n", s.n}, {"fd_s", s.fd_s}, {"fd_x", s.fd_x}, {"fd_da", s.fd_da}, {"x_terms", s.x_terms}});
	j["filtered_qi"] = Json::array();
	for (auto& l : qi.levels) j["filtered_qi"].push_back({{"p", l.p}, {"pass", l.pass}, {"detail", l.detail}});
	j["pass"] = pass();
	return j;
}

CompletionDemo theorem_b_demo(const FiniteDgLie& g, int W, int coalgebra_weight, int arity_max, std::uint64_t seed,
                              const FilteredChainMap* explicit_map) {
	CompletionDemo out;
	const auto C = ce_chains(g, coalgebra_weight);
	if (auto bad = C.defect()) throw LieError("CE chains: " + *bad);
	out.coalgebra_dim = C.size();
	const auto m = coalgebra_structure(C, arity_max);

	// A non-commutative isotopy from exp(h) m to m when a stabilizer exists,
	// otherwise the commutative one.
	auto fx = stabilizer_fixture_for(m.mc, seed);
	InftyStructure x, y{m.mc};
	Isotopy phi;
	if (fx) {
		out.stabilizer_found = true;
		x.mc = fx->x;
		phi = fx->phi();
	} else {
		std::mt19937_64 rng(seed);
		const auto h = random_element(m.context(), 0, rng, 2, arity_max, 0.4);
		x.mc = gauge_act(h, m.mc);
		phi = isotopy_from_gauge(-h.with_context(m.context()->with_flavor(Flavor::A)));
	}
	const auto psi = theorem_a_driver(x, y, phi, &out.trace);
	out.rectified = !harrison_check(psi.f) && transport_structure(psi, x).mc == y.mc;

	const auto model = homotopy_completion_model(g, W);
	if (explicit_map) {
		if (explicit_map->source.names != model.source.names || explicit_map->target.names != model.target.names)
			throw LieError("the given map does not run from Q g to g at this weight");
		out.qi = explicit_map->check();
	} else {
		out.qi = counit_as_filtered_map(model, std::min(W, 3)).check();
	}
	return out;
}

} // namespace cdef
