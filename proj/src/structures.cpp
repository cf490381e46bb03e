#include "cdef/structures.hpp"

#include <functional>
#include <sstream>

namespace cdef {

namespace {

using Family = std::map<int, MultilinearMap>;

void add_into(Family& fam, const MultilinearMap& f) {
	if (f.is_zero()) return;
	auto it = fam.find(f.arity());
	if (it == fam.end()) fam.emplace(f.arity(), f);
	else {
		it->second += f;
		if (it->second.is_zero()) fam.erase(it);
	}
}

std::optional<CheckFailure> first_entry(const std::string& check, const MultilinearMap& defect) {
	if (defect.is_zero()) return std::nullopt;
	return CheckFailure{check, defect.entries().begin()->first};
}

// Family with the identity in arity 1 followed by the given components.
Family with_identity(const ConvElement& f) {
	const auto& ctx = *f.context();
	Family r{{1, MultilinearMap::identity(ctx.shifted, ctx.orientation)}};
	for (auto& [n, m] : f.components()) add_into(r, m);
	return r;
}

// Sum over (i_1..i_k) of F(G_{i_1}, .., G_{i_k}), keeping arities <= N. The
// slots are filled right to left so earlier slot indices stay valid; the G
// are of degree 0, so no Koszul signs arise.
void plug(const MultilinearMap& F, const Family& G, int N, Family& out) {
	std::function<void(const MultilinearMap&, int)> rec = [&](const MultilinearMap& g, int slot) {
		if (slot == 0) {
			add_into(out, g);
			return;
		}
		for (auto& [i, Gi] : G) {
			if (g.arity() - 1 + i > N) break;
			rec(compose_at(g, Gi, slot), slot - 1);
		}
	};
	rec(F, F.arity());
}

Family star_family(const Family& f, const Family& g, int N) {
	Family r;
	for (auto& [p, fp] : f)
		for (auto& [q, gq] : g) {
			if (p + q - 1 > N) continue;
			for (int i = 1; i <= p; ++i) add_into(r, compose_at(fp, gq, i));
		}
	return r;
}

ConvElement to_element(const ContextPtr& ctx, int degree, const Family& fam, int min_arity) {
	ConvElement r(ctx, degree);
	for (auto& [n, m] : fam)
		if (n >= min_arity) r.add_component(m);
	return r;
}

} // namespace

std::string CheckFailure::describe(const GradedSpace& V) const {
	std::ostringstream os;
	os << check << " fails at (";
	for (std::size_t k = 0; k < tuple.size(); ++k) os << (k ? "," : "") << V.name(tuple[k]);
	os << ")";
	return os.str();
}

std::optional<CheckFailure> check_binary_algebra(const MultilinearMap& m, const MultilinearMap* d, bool commutative) {
	if (m.arity() != 2 || m.degree() != 0) throw StructureError("product must be binary of degree 0");
	if (d && (d->arity() != 1 || d->degree() != -1)) throw StructureError("differential must be unary of degree -1");
	if (auto f = first_entry("associativity", compose_at(m, m, 1) - compose_at(m, m, 2))) return f;
	if (commutative)
		if (auto f = first_entry("commutativity", act_on_inputs(GroupAlgebraElement::of({2, 1}), m) - m)) return f;
	if (d) {
		if (auto f = first_entry("square-zero", compose_at(*d, *d, 1))) return f;
		if (auto f = first_entry("leibniz", compose_at(*d, m, 1) - compose_at(m, *d, 1) - compose_at(m, *d, 2)))
			return f;
	}
	return std::nullopt;
}

InftyStructure from_binary_algebra(const ContextPtr& ctx, const MultilinearMap& product) {
	if (!same_space(product.space(), ctx->space) || product.orientation() != ctx->orientation)
		throw StructureError("product does not live on the context space");
	std::optional<MultilinearMap> d;
	if (auto it = ctx->delta.find(1); it != ctx->delta.end()) d = unshift_map(it->second, ctx);
	if (auto f = check_binary_algebra(product, d ? &*d : nullptr, is_commutative(ctx->flavor)))
		throw StructureError(f->describe(*ctx->space));
	ConvElement x(ctx, -1);
	x.add_component(shift_map(product, ctx));
	if (auto it = ctx->delta.find(2); it != ctx->delta.end()) x.add_component(it->second, -1);
	if (auto w = flavor_witness(x)) {
		CheckFailure f{w->reason == "nonzero on the unit line" ? "unit" : "commutativity", w->tuple};
		throw StructureError(f.describe(*ctx->shifted));
	}
	if (!is_mc(x)) throw StructureError("product is not Maurer-Cartan after shifting");
	return InftyStructure{x};
}

ContextPtr context_with_differential(SpacePtr V, Orientation o, Flavor f, int arity_max, const MultilinearMap* d) {
	auto ctx = ConvContext::make(V, o, f, arity_max);
	if (!d || d->is_zero()) return ctx;
	if (d->arity() != 1 || d->degree() != -1 || !same_space(d->space(), V))
		throw StructureError("differential must be a unary map of degree -1 on V");
	if (auto fail = first_entry("square-zero", compose_at(*d, *d, 1))) throw StructureError(fail->describe(*V));
	return ctx->with_delta({{1, shift_map(*d, ctx)}});
}

MultilinearMap unital_mu0(const SpacePtr& V, int unit, Orientation o) {
	if (V->degree(unit) != 0) throw StructureError("the unit must have degree 0");
	// stored the same way in both orientations: for coalgebras this is
	// D(1) = 1 (x) 1, D(v) = 1 (x) v + v (x) 1
	MultilinearMap m(V, 2, 0, o);
	for (int i = 0; i < static_cast<int>(V->dim()); ++i) {
		m.add({unit, i}, i, 1);
		if (i != unit) m.add({i, unit}, i, 1);
	}
	return m;
}

ContextPtr su_context(SpacePtr V, const std::string& unit, Flavor f, int arity_max, Orientation o) {
	auto idx = V->find(unit);
	if (!idx) throw StructureError("unit \"" + unit + "\" is not a basis element");
	if (V->degree(*idx) != 0) throw StructureError("the unit must have degree 0");
	auto ctx = ConvContext::make(V, o, is_commutative(f) ? Flavor::suC : Flavor::suA, arity_max);
	auto c = std::make_shared<ConvContext>(*ctx);
	c->unit = *idx;
	c->delta = {{2, shift_map(unital_mu0(V, *idx, o), ctx)}};
	return c;
}

ContextPtr commutative_context(const ContextPtr& ctx) {
	return ctx->with_flavor(commutative_counterpart(ctx->flavor));
}

ConvElement pbw_retraction(const ConvElement& f, const ContextPtr& target) {
	auto tgt = target ? target : commutative_context(f.context());
	if (!tgt->same_ambient(*f.context())) throw Error("pbw_retraction: context mismatch");
	ConvElement r(tgt, f.degree());
	for (auto& [n, m] : f.components()) r.add_component(harrison_projection(m));
	return r;
}

std::optional<HarrisonFailure> harrison_check(const ConvElement& f) {
	for (auto& [n, m] : f.components()) {
		if (n < 2) continue;
		if (auto w = harrison_witness(m)) return HarrisonFailure{n, w->p, w->q, w->tuple};
	}
	return std::nullopt;
}

Isotopy compose(const Isotopy& phi, const Isotopy& psi) {
	auto ctx = join_context(phi.context(), psi.context());
	const int N = ctx->arity_max;
	const Family F = with_identity(phi.f), G = with_identity(psi.f);
	Family out;
	for (auto& [k, Fk] : F) plug(Fk, G, N, out);
	return Isotopy{to_element(ctx, 0, out, 2)};
}

Isotopy isotopy_from_gauge(const ConvElement& a) {
	if (a.degree() != 0 && !a.is_zero()) throw Error("isotopy_from_gauge: gauge must have degree 0");
	if (a.components().count(1)) throw Error("isotopy_from_gauge: gauge must have no arity-1 component");
	const auto& ctx = a.context();
	const int N = ctx->arity_max;
	Family A(a.components().begin(), a.components().end());
	Family term = with_identity(ConvElement(ctx, 0)), sum = term;
	for (int k = 1; k < N && !term.empty(); ++k) {
		term = star_family(term, A, N);
		for (auto& [n, m] : term) m *= Rational(1, k);
		for (auto& [n, m] : term) add_into(sum, m);
	}
	return Isotopy{to_element(ctx, 0, sum, 2)};
}

ConvElement gauge_from_isotopy(const Isotopy& phi) {
	const auto& ctx = phi.context();
	ConvElement a(ctx, 0);
	for (int n = 2; n <= ctx->arity_max; ++n) {
		auto cur = isotopy_from_gauge(a);
		a.add_component(phi.f.component(n) - cur.f.component(n));
	}
	return a;
}

InftyStructure transport_structure(const Isotopy& phi, const InftyStructure& m) {
	auto ctx = join_context(phi.context(), m.context());
	const int N = ctx->arity_max;
	const Family Phi = with_identity(phi.f);
	Family M(ctx->delta.begin(), ctx->delta.end());
	for (auto& [n, c] : m.mc.components()) add_into(M, c);
	// phi * M = sum_k M'_k(phi, .., phi), solved for M'_n arity by arity
	const Family lhs = star_family(Phi, M, N);
	Family rhs, Mp;
	for (int n = 1; n <= N; ++n) {
		MultilinearMap mn(ctx->shifted, n, -1, ctx->orientation);
		if (auto it = lhs.find(n); it != lhs.end()) mn += it->second;
		if (auto it = rhs.find(n); it != rhs.end()) mn -= it->second;
		if (mn.is_zero()) continue;
		Mp.emplace(n, mn);
		plug(mn, Phi, N, rhs);
	}
	ConvElement r(ctx, -1);
	for (auto& [n, c] : Mp) r.add_component(c);
	for (auto& [n, c] : ctx->delta) r.add_component(c, -1);
	return InftyStructure{r};
}

Json context_to_json(const ConvContext& ctx) {
	Json j = space_to_json(*ctx.space);
	j["orientation"] = to_string(ctx.orientation);
	j["flavor"] = to_string(ctx.flavor);
	j["arity_max"] = ctx.arity_max;
	j["unit"] = ctx.unit ? Json(ctx.space->name(*ctx.unit)) : Json(nullptr);
	if (!ctx.delta.empty()) {
		Json d = Json::object();
		auto self = std::make_shared<ConvContext>(ctx);
		for (auto& [n, m] : ctx.delta) d[std::to_string(n)] = map_to_json(unshift_map(m, self));
		j["base_differential"] = d;
	}
	return j;
}

namespace {

Components components_from_json(const Json& j, const ContextPtr& ctx, const std::string& key,
                                std::optional<int> degree) {
	if (!j.is_object()) throw ParseError("\"" + key + "\" must be an object keyed by arity");
	Components out;
	for (auto& [k, v] : j.items()) {
		int n = 0;
		try {
			std::size_t used = 0;
			n = std::stoi(k, &used);
			if (used != k.size()) throw std::invalid_argument(k);
		} catch (const std::exception&) {
			throw ParseError("\"" + key + "\": arity key \"" + k + "\" is not an integer");
		}
		auto m = map_from_json(v, ctx->space, ctx->orientation);
		if (m.arity() != n) throw ParseError("\"" + key + "\": component \"" + k + "\" has arity " + std::to_string(m.arity()));
		auto s = shift_map(m, ctx);
		if (degree && s.degree() != *degree)
			throw ParseError("\"" + key + "\": component \"" + k + "\" has the wrong degree for this element");
		if (n > ctx->arity_max) throw ParseError("\"" + key + "\": arity " + k + " exceeds arity_max");
		out.emplace(n, s);
	}
	return out;
}

} // namespace

ContextPtr context_from_json(const Json& j) {
	auto V = make_space(space_from_json(j));
	const Orientation o = j.contains("orientation") ? parse_orientation(json_string(j["orientation"], "orientation"))
	                                                : Orientation::algebra;
	const Flavor f = j.contains("flavor") ? parse_flavor(json_string(j["flavor"], "flavor")) : Flavor::A;
	const int N = json_int(require(j, "arity_max"), "arity_max");
	if (N < 2) throw ParseError("\"arity_max\" must be at least 2");
	ContextPtr ctx;
	if (j.contains("unit") && !j["unit"].is_null()) {
		try {
			ctx = su_context(V, json_string(j["unit"], "unit"), f, N, o);
		} catch (const StructureError& e) {
			throw ParseError(std::string("\"unit\": ") + e.what());
		}
	} else {
		if (is_strictly_unital(f)) throw ParseError("\"unit\": required for strictly unital flavors");
		ctx = ConvContext::make(V, o, f, N);
	}
	if (j.contains("base_differential")) {
		auto d = components_from_json(j["base_differential"], ctx, "base_differential", -1);
		ctx = ctx->with_delta(d);
		if (!is_mc(base_differential_element(ctx).with_context(ctx->with_delta({}))))
			throw ParseError("\"base_differential\": does not square to zero");
	}
	return ctx;
}

Json element_to_json(const ConvElement& f, const std::string& kind) {
	Json j = context_to_json(*f.context());
	j["kind"] = kind;
	j["degree"] = f.degree();
	Json comps = Json::object();
	for (auto& [n, m] : f.components()) comps[std::to_string(n)] = map_to_json(unshift_map(m, f.context()));
	j["arity_components"] = comps;
	return j;
}

ElementDoc element_from_json(const Json& j) {
	auto ctx = context_from_json(j);
	const int degree = json_int(require(j, "degree"), "degree");
	const std::string kind = j.contains("kind") ? json_string(j["kind"], "kind") : "element";
	ConvElement e(ctx, degree, components_from_json(require(j, "arity_components"), ctx, "arity_components", degree));
	return ElementDoc{e, kind};
}

} // namespace cdef
