#include "cdef/structures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cdef;

namespace {

SpacePtr exterior_space() { return make_space({{"1", 0}, {"u", 1}, {"w", 1}, {"uw", 2}}); }

MultilinearMap exterior_product(const SpacePtr& V, Orientation o = Orientation::algebra) {
	MultilinearMap m(V, 2, 0, o);
	for (int i = 0; i < 4; ++i) {
		m.add({0, i}, i, 1);
		if (i) m.add({i, 0}, i, 1);
	}
	m.add({1, 2}, 3, 1);
	m.add({2, 1}, 3, -1);
	return m;
}

SpacePtr three_space() { return make_space({{"x", 0}, {"y", 1}, {"z", -1}}); }

// Stasheff identities sum_{r+s+t=n} (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0
// on the unshifted components, evaluated directly with compose_at; m_1 is
// the internal differential. Returns the arities where they fail.
std::vector<int> stasheff_failures(const ContextPtr& ctx, const ConvElement& x) {
	std::map<int, MultilinearMap> m;
	for (auto& [n, c] : ctx->delta) m.emplace(n, unshift_map(c, ctx));
	for (auto& [n, c] : x.components()) {
		auto u = unshift_map(c, ctx);
		auto it = m.find(n);
		if (it == m.end()) m.emplace(n, u);
		else it->second += u;
	}
	std::vector<int> bad;
	for (int n = 1; n <= ctx->arity_max; ++n) {
		MultilinearMap total(ctx->space, n, n - 3, ctx->orientation);
		for (int s = 1; s <= n; ++s)
			for (int r = 0; r + s <= n; ++r) {
				const int t = n - r - s, u = r + 1 + t;
				auto mu = m.find(u), ms = m.find(s);
				if (mu == m.end() || ms == m.end()) continue;
				const int sign = ((r + s * t) & 1) ? -1 : 1;
				total += compose_at(mu->second, ms->second, r + 1) * sign;
			}
		if (!total.is_zero()) bad.push_back(n);
	}
	return bad;
}

ConvElement structure_of(const ContextPtr& ctx, const MultilinearMap& product) {
	return from_binary_algebra(ctx, product).mc;
}

} // namespace

TEST(FromBinaryAlgebra, Examples) {
	auto V1 = make_space({{"x", 0}});
	auto c1 = ConvContext::make(V1, Orientation::algebra, Flavor::C, 3);
	EXPECT_TRUE(structure_of(c1, MultilinearMap(V1, 2, 0)).is_zero());

	// t.t = t2, everything else zero: all 8 associativity triples vanish
	auto T = make_space({{"t", 0}, {"t2", 0}});
	MultilinearMap m(T, 2, 0);
	m.add({0, 0}, 1, 1);
	auto ct = ConvContext::make(T, Orientation::algebra, Flavor::C, 4);
	EXPECT_TRUE(is_mc(structure_of(ct, m)));

	// x.y = z and nothing else: associative, not commutative
	auto X = make_space({{"x", 0}, {"y", 0}, {"z", 0}});
	ct = ConvContext::make(X, Orientation::algebra, Flavor::C, 4);
	MultilinearMap skew(X, 2, 0);
	skew.add({0, 1}, 2, 1);
	auto fail = check_binary_algebra(skew, nullptr, true);
	ASSERT_TRUE(fail);
	EXPECT_EQ(fail->check, "commutativity");
	EXPECT_THROW(from_binary_algebra(ct, skew), StructureError);
	EXPECT_NO_THROW(from_binary_algebra(ct->with_flavor(Flavor::A), skew));
}

TEST(FromBinaryAlgebra, AssociativityWitness) {
	auto V = make_space({{"e", 0}, {"f", 0}});
	MultilinearMap m(V, 2, 0);
	m.add({0, 0}, 0, 1);
	m.add({0, 1}, 1, 1);
	m.add({1, 1}, 0, 1);
	auto fail = check_binary_algebra(m, nullptr, false);
	ASSERT_TRUE(fail);
	EXPECT_EQ(fail->check, "associativity");
	EXPECT_EQ(fail->tuple.size(), 3u);
	try {
		from_binary_algebra(ConvContext::make(V, Orientation::algebra, Flavor::A, 3), m);
		FAIL() << "accepted a non-associative product";
	} catch (const StructureError& e) {
		EXPECT_NE(std::string(e.what()).find("associativity fails at ("), std::string::npos);
	}
}

TEST(FromBinaryAlgebra, LeibnizAndDifferential) {
	// d(a) = b with c.c = c, c.a = a: d(c.a) = b but c.d(a) = c.b = 0
	auto V = make_space({{"a", 1}, {"b", 0}, {"c", 0}});
	MultilinearMap d(V, 1, -1);
	d.add({0}, 1, 1);
	MultilinearMap m(V, 2, 0);
	m.add({2, 2}, 2, 1);
	m.add({2, 0}, 0, 1);
	auto fail = check_binary_algebra(m, &d, false);
	ASSERT_TRUE(fail);
	EXPECT_EQ(fail->check, "leibniz");
	auto ctx = context_with_differential(V, Orientation::algebra, Flavor::A, 3, &d);
	EXPECT_THROW(from_binary_algebra(ctx, m), StructureError);
	MultilinearMap dd(V, 1, -1);
	EXPECT_NO_THROW(context_with_differential(V, Orientation::algebra, Flavor::A, 3, &dd));
}

TEST(FromBinaryAlgebra, CoalgebraMirror) {
	auto V = exterior_space();
	for (auto f : {Flavor::A, Flavor::C}) {
		auto ctx = ConvContext::make(V, Orientation::coalgebra, f, 4);
		auto x = structure_of(ctx, exterior_product(V, Orientation::coalgebra));
		EXPECT_TRUE(is_mc(x));
	}
}

TEST(Stasheff, MaurerCartanElementsSatisfyTheIdentities) {
	std::mt19937_64 rng(21);
	auto V = make_space({{"1", 0}, {"u", 1}, {"w", 1}, {"uw", 2}, {"v", 0}});
	// v is central and squares to zero
	MultilinearMap m(V, 2, 0);
	for (int i = 0; i < 5; ++i) {
		m.add({0, i}, i, 1);
		if (i) m.add({i, 0}, i, 1);
	}
	m.add({1, 2}, 3, 1);
	m.add({2, 1}, 3, -1);
	ASSERT_FALSE(check_binary_algebra(m, nullptr, true));
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto mo = o == Orientation::algebra ? m : MultilinearMap(V, 2, 0, o);
		if (o == Orientation::coalgebra)
			for (auto& [t, v] : m.entries()) mo.add(t, v);
		auto ctx = ConvContext::make(V, o, Flavor::A, 4);
		auto x = structure_of(ctx, mo);
		EXPECT_TRUE(stasheff_failures(ctx, x).empty());
		for (int trial = 0; trial < 4; ++trial) {
			auto a = random_element(ctx, 0, rng, 2, 3, 0.2);
			auto y = gauge_act(a, x);
			ASSERT_TRUE(is_mc(y));
			ASSERT_FALSE(y.component(3).is_zero());
			EXPECT_TRUE(stasheff_failures(ctx, y).empty()) << "orientation " << to_string(o);
			auto broken = y + random_element(ctx, -1, rng, 2, 2, 0.2);
			if (is_mc(broken)) continue;
			EXPECT_FALSE(stasheff_failures(ctx, broken).empty());
		}
	}
}

// With m_1 present the arity-3 identity sees the sign of m_3 relative to m_2.
TEST(Stasheff, WithInternalDifferential) {
	std::mt19937_64 rng(22);
	auto V = make_space({{"a", 1}, {"b", 0}, {"c", 2}, {"e", 1}});
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		// d(a) = b; coalgebra maps are keyed by their output
		MultilinearMap d(V, 1, -1, o);
		if (o == Orientation::algebra) d.add({0}, 1, 1);
		else d.add({1}, 0, 1);
		auto ctx = context_with_differential(V, o, Flavor::A, 5, &d);
		int with_m3 = 0;
		for (int trial = 0; trial < 4; ++trial) {
			auto a = random_element(ctx, 0, rng, 2, 5, 0.2);
			auto y = gauge_act(a, ConvElement(ctx, -1));
			ASSERT_TRUE(is_mc(y));
			with_m3 += !y.component(3).is_zero();
			EXPECT_TRUE(stasheff_failures(ctx, y).empty()) << to_string(o);
		}
		EXPECT_GT(with_m3, 0);
	}
}

TEST(PbwRetraction, FixesCommutativeElementsAndArityTwoExample) {
	std::mt19937_64 rng(23);
	auto ctx = ConvContext::make(three_space(), Orientation::algebra, Flavor::A, 4);
	auto cctx = commutative_context(ctx);
	EXPECT_EQ(cctx->flavor, Flavor::C);
	EXPECT_TRUE(pbw_retraction(ConvElement(ctx, 0)).is_zero());
	for (int trial = 0; trial < 5; ++trial) {
		auto c = random_element(cctx, static_cast<int>(rng() % 2) - 1, rng);
		EXPECT_EQ(pbw_retraction(c.with_context(ctx), cctx), c);
		auto f = random_element(ctx, 0, rng);
		auto s = pbw_retraction(f, cctx);
		EXPECT_FALSE(harrison_check(s));
		EXPECT_EQ(pbw_retraction(s.with_context(ctx), cctx), s);
	}
	// degree -1 elements of V sit in degree 0 after the shift
	auto W = make_space({{"p", -1}, {"q", -1}, {"r", -2}});
	auto wctx = ConvContext::make(W, Orientation::algebra, Flavor::A, 3);
	MultilinearMap f(wctx->shifted, 2, -1);
	f.add({0, 1}, 2, 1);
	ConvElement e(wctx, -1);
	e.add_component(f);
	auto s = pbw_retraction(e).component(2);
	EXPECT_EQ(s.coeff({0, 1}, 2), Rational(1, 2));
	EXPECT_EQ(s.coeff({1, 0}, 2), Rational(-1, 2));
	EXPECT_EQ(s.size(), 2u);
}

TEST(PbwRetraction, ModuleMapAndFiltration) {
	std::mt19937_64 rng(24);
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto ctx = ConvContext::make(three_space(), o, Flavor::A, 5);
		auto cctx = commutative_context(ctx);
		for (int trial = 0; trial < 6; ++trial) {
			auto x = random_element(ctx, static_cast<int>(rng() % 2) - 1, rng, 2, 4, 0.08);
			auto y = random_element(cctx, static_cast<int>(rng() % 2) - 1, rng, 2, 3, 0.15);
			auto lhs = pbw_retraction(bracket(x, y.with_context(ctx)), cctx);
			auto rhs = bracket(pbw_retraction(x, cctx), y);
			ASSERT_EQ(lhs, rhs) << to_string(o);
			ASSERT_GE(filtration_degree(pbw_retraction(x, cctx)), filtration_degree(x));
		}
	}
}

TEST(PbwRetraction, PreservesStrictlyUnitalSubcomplex) {
	std::mt19937_64 rng(25);
	auto V = make_space({{"1", 0}, {"x", 0}, {"y", 1}});
	auto ctx = su_context(V, "1", Flavor::A, 4);
	auto cctx = commutative_context(ctx);
	EXPECT_EQ(cctx->flavor, Flavor::suC);
	for (int trial = 0; trial < 5; ++trial) {
		auto f = random_element(ctx, 0, rng);
		ASSERT_FALSE(flavor_witness(f));
		auto s = pbw_retraction(f, cctx);
		ASSERT_FALSE(flavor_witness(s));
	}
}

TEST(StrictUnits, Mu0) {
	std::mt19937_64 rng(26);
	auto one = make_space({{"1", 0}});
	auto c1 = su_context(one, "1", Flavor::A, 3);
	EXPECT_TRUE(is_mc(base_differential_element(c1).with_context(c1->with_delta({}))));
	EXPECT_TRUE(random_element(c1, -1, rng).is_zero()); // reduced complex is empty

	auto V = make_space({{"1", 0}, {"x", 0}});
	auto ctx = su_context(V, "1", Flavor::A, 3);
	EXPECT_TRUE(is_mc(base_differential_element(ctx).with_context(ctx->with_delta({}))));
	for (int trial = 0; trial < 5; ++trial) {
		auto f = random_element(ctx->with_flavor(Flavor::A), -1, rng, 2, 3, 0.6).with_context(ctx);
		ASSERT_TRUE(differential(differential(f)).is_zero());
	}
	// 1 unit, x.x = 0 is mu0 itself: the reduced part vanishes
	auto mu = unital_mu0(V, 0, Orientation::algebra);
	EXPECT_TRUE(from_binary_algebra(ctx, mu).mc.is_zero());
	// x.x = x is unital and associative, with reduced part x.x = x
	auto mu2 = mu;
	mu2.add({1, 1}, 1, 1);
	auto bar = from_binary_algebra(ctx, mu2).mc;
	EXPECT_EQ(bar.components().size(), 1u);
	EXPECT_THROW(su_context(V, "z", Flavor::A, 3), StructureError);
	EXPECT_THROW(su_context(make_space({{"1", 1}}), "1", Flavor::A, 3), StructureError);
}

TEST(Harrison, Examples) {
	std::mt19937_64 rng(27);
	auto W = make_space({{"p", -1}, {"q", -1}, {"r", -2}});
	auto ctx = ConvContext::make(W, Orientation::algebra, Flavor::A, 3);
	MultilinearMap f(ctx->shifted, 2, -1);
	f.add({0, 1}, 2, 1);
	f.add({1, 0}, 2, -1);
	ConvElement e(ctx, -1);
	e.add_component(f);
	EXPECT_FALSE(harrison_check(e));
	auto g = random_element(ctx, -1, rng, 3, 3, 0.9);
	auto w = harrison_check(g);
	ASSERT_TRUE(w);
	EXPECT_EQ(w->arity, 3);
	EXPECT_EQ(w->p + w->q, 3);
	EXPECT_EQ(w->tuple.size(), 3u);
	EXPECT_FALSE(harrison_check(pbw_retraction(g)));
}

class Isotopies : public ::testing::TestWithParam<Orientation> {};

TEST_P(Isotopies, TransportMatchesGauge) {
	std::mt19937_64 rng(28);
	auto V = exterior_space();
	auto ctx = ConvContext::make(V, GetParam(), Flavor::A, 4);
	InftyStructure m{structure_of(ctx, exterior_product(V, GetParam()))};
	EXPECT_EQ(transport_structure(Isotopy::identity(ctx), m).mc, m.mc);
	for (int trial = 0; trial < 6; ++trial) {
		auto a = random_element(ctx, 0, rng, 2, 4, 0.15);
		auto phi = isotopy_from_gauge(a);
		ASSERT_EQ(phi.f.component(2), a.component(2));
		ASSERT_EQ(transport_structure(phi, m).mc, gauge_act(a, m.mc));
		ASSERT_EQ(gauge_from_isotopy(phi), a);
	}
}

TEST_P(Isotopies, ExponentialIsAHomomorphism) {
	std::mt19937_64 rng(29);
	auto ctx = ConvContext::make(three_space(), GetParam(), Flavor::A, 4);
	InftyStructure zero{ConvElement(ctx, -1)};
	for (int trial = 0; trial < 5; ++trial) {
		auto a = random_element(ctx, 0, rng, 2, 4, 0.2), b = random_element(ctx, 0, rng, 2, 4, 0.2);
		auto A = isotopy_from_gauge(a), B = isotopy_from_gauge(b);
		ASSERT_EQ(isotopy_from_gauge(bch(a, b)), compose(A, B));
		ASSERT_EQ(compose(A, isotopy_from_gauge(-a)), Isotopy::identity(ctx));
		// arity-2-only isotopy on the zero structure
		Isotopy phi{a.arity_range(2, 2)};
		ASSERT_TRUE(transport_structure(phi, zero).mc.is_zero());
	}
}

TEST_P(Isotopies, TransportAlongComposite) {
	std::mt19937_64 rng(30);
	auto V = exterior_space();
	auto ctx = ConvContext::make(V, GetParam(), Flavor::A, 4);
	InftyStructure m{structure_of(ctx, exterior_product(V, GetParam()))};
	for (int trial = 0; trial < 3; ++trial) {
		// isotopies that are not exponentials of anything simple
		Isotopy phi{random_element(ctx, 0, rng, 2, 4, 0.15)}, psi{random_element(ctx, 0, rng, 2, 4, 0.15)};
		auto m1 = transport_structure(psi, m);
		ASSERT_TRUE(is_mc(m1.mc));
		ASSERT_EQ(transport_structure(compose(phi, psi), m).mc, transport_structure(phi, m1).mc);
	}
}

INSTANTIATE_TEST_SUITE_P(BothOrientations, Isotopies, ::testing::Values(Orientation::algebra, Orientation::coalgebra));

TEST(Json, ElementRoundTrip) {
	std::mt19937_64 rng(31);
	auto V = make_space({{"1", 0}, {"x", 0}, {"y", 1}});
	for (auto ctx : {su_context(V, "1", Flavor::C, 4), ConvContext::make(V, Orientation::coalgebra, Flavor::A, 3)}) {
		auto f = random_element(ctx, -1, rng);
		auto doc = element_from_json(Json::parse(element_to_json(f, "structure").dump()));
		EXPECT_EQ(doc.kind, "structure");
		EXPECT_EQ(doc.element, f);
		EXPECT_EQ(*doc.element.context(), *ctx);
	}
}

TEST(Json, ReportsOffendingKeys) {
	auto V = make_space({{"x", 0}});
	auto ctx = ConvContext::make(V, Orientation::algebra, Flavor::A, 3);
	Json j = element_to_json(ConvElement(ctx, -1));
	j.erase("arity_max");
	try {
		element_from_json(j);
		FAIL();
	} catch (const ParseError& e) {
		EXPECT_NE(std::string(e.what()).find("arity_max"), std::string::npos);
	}
	Json k = element_to_json(ConvElement(ctx, -1));
	k["arity_components"] = {{"two", Json::object()}};
	EXPECT_THROW(element_from_json(k), ParseError);
	Json u = element_to_json(ConvElement(ctx, -1));
	u["flavor"] = "su-A-infinity";
	EXPECT_THROW(element_from_json(u), ParseError);
}
