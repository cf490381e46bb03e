#include "cdef/convolution.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cdef;

namespace {

SpacePtr three_space() { return make_space({{"x", 0}, {"y", 1}, {"z", -1}}); }

// Exterior algebra on two odd generators: basis 1, u, w, uw with uw = -wu.
SpacePtr exterior_space() { return make_space({{"1", 0}, {"u", 1}, {"w", 1}, {"uw", 2}}); }

MultilinearMap exterior_product(const SpacePtr& V) {
	MultilinearMap m(V, 2, 0);
	for (int i = 0; i < 4; ++i) {
		m.add({0, i}, i, 1);
		if (i) m.add({i, 0}, i, 1);
	}
	m.add({1, 2}, 3, 1);
	m.add({2, 1}, 3, -1);
	return m;
}

ConvElement exterior_mc(const ContextPtr& ctx) {
	ConvElement x(ctx, -1);
	x.add_component(shift_map(exterior_product(ctx->space), ctx));
	return x;
}

int sgn(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

// Truncated power series in the free associative algebra on letters 0, 1,
// used as an independent oracle for log(exp(a) exp(b)).
FreePoly mul(const FreePoly& P, const FreePoly& Q, int W) {
	FreePoly r;
	for (auto& [u, x] : P)
		for (auto& [v, y] : Q) {
			if (static_cast<int>(u.size() + v.size()) > W) continue;
			Word uv = u;
			uv.insert(uv.end(), v.begin(), v.end());
			r[uv] += x * y;
		}
	for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
	return r;
}

FreePoly add(FreePoly P, const FreePoly& Q, const Rational& c) {
	for (auto& [w, x] : Q) P[w] += x * c;
	for (auto it = P.begin(); it != P.end();) it = it->second == 0 ? P.erase(it) : std::next(it);
	return P;
}

FreePoly exp_series(int letter, int W) {
	FreePoly r{{{}, 1}};
	Rational fact = 1;
	Word w;
	for (int k = 1; k <= W; ++k) {
		fact *= k;
		w.push_back(letter);
		r[w] = 1 / fact;
	}
	return r;
}

FreePoly log_series(const FreePoly& P, int W) {
	FreePoly X = add(P, {{{}, 1}}, -1), power = X, r;
	for (int k = 1; k <= W; ++k) {
		r = add(r, power, make_rational((k & 1) ? 1 : -1, k));
		power = mul(power, X, W);
	}
	return r;
}

FreePoly comm(const FreePoly& P, const FreePoly& Q) { return add(mul(P, Q, 99), mul(Q, P, 99), -1); }

} // namespace

TEST(Flavor, Names) {
	for (auto f : {Flavor::A, Flavor::C, Flavor::suA, Flavor::suC}) EXPECT_EQ(parse_flavor(to_string(f)), f);
	EXPECT_THROW(parse_flavor("L-infinity"), ParseError);
	EXPECT_TRUE(flavor_contains(Flavor::A, Flavor::C));
	EXPECT_FALSE(flavor_contains(Flavor::C, Flavor::A));
	EXPECT_TRUE(flavor_contains(Flavor::C, Flavor::suC));
}

TEST(Star, Examples) {
	std::mt19937_64 rng(1);
	auto ctx = ConvContext::make(three_space(), Orientation::algebra, Flavor::A, 4);
	auto f = random_element(ctx, 0, rng, 2, 2), g = random_element(ctx, -1, rng, 2, 2);
	EXPECT_TRUE(star(f, ConvElement(ctx, 1)).is_zero());
	auto fg = star(f, g);
	ASSERT_EQ(fg.components().size(), 1u);
	EXPECT_EQ(fg.component(3), compose_at(f.component(2), g.component(2), 1) + compose_at(f.component(2), g.component(2), 2));
	EXPECT_EQ(fg.degree(), -1);

	auto small = ctx->with_arity_max(2);
	auto f2 = f.with_context(ctx).truncated(2);
	EXPECT_THROW(f2.with_context(small), Error);
	auto h = random_element(small, 0, rng);
	EXPECT_TRUE(star(h, h).is_zero());
}

TEST(Bracket, OddSquareIsTwiceStar) {
	std::mt19937_64 rng(2);
	auto ctx = ConvContext::make(three_space(), Orientation::algebra, Flavor::A, 4);
	auto f = random_element(ctx, -1, rng);
	EXPECT_EQ(bracket(f, f), star(f, f) * 2);
	auto e = random_element(ctx, 0, rng);
	EXPECT_TRUE(bracket(e, e).is_zero());
}

class LieAxioms : public ::testing::TestWithParam<Orientation> {};

TEST_P(LieAxioms, AntisymmetryJacobiFiltration) {
	std::mt19937_64 rng(3);
	auto ctx = ConvContext::make(three_space(), GetParam(), Flavor::A, 4);
	for (int trial = 0; trial < 12; ++trial) {
		const int df = static_cast<int>(rng() % 3) - 1, dg = static_cast<int>(rng() % 3) - 1,
		          dh = static_cast<int>(rng() % 3) - 1;
		auto f = random_element(ctx, df, rng, 2, 4, 0.3), g = random_element(ctx, dg, rng, 2, 4, 0.3),
		     h = random_element(ctx, dh, rng, 2, 4, 0.3);
		ASSERT_EQ(bracket(f, g), bracket(g, f) * -sgn(df, dg));
		auto lhs = bracket(f, bracket(g, h));
		auto rhs = bracket(bracket(f, g), h) + bracket(g, bracket(f, h)) * sgn(df, dg);
		ASSERT_EQ(lhs, rhs);
		ASSERT_GE(filtration_degree(bracket(f, g)), filtration_degree(f) + filtration_degree(g));
	}
}

TEST_P(LieAxioms, LeibnizForTwistedDifferential) {
	std::mt19937_64 rng(4);
	auto V = exterior_space();
	auto base = ConvContext::make(V, GetParam(), Flavor::A, 3);
	auto x = exterior_mc(base);
	if (GetParam() == Orientation::coalgebra) {
		// the transposed product is a coassociative coproduct; still MC
		ASSERT_TRUE(is_mc(x));
	}
	auto ctx = twist(base, x);
	for (int trial = 0; trial < 8; ++trial) {
		const int df = static_cast<int>(rng() % 2) - 1, dg = static_cast<int>(rng() % 2) - 1;
		auto f = random_element(ctx, df, rng, 2, 3, 0.3), g = random_element(ctx, dg, rng, 2, 3, 0.3);
		auto lhs = differential(bracket(f, g));
		auto rhs = bracket(differential(f), g) + bracket(f, differential(g)) * ((df & 1) ? -1 : 1);
		ASSERT_EQ(lhs, rhs);
		ASSERT_TRUE(differential(differential(f)).is_zero());
		ASSERT_GE(filtration_degree(differential(f)), filtration_degree(f));
	}
}

INSTANTIATE_TEST_SUITE_P(BothOrientations, LieAxioms,
                         ::testing::Values(Orientation::algebra, Orientation::coalgebra));

TEST(Filtration, Degrees) {
	auto ctx = ConvContext::make(three_space(), Orientation::algebra, Flavor::A, 5);
	EXPECT_EQ(filtration_degree(ConvElement(ctx, 0)), ConvElement::kInfinity);
	std::mt19937_64 rng(5);
	EXPECT_EQ(filtration_degree(random_element(ctx, 0, rng, 2, 2)), 1);
	EXPECT_EQ(filtration_degree(random_element(ctx, 0, rng, 5, 5)), 4);
}

TEST(MaurerCartan, Examples) {
	auto ctx = ConvContext::make(exterior_space(), Orientation::algebra, Flavor::A, 4);
	EXPECT_TRUE(is_mc(ConvElement(ctx, -1)));
	EXPECT_TRUE(is_mc(exterior_mc(ctx)));

	// e.e = e, e.f = f, f.e = 0, f.f = e: (f.f).f = f but f.(f.f) = 0
	auto V = make_space({{"e", 0}, {"f", 0}});
	auto c2 = ConvContext::make(V, Orientation::algebra, Flavor::A, 3);
	MultilinearMap m(V, 2, 0);
	m.add({0, 0}, 0, 1);
	m.add({0, 1}, 1, 1);
	m.add({1, 1}, 0, 1);
	ConvElement x(c2, -1);
	x.add_component(shift_map(m, c2));
	auto defect = mc_defect(x);
	ASSERT_FALSE(defect.is_zero());
	EXPECT_EQ(defect.components().begin()->first, 3);
	std::mt19937_64 rng(12);
	EXPECT_THROW(mc_defect(random_element(ctx, 0, rng, 2, 2, 1.0)), Error);
}

TEST(Twist, Properties) {
	std::mt19937_64 rng(6);
	auto ctx = ConvContext::make(exterior_space(), Orientation::algebra, Flavor::A, 4);
	EXPECT_EQ(*twist(ctx, ConvElement(ctx, -1)), *ctx);
	auto x = exterior_mc(ctx);
	auto tw = twist(ctx, x);
	auto bad = x + random_element(ctx, -1, rng, 2, 2, 0.2);
	ASSERT_FALSE(is_mc(bad));
	EXPECT_THROW(twist(ctx, bad), Error);
	EXPECT_FALSE(is_mc((bad - x).with_context(tw)));
	for (int trial = 0; trial < 3; ++trial) {
		auto a = random_element(ctx, 0, rng, 2, 4, 0.15);
		auto y = gauge_act(a, x);
		ASSERT_TRUE(is_mc(y));
		ASSERT_TRUE(is_mc((y - x).with_context(tw)));
		auto f = random_element(tw, -1, rng, 2, 4, 0.15);
		ASSERT_TRUE(differential(differential(f)).is_zero());
	}
}

TEST(Bch, SeriesMatchesLogOfExponentials) {
	const int W = 5;
	auto oracle = log_series(mul(exp_series(0, W), exp_series(1, W), W), W);
	const auto& Z = bch_series(W);
	FreePoly all;
	for (int n = 1; n <= W; ++n) {
		for (auto& [w, c] : Z[n]) ASSERT_EQ(static_cast<int>(w.size()), n);
		all = add(all, Z[n], 1);
	}
	EXPECT_EQ(all, oracle);
}

TEST(Bch, WeightThreeCoefficients) {
	const FreePoly a{{{0}, 1}}, b{{{1}, 1}};
	auto ab = comm(a, b);
	auto expected = add(add(FreePoly{}, comm(a, ab), Rational(1, 12)), comm(b, ab), Rational(-1, 12));
	EXPECT_EQ(bch_series(3)[3], expected);
	EXPECT_EQ(bch_series(2)[2], add(FreePoly{}, ab, Rational(1, 2)));
}

TEST(Bch, GroupLaws) {
	std::mt19937_64 rng(7);
	auto ctx = ConvContext::make(three_space(), Orientation::algebra, Flavor::A, 4);
	const ConvElement zero(ctx, 0);
	for (int trial = 0; trial < 5; ++trial) {
		auto a = random_element(ctx, 0, rng, 2, 4, 0.2), b = random_element(ctx, 0, rng, 2, 4, 0.2),
		     c = random_element(ctx, 0, rng, 2, 4, 0.2);
		ASSERT_EQ(bch(a, zero), a);
		ASSERT_EQ(bch(zero, a), a);
		ASSERT_TRUE(bch(a, -a).is_zero());
		ASSERT_EQ(bch(bch(a, b), c), bch(a, bch(b, c)));
	}
	auto c3 = ctx->with_arity_max(3);
	auto a = random_element(c3, 0, rng), b = random_element(c3, 0, rng);
	EXPECT_EQ(bch(a, b), a + b + bracket(a, b) * Rational(1, 2));
	EXPECT_THROW(bch(random_element(ctx, -1, rng), a.with_context(ctx)), Error);
}

TEST(Gauge, ActionProperties) {
	std::mt19937_64 rng(8);
	auto ctx = ConvContext::make(exterior_space(), Orientation::algebra, Flavor::A, 4);
	auto x = exterior_mc(ctx);
	EXPECT_EQ(gauge_act(ConvElement(ctx, 0), x), x);
	for (int trial = 0; trial < 4; ++trial) {
		auto a = random_element(ctx, 0, rng, 2, 4, 0.15), b = random_element(ctx, 0, rng, 2, 4, 0.15);
		auto y = gauge_act(b, x);
		ASSERT_TRUE(is_mc(y));
		ASSERT_EQ(gauge_act(bch(a, b), x), gauge_act(a, y));
		ASSERT_EQ(gauge_act(-b, y), x);
	}
	EXPECT_THROW(gauge_act(random_element(ctx, 0, rng), x + random_element(ctx, -1, rng, 2, 2)), Error);
}

TEST(Gauge, LeadingTerm) {
	// internal differential d(u) = v on V = {u:1, v:0}, so da keeps the arity of a
	auto V = make_space({{"u", 1}, {"v", 0}});
	auto ctx0 = ConvContext::make(V, Orientation::algebra, Flavor::A, 4);
	MultilinearMap d(V, 1, -1);
	d.add({0}, 1, 1);
	ConvElement delta(ctx0, -1);
	delta.add_component(shift_map(d, ctx0));
	auto ctx = ctx0->with_delta(delta.components());
	ASSERT_TRUE(is_mc(delta.with_context(ctx0)));
	std::mt19937_64 rng(9);
	for (int n = 1; n <= 3; ++n) {
		auto a = random_element(ctx, 0, rng, n + 1, 4, 0.5);
		auto x = random_element(ctx, -1, rng, 4, 4, 0.5); // top arity: MC when n + 1 <= 4
		if (!is_mc(x)) x = ConvElement(ctx, -1);
		auto lead = gauge_act(a, x) - (x - differential(a));
		ASSERT_GE(filtration_degree(lead), n + 1) << n;
	}
}

TEST(CInfinity, ClosedUnderStarAndBracket) {
	std::mt19937_64 rng(10);
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto ctx = ConvContext::make(three_space(), o, Flavor::C, 4);
		for (int trial = 0; trial < 6; ++trial) {
			auto f = random_element(ctx, static_cast<int>(rng() % 2) - 1, rng, 2, 3, 0.5);
			auto g = random_element(ctx, static_cast<int>(rng() % 2) - 1, rng, 2, 3, 0.5);
			ASSERT_FALSE(flavor_witness(f));
			ASSERT_FALSE(flavor_witness(star(f, g)));
			ASSERT_FALSE(flavor_witness(bracket(f, g)));
		}
		// a generic element is not C-infinity
		auto big = ctx->with_flavor(Flavor::A);
		auto h = random_element(big, 0, rng, 3, 3, 0.8);
		auto w = flavor_witness(h.with_context(ctx));
		ASSERT_TRUE(w);
		EXPECT_EQ(w->arity, 3);
	}
}

TEST(ShiftedEncoding, RoundTripAndDegrees) {
	std::mt19937_64 rng(11);
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto ctx = ConvContext::make(three_space(), o, Flavor::A, 4);
		auto f = random_element(ctx, -1, rng, 2, 4);
		for (auto& [n, m] : f.components()) {
			auto u = unshift_map(m, ctx);
			EXPECT_EQ(u.degree(), n - 2);
			EXPECT_EQ(shift_map(u, ctx), m);
		}
	}
}
