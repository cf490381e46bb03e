#include "cdef/fixtures.hpp"
#include "cdef/rectify.hpp"

#include <gtest/gtest.h>

#include <random>
#include <tuple>

using namespace cdef;

namespace {

struct Case {
	int dim, N;
	Orientation o;
	std::uint64_t seed;
};

std::string case_name(const testing::TestParamInfo<Case>& info) {
	auto& c = info.param;
	return std::string(to_string(c.o)) + "_dim" + std::to_string(c.dim) + "_N" + std::to_string(c.N) + "_seed" +
	       std::to_string(c.seed);
}

std::vector<Case> all_cases() {
	std::vector<Case> out;
	for (auto o : {Orientation::algebra, Orientation::coalgebra})
		for (int dim : {2, 3})
			for (int N : {3, 4}) out.push_back({dim, N, o, 7u + static_cast<unsigned>(dim * 10 + N)});
	return out;
}

} // namespace

TEST(GaugeDescend, ZeroInZeroOut) {
	auto base = base_algebra(2, Orientation::algebra);
	auto setup = RetractionSetup::for_context(ConvContext::make(base.space, Orientation::algebra, Flavor::C, 4));
	DescentTrace tr;
	auto g = gauge_descend(setup, ConvElement(setup.small, -1), ConvElement(setup.big, 0), &tr);
	EXPECT_TRUE(g.is_zero());
	EXPECT_EQ(tr.iterations(), 0);
}

TEST(GaugeDescend, RejectsNonGauge) {
	auto fx = stabilizer_fixture(2, 3, Orientation::algebra, 1);
	auto setup = RetractionSetup::make(fx.big, fx.small);
	try {
		// h gauges y to x, not x to y
		rectify_pair(setup, fx.x, fx.y, fx.h.with_context(fx.big));
		FAIL() << "expected RectifyError";
	} catch (const RectifyError& e) {
		EXPECT_GE(e.arity, 2);
	}
}

TEST(GaugeDescend, RejectsNonMc) {
	auto bad = broken_mc_fixture().mc;
	auto setup = RetractionSetup::for_context(bad.context());
	try {
		gauge_descend(setup, bad, ConvElement(setup.big, 0));
		FAIL() << "expected RectifyError";
	} catch (const RectifyError& e) {
		EXPECT_EQ(e.arity, 3);
	}
}

TEST(RectifyPair, SameStructureZeroGauge) {
	auto m = random_c_infinity(2, 4, Orientation::algebra, 3).mc;
	auto setup = RetractionSetup::for_context(m.context());
	auto g = rectify_pair(setup, m, m, ConvElement(setup.big, 0));
	EXPECT_TRUE(g.is_zero());
}

TEST(RectifyPair, CommutativeGaugeClosesInOneStep) {
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto m = random_c_infinity(3, 4, o, 11).mc;
		auto setup = RetractionSetup::for_context(m.context());
		std::mt19937_64 rng(5);
		auto h = random_element(setup.small, 0, rng, 2, 4, 0.4);
		auto y = gauge_act(h, m);
		DescentTrace tr;
		auto g = rectify_pair(setup, m, y, h.with_context(setup.big), &tr);
		EXPECT_EQ(gauge_act(g, m), y);
		EXPECT_FALSE(harrison_check(g));
		EXPECT_LE(tr.iterations(), 1);
	}
}

class Stabilizer : public testing::TestWithParam<Case> {};

TEST_P(Stabilizer, FixtureIsHonest) {
	auto p = GetParam();
	auto fx = stabilizer_fixture(p.dim, p.N, p.o, p.seed);
	auto yb = fx.y.with_context(fx.big);
	EXPECT_EQ(gauge_act(fx.c, yb), yb);
	EXPECT_TRUE(harrison_check(fx.c));
	EXPECT_TRUE(harrison_check(fx.a));
	EXPECT_FALSE(harrison_check(fx.h));
	EXPECT_TRUE(is_mc(fx.x));
	EXPECT_FALSE(flavor_witness(fx.x));
	EXPECT_EQ(gauge_act(fx.a, fx.x.with_context(fx.big)), yb);
}

TEST_P(Stabilizer, RectifyPairRecoversCommutativeGauge) {
	auto p = GetParam();
	auto fx = stabilizer_fixture(p.dim, p.N, p.o, p.seed);
	auto setup = RetractionSetup::make(fx.big, fx.small);
	DescentTrace tr;
	auto g = rectify_pair(setup, fx.x, fx.y, fx.a, &tr);
	EXPECT_EQ(gauge_act(g, fx.x), fx.y);
	EXPECT_FALSE(harrison_check(g));
	EXPECT_LE(tr.iterations(), p.N - 1);
	for (auto& st : tr.steps) {
		EXPECT_GE(st.fd_s, st.n);
		EXPECT_GE(st.fd_x, st.n);
		EXPECT_GE(st.fd_da, st.n);
	}
}

TEST_P(Stabilizer, DriverRectifies) {
	auto p = GetParam();
	auto fx = stabilizer_fixture(p.dim, p.N, p.o, p.seed);
	InftyStructure m{fx.x}, m2{fx.y};
	auto phi = fx.phi();
	ASSERT_TRUE(harrison_check(phi.f));
	auto psi = theorem_a_driver(m, m2, phi);
	EXPECT_FALSE(harrison_check(psi.f));
	EXPECT_EQ(transport_structure(psi, m).mc, fx.y);
}

INSTANTIATE_TEST_SUITE_P(All, Stabilizer, testing::ValuesIn(all_cases()), case_name);

TEST(RectifyDriver, IdentityGivesIdentity) {
	auto m = random_c_infinity(2, 4, Orientation::algebra, 9);
	auto psi = theorem_a_driver(m, m, Isotopy::identity(m.context()));
	EXPECT_TRUE(psi.f.is_zero());
}

TEST(RectifyDriver, CommutativeIsotopyKeepsTransport) {
	auto m = random_c_infinity(2, 4, Orientation::coalgebra, 13);
	std::mt19937_64 rng(2);
	auto phi = isotopy_from_gauge(random_element(m.context(), 0, rng, 2, 4, 0.4));
	auto m2 = transport_structure(phi, m);
	auto psi = theorem_a_driver(m, m2, phi);
	EXPECT_FALSE(harrison_check(psi.f));
	EXPECT_EQ(transport_structure(psi, m).mc, m2.mc);
}

TEST(RectifyDriver, RejectsWrongTarget) {
	auto fx = stabilizer_fixture(2, 3, Orientation::algebra, 4);
	EXPECT_THROW(theorem_a_driver(InftyStructure{fx.x}, InftyStructure{fx.x}, fx.phi()), RectifyError);
}

TEST(Fixtures, RandomCInfinityIsDeterministic) {
	auto a = random_c_infinity(3, 4, Orientation::algebra, 42).mc;
	auto b = random_c_infinity(3, 4, Orientation::algebra, 42).mc;
	EXPECT_EQ(a, b);
	EXPECT_TRUE(is_mc(a));
	EXPECT_FALSE(harrison_check(a));
}

// With arity_max <= 4 the first retracted gauge is already exact (its error
// sits in arities that only reach truncated outputs); deeper truncations make
// the loop run more than once.
TEST(GaugeDescend, DeepTruncationIteratesMoreThanOnce) {
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto fx = stabilizer_fixture(3, 5, o, 0);
		auto setup = RetractionSetup::make(fx.big, fx.small);
		DescentTrace tr;
		auto g = rectify_pair(setup, fx.x, fx.y, fx.a, &tr);
		EXPECT_EQ(gauge_act(g, fx.x), fx.y);
		EXPECT_FALSE(harrison_check(g));
		EXPECT_GE(tr.iterations(), 2) << tr.format();
		EXPECT_LE(tr.iterations(), 4);
	}
}
