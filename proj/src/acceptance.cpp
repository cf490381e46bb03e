#include "cdef/acceptance.hpp"

#include "cdef/fixtures.hpp"
#include "cdef/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace cdef {

std::string CriterionResult::line() const {
	std::ostringstream os;
	os << (pass ? "PASS " : "FAIL ") << id << " " << name << " (" << std::fixed << std::setprecision(2) << seconds
	   << " s, limit " << std::setprecision(0) << limit_seconds << " s): " << detail;
	return os.str();
}

namespace {

// A failed check inside a criterion; the message becomes the FAIL detail.
struct Violation : Error {
	using Error::Error;
};

void expect(bool ok, const std::string& what) {
	if (!ok) throw Violation(what);
}

std::string perm_list(int n) { return "n <= " + std::to_string(n); }

SpacePtr three_space() { return make_space({{"x", 0}, {"y", 1}, {"z", -1}}); }

int sgn(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

// ---------------------------------------------------------------- 1

std::string eulerian_system() {
	const int N = 6;
	for (int n = 1; n <= N; ++n) {
		const auto e = eulerian_idempotents(n);
		GroupAlgebraElement sum(n);
		for (int k = 0; k < n; ++k) {
			sum += e[k];
			for (int l = 0; l < n; ++l) {
				const auto prod = e[k] * e[l];
				expect(k == l ? prod == e[k] : prod.is_zero(),
				       "e(" + std::to_string(k + 1) + ") e(" + std::to_string(l + 1) + ") wrong at n = " + std::to_string(n));
			}
		}
		expect(sum == GroupAlgebraElement::unit(n), "idempotents do not sum to the identity at n = " + std::to_string(n));
		long fact = 1;
		for (int i = 2; i < n; ++i) fact *= i;
		expect(right_multiplication_rank(e[0]) == static_cast<std::size_t>(fact),
		       "rank of e(1) is not (n-1)! at n = " + std::to_string(n));
		for (int p = 1; p < n; ++p)
			expect((e[0] * shuffle_sum(p, n - p)).is_zero(),
			       "e(1) does not kill the (" + std::to_string(p) + "," + std::to_string(n - p) + ") shuffles");
	}
	return "orthogonality, completeness, rank (n-1)!, shuffle annihilation for " + perm_list(N);
}

// ---------------------------------------------------------------- 2

std::string retraction_laws(std::uint64_t seed) {
	std::mt19937_64 rng(seed ^ 0x2222);
	const int pairs = 200;
	int checked = 0, nontrivial = 0;
	for (auto o : {Orientation::algebra, Orientation::coalgebra}) {
		auto ctx = ConvContext::make(three_space(), o, Flavor::A, 5);
		auto cctx = commutative_context(ctx);
		for (int trial = 0; trial < pairs / 2; ++trial, ++checked) {
			auto x = random_element(ctx, static_cast<int>(rng() % 2) - 1, rng, 2, 5, 0.1);
			auto y = random_element(cctx, static_cast<int>(rng() % 2) - 1, rng, 2, 3, 0.3);
			const auto sx = pbw_retraction(x, cctx);
			const auto xy = bracket(x, y.with_context(ctx));
			nontrivial += !xy.is_zero();
			expect(pbw_retraction(xy, cctx) == bracket(sx, y),
			       std::string("module map fails, ") + to_string(o) + " trial " + std::to_string(trial));
			expect(filtration_degree(sx) >= filtration_degree(x), "filtration not preserved");
			expect(pbw_retraction(y.with_context(ctx), cctx) == y, "commutative element moved");
			expect(pbw_retraction(sx.with_context(ctx), cctx) == sx, "retraction is not idempotent");
		}
	}
	auto V = make_space({{"1", 0}, {"x", 0}, {"y", 1}});
	auto su = su_context(V, "1", Flavor::A, 5);
	auto suc = commutative_context(su);
	for (int trial = 0; trial < 20; ++trial) {
		auto f = random_element(su, static_cast<int>(rng() % 2) - 1, rng, 2, 5, 0.2);
		expect(!flavor_witness(pbw_retraction(f, suc)), "strictly unital subcomplex not preserved");
	}
	expect(4 * nontrivial >= 3 * checked, "too many samples with a zero bracket");
	return std::to_string(checked) + " pairs at arity <= 5 on a 3-dim space, both orientations (" +
	       std::to_string(nontrivial) + " with nonzero bracket), 20 strictly unital samples";
}

// ---------------------------------------------------------------- 3

std::string convolution_axioms(std::uint64_t seed) {
	std::mt19937_64 rng(seed ^ 0x3333);
	const int triples = 100;
	int nontrivial = 0;
	for (int trial = 0; trial < triples; ++trial) {
		const auto o = trial % 2 ? Orientation::coalgebra : Orientation::algebra;
		// twisted by a C-infinity structure so that d is far from zero
		const auto m = random_c_infinity(3, 4, o, seed + static_cast<std::uint64_t>(trial));
		const auto ctx = twist(m.context()->with_flavor(Flavor::A), m.mc.with_context(m.context()->with_flavor(Flavor::A)));
		const int df = static_cast<int>(rng() % 3) - 1, dg = static_cast<int>(rng() % 3) - 1,
		          dh = static_cast<int>(rng() % 3) - 1;
		auto f = random_element(ctx, df, rng, 2, 4, 0.3), g = random_element(ctx, dg, rng, 2, 4, 0.3),
		     h = random_element(ctx, dh, rng, 2, 4, 0.3);
		nontrivial += !bracket(f, bracket(g, h)).is_zero();
		const std::string at = " at triple " + std::to_string(trial);
		expect(bracket(f, g) == bracket(g, f) * -sgn(df, dg), "antisymmetry" + at);
		expect(bracket(f, bracket(g, h)) == bracket(bracket(f, g), h) + bracket(g, bracket(f, h)) * sgn(df, dg),
		       "Jacobi" + at);
		expect(differential(bracket(f, g)) == bracket(differential(f), g) + bracket(f, differential(g)) * sgn(df, 1),
		       "Leibniz" + at);
		expect(differential(differential(f)).is_zero(), "d^2" + at);
		const auto fb = filtration_degree(bracket(f, g));
		const auto ff = filtration_degree(f), fg = filtration_degree(g);
		expect(ff == ConvElement::kInfinity || fg == ConvElement::kInfinity || fb >= ff + fg, "filtration" + at);
	}
	expect(2 * nontrivial >= triples, "too many triples with a zero double bracket");
	return std::to_string(triples) + " triples at arity <= 4 in twisted complexes, both orientations (" +
	       std::to_string(nontrivial) + " with nonzero [f,[g,h]])";
}

// ---------------------------------------------------------------- 4

// Truncated series in the free associative algebra on letters 0 and 1.
FreePoly mul(const FreePoly& P, const FreePoly& Q, int W) {
	FreePoly r;
	for (auto& [u, x] : P)
		for (auto& [v, y] : Q) {
			if (static_cast<int>(u.size() + v.size()) > W) continue;
			Word uv = u;
			uv.insert(uv.end(), v.begin(), v.end());
			r[uv] += x * y;
		}
	std::erase_if(r, [](auto& kv) { return kv.second == 0; });
	return r;
}

FreePoly add(FreePoly P, const FreePoly& Q, const Rational& c) {
	for (auto& [w, x] : Q) P[w] += x * c;
	std::erase_if(P, [](auto& kv) { return kv.second == 0; });
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

std::string gauge_bch(std::uint64_t seed) {
	const int W = 5;
	const auto oracle = log_series(mul(exp_series(0, W), exp_series(1, W), W), W);
	FreePoly all;
	for (int n = 1; n <= W; ++n) all = add(all, bch_series(W)[n], 1);
	expect(all == oracle, "BCH series differs from log(exp a exp b) up to weight 5");
	const FreePoly a{{{0}, 1}}, b{{{1}, 1}};
	auto comm = [](const FreePoly& P, const FreePoly& Q) { return add(mul(P, Q, 9), mul(Q, P, 9), -1); };
	const auto ab = comm(a, b);
	expect(bch_series(3)[3] == add(add(FreePoly{}, comm(a, ab), Rational(1, 12)), comm(b, ab), Rational(-1, 12)),
	       "weight-3 coefficients are not +-1/12");

	std::mt19937_64 rng(seed ^ 0x4444);
	const int trials = 20;
	for (int trial = 0; trial < trials; ++trial) {
		const auto o = trial % 2 ? Orientation::coalgebra : Orientation::algebra;
		const auto base = base_algebra(3, o);
		auto ctx = ConvContext::make(base.space, o, Flavor::A, 4);
		const auto x = from_binary_algebra(ctx, base.product).mc;
		auto p = random_element(ctx, 0, rng, 2, 4, 0.15), q = random_element(ctx, 0, rng, 2, 4, 0.15);
		const auto y = gauge_act(q, x);
		const std::string at = " at trial " + std::to_string(trial);
		expect(is_mc(y), "gauge action leaves the MC locus" + at);
		expect(gauge_act(bch(p, q), x) == gauge_act(p, y), "exp(bch(a,b)) != exp(a) exp(b)" + at);
		expect(bch(p, -p).is_zero(), "bch(a,-a) != 0" + at);
	}
	return "log oracle to weight 5, +-1/12 at weight 3, " + std::to_string(trials) + " gauge/BCH trials at arity <= 4";
}

// ---------------------------------------------------------------- 5

std::string rectification(std::uint64_t seed) {
	int count = 0, max_iter = 0;
	for (auto o : {Orientation::algebra, Orientation::coalgebra})
		for (int dim : {2, 3})
			for (int N : {3, 4})
				for (std::uint64_t k = 0; k < 2; ++k) {
					const auto s = seed * 1000 + 7 + static_cast<std::uint64_t>(dim * 10 + N) + 100 * k;
					const auto fx = stabilizer_fixture(dim, N, o, s);
					const std::string at = std::string(" (") + to_string(o) + ", dim " + std::to_string(dim) + ", N " +
					                       std::to_string(N) + ", seed " + std::to_string(s) + ")";
					expect(harrison_check(fx.a).has_value(), "fixture gauge is already commutative" + at);
					DescentTrace tr;
					const auto setup = RetractionSetup::make(fx.big, fx.small);
					const auto g = rectify_pair(setup, fx.x, fx.y, fx.a, &tr);
					expect(tr.iterations() <= N - 1, "more than arity_max - 1 iterations" + at);
					for (auto& st : tr.steps)
						expect(st.fd_s >= st.n && st.fd_x >= st.n && st.fd_da >= st.n, "step invariant" + at);
					expect(gauge_act(g, fx.x) == fx.y, "gauge does not reach y" + at);
					expect(!harrison_check(g), "output gauge not commutative" + at);
					const auto psi = theorem_a_driver(InftyStructure{fx.x}, InftyStructure{fx.y}, fx.phi());
					expect(!harrison_check(psi.f), "output isotopy not commutative" + at);
					expect(transport_structure(psi, InftyStructure{fx.x}).mc == fx.y, "isotopy does not transport x to y" + at);
					max_iter = std::max(max_iter, tr.iterations());
					++count;
				}
	return std::to_string(count) + " stabilizer fixtures, at most " + std::to_string(max_iter) +
	       " iteration(s), gauge and isotopy verified";
}

// ---------------------------------------------------------------- 6

std::string isotopy_dictionary(std::uint64_t seed) {
	std::mt19937_64 rng(seed ^ 0x6666);
	const int pairs = 50;
	for (int trial = 0; trial < pairs; ++trial) {
		const auto o = trial % 2 ? Orientation::coalgebra : Orientation::algebra;
		const auto m = random_c_infinity(2 + trial % 2, 4, o, seed + static_cast<std::uint64_t>(trial));
		const auto big = m.context()->with_flavor(Flavor::A);
		const InftyStructure mb{m.mc.with_context(big)};
		const auto a = random_element(big, 0, rng, 2, 4, 0.2);
		expect(transport_structure(isotopy_from_gauge(a), mb).mc == gauge_act(a, mb.mc),
		       "transport differs from gauge action at pair " + std::to_string(trial));
	}
	return std::to_string(pairs) + " pairs at arity <= 4";
}

// ---------------------------------------------------------------- 7

std::string pbw_uea() {
	const auto h = heisenberg_lie();
	const int W = 4;
	const auto dims = uea(h, W).weight_dims();
	// independent count: monomials in x, y (weight 1) and z (weight 2)
	for (int w = 0; w <= W; ++w) {
		std::size_t sym = 0;
		for (int c = 0; 2 * c <= w; ++c) sym += static_cast<std::size_t>(w - 2 * c + 1);
		expect(dims.count(w) && dims.at(w) == sym, "U(heisenberg) weight " + std::to_string(w) + " differs from Sym");
	}
	const auto r = compare_cobar_with_uea(ce_chains(h, 3), 3);
	expect(r.algebra_map, "(Omega C)+ -> U L C is not multiplicative");
	expect(r.chain_map, "(Omega C)+ -> U L C does not commute with d");
	expect(r.bijective, "(Omega C)+ -> U L C is not bijective");
	const auto U = uea(h, 3);
	const auto fx = fix_augmentation(h, U, {Rational(1), Rational(-3), Rational(0)}, 3);
	const auto fa = fix_augmentation(abelian_lie(1), uea(abelian_lie(1), 3), {Rational(2)}, 3);
	return "dims match Sym to weight 4, cobar/UEA isomorphism at weight 3, eps = eps_bar o alpha on " +
	       std::to_string(fx.checked_monomials + fa.checked_monomials) + " monomials";
}

// ---------------------------------------------------------------- 8

std::string completion_suite() {
	for (const auto& [name, g] : {std::pair{std::string("abelian-1d"), abelian_lie(1)},
	                              std::pair{std::string("heisenberg"), heisenberg_lie()}}) {
		const auto m = homotopy_completion_model(g, 4);
		const auto rep = counit_as_filtered_map(m, 3).check();
		expect(rep.pass(), name + ": Q g -> g fails at p = " + std::to_string(rep.first_failure().value_or(0)));
	}
	const auto h = heisenberg_lie();
	const auto w = commensurability(homotopy_completion_model(h, 4), h);
	expect(w.holds(), "heisenberg: F and G are not commensurable within the bounds");
	const auto n = degreewise_nilpotence(homotopy_completion_model(negative_graded_lie(), 4));
	expect(n.holds, "negative-graded: Q g is not degreewise nilpotent");
	return "filtered qi for abelian-1d and heisenberg (W 4, p <= 3), " +
	       std::to_string(w.g_inside_f.size() + w.f_inside_g.size()) + " commensurability rows, nilpotence in " +
	       std::to_string(n.max_level_by_degree.size()) + " degrees";
}

// ---------------------------------------------------------------- 9

std::string ce_bar() {
	const int W = 4;
	for (const auto& [name, g] : {std::pair{std::string("abelian-1d"), abelian_lie(1)},
	                              std::pair{std::string("heisenberg"), heisenberg_lie()}}) {
		const auto ce = homology_dims(ce_chains(g, W).complex());
		const auto b = homology_dims(bar(uea(g, W), W).complex());
		std::map<Bigrade, std::size_t> lhs, rhs;
		for (auto& [k, v] : ce)
			if (v) lhs[k] = v;
		for (auto& [k, v] : b)
			if (v && k.second <= W) rhs[k] = v;
		expect(lhs == rhs, name + ": CE and bar homology differ");
	}
	return "abelian-1d and heisenberg agree in every (degree, weight) up to weight 4";
}

// ---------------------------------------------------------------- 10

struct Controls {
	InftyStructure mc;
	ConvElement harrison;
	FilteredChainMap qi;
	BinaryAlgebraDoc assoc;
	std::string source;
};

Controls load_controls(const std::string& dir) {
	Controls c;
	if (dir.empty()) {
		c.mc = broken_mc_fixture();
		c.harrison = broken_harrison_fixture();
		c.qi = broken_filtered_qi_fixture();
		c.assoc.product = broken_associativity_fixture(&c.assoc.space);
		c.source = "generated";
		return c;
	}
	auto path = [&](const char* f) { return dir + "/" + f; };
	c.mc = InftyStructure{element_from_json(read_json_file(path(kBrokenMcFile))).element};
	c.harrison = element_from_json(read_json_file(path(kBrokenHarrisonFile))).element;
	c.qi = filtered_map_from_json(read_json_file(path(kBrokenFilteredQiFile)));
	c.assoc = algebra_from_json(read_json_file(path(kBrokenAssociativityFile)));
	c.source = "shipped";
	return c;
}

std::string negative_controls(const std::string& dir) {
	const auto c = load_controls(dir);
	std::vector<std::string> seen;
	const auto defect = mc_defect(c.mc.mc);
	expect(!defect.is_zero(), "mc_defect accepts the broken structure");
	seen.push_back("mc_defect at arity " + std::to_string(defect.components().begin()->first));
	const auto hw = harrison_check(c.harrison);
	expect(hw.has_value(), "harrison_check accepts the broken gauge");
	seen.push_back("harrison_check at arity " + std::to_string(hw->arity) + " (" + std::to_string(hw->p) + "," +
	               std::to_string(hw->q) + ")");
	const auto rep = c.qi.check();
	expect(!rep.pass(), "filtered_qi_check accepts the broken map");
	seen.push_back("filtered_qi_check at p = " + std::to_string(*rep.first_failure()));
	const auto af = c.assoc.check();
	expect(af && af->check == "associativity", "the associativity check accepts the broken product");
	seen.push_back(af->describe(*c.assoc.space));
	std::string out = c.source + " controls rejected: ";
	for (std::size_t i = 0; i < seen.size(); ++i) out += (i ? "; " : "") + seen[i];
	return out;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress) {
	struct Spec {
		int id;
		const char* name;
		double limit;
		std::function<std::string()> run;
	};
	const auto seed = opts.seed;
	const std::vector<Spec> specs{
	    {1, "eulerian-system", 30, [] { return eulerian_system(); }},
	    {2, "retraction-laws", 120, [seed] { return retraction_laws(seed); }},
	    {3, "convolution-dg-lie", 120, [seed] { return convolution_axioms(seed); }},
	    {4, "gauge-bch-coherence", 120, [seed] { return gauge_bch(seed); }},
	    {5, "rectification", 300, [seed] { return rectification(seed); }},
	    {6, "isotopy-dictionary", 120, [seed] { return isotopy_dictionary(seed); }},
	    {7, "pbw-uea", 180, [] { return pbw_uea(); }},
	    {8, "filtration-completion", 300, [] { return completion_suite(); }},
	    {9, "ce-bar-comparison", 180, [] { return ce_bar(); }},
	    {10, "negative-controls", 60, [&opts] { return negative_controls(opts.fixtures_dir); }},
	};
	std::vector<CriterionResult> out;
	for (auto& s : specs) {
		if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), s.id) == opts.only.end()) continue;
		CriterionResult r;
		r.id = s.id;
		r.name = s.name;
		r.limit_seconds = s.limit;
		const auto t0 = std::chrono::steady_clock::now();
		try {
			r.detail = s.run();
			r.pass = true;
		} catch (const std::exception& e) {
			r.detail = e.what();
		}
		r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		if (r.pass && r.seconds > r.limit_seconds) {
			r.pass = false;
			r.detail = "over the time limit; " + r.detail;
		}
		if (progress) *progress << r.line() << std::endl;
		out.push_back(std::move(r));
	}
	return out;
}

} // namespace cdef
