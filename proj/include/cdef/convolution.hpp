// Truncated convolution dg Lie algebras of multilinear maps on a graded space.
//
// Components are maps on the shifted space (sV for the algebra orientation,
// s^{-1}V for the coalgebra orientation), so an A-infinity structure is a
// single element of degree -1 and the bracket carries only Koszul signs.
#pragma once

#include "cdef/exactcore.hpp"
#include "cdef/words.hpp"

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>

namespace cdef {

enum class Flavor { A, C, suA, suC };

const char* to_string(Flavor f);
Flavor parse_flavor(const std::string& s);
bool is_commutative(Flavor f);
bool is_strictly_unital(Flavor f);
// Every element admissible for `inner` is admissible for `outer`.
bool flavor_contains(Flavor outer, Flavor inner);
Flavor commutative_counterpart(Flavor f);
Flavor associative_counterpart(Flavor f);

using Components = std::map<int, MultilinearMap>;

struct ConvContext;
using ContextPtr = std::shared_ptr<const ConvContext>;

struct ConvContext {
	SpacePtr space;   // V, as the user sees it
	SpacePtr shifted; // the space the components act on
	Orientation orientation = Orientation::algebra;
	Flavor flavor = Flavor::A;
	int arity_max = 4;
	// The base differential is [delta, -] for this degree -1 element, which is
	// itself Maurer-Cartan (zero, an internal differential, mu0, or a twist).
	Components delta;
	std::optional<int> unit; // index in V of the strict unit

	static ContextPtr make(SpacePtr space, Orientation o, Flavor f, int arity_max);
	ContextPtr with_flavor(Flavor f) const;
	ContextPtr with_delta(Components d) const;
	ContextPtr with_arity_max(int n) const;

	// Same graded Lie algebra (space, orientation, truncation).
	bool same_ambient(const ConvContext& o) const;
	bool operator==(const ConvContext& o) const;
	// Shift applied to V: +1 for algebras, -1 for coalgebras.
	int shift() const { return orientation == Orientation::algebra ? 1 : -1; }
};

class ConvElement {
public:
	static constexpr int kInfinity = std::numeric_limits<int>::max();

	ConvElement() = default;
	ConvElement(ContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}
	ConvElement(ContextPtr ctx, int degree, Components comps);

	const ContextPtr& context() const { return ctx_; }
	int degree() const { return degree_; }
	const Components& components() const { return comps_; }
	// Zero map of the right shape when the component is absent.
	MultilinearMap component(int arity) const;
	void set_component(MultilinearMap f);
	void add_component(const MultilinearMap& f, const Rational& c = 1);
	ConvElement with_context(ContextPtr ctx) const;

	bool is_zero() const { return comps_.empty(); }
	// Components of arity > n removed.
	ConvElement truncated(int n) const;
	// Only the components of arity in [lo, hi].
	ConvElement arity_range(int lo, int hi) const;

	ConvElement& operator+=(const ConvElement& o);
	ConvElement& operator-=(const ConvElement& o);
	ConvElement operator+(const ConvElement& o) const;
	ConvElement operator-(const ConvElement& o) const;
	ConvElement operator-() const;
	ConvElement operator*(const Rational& c) const;
	bool operator==(const ConvElement& o) const;

private:
	ContextPtr ctx_;
	int degree_ = 0;
	Components comps_;
};

ConvElement operator*(const Rational& c, const ConvElement& f);
std::ostream& operator<<(std::ostream& os, const ConvElement& f);

ConvElement base_differential_element(const ContextPtr& ctx);

// Context for a combination of f and g: the more permissive flavor wins.
ContextPtr join_context(const ContextPtr& a, const ContextPtr& b);

ConvElement star(const ConvElement& f, const ConvElement& g);
ConvElement bracket(const ConvElement& f, const ConvElement& g);
// d(f) = [delta, f] in f's context.
ConvElement differential(const ConvElement& f);
ConvElement mc_defect(const ConvElement& x);
bool is_mc(const ConvElement& x);
// Context whose base differential is d + [x, -]. Throws if x is not MC.
ContextPtr twist(const ContextPtr& ctx, const ConvElement& x);
ConvElement bch(const ConvElement& a, const ConvElement& b);
ConvElement gauge_act(const ConvElement& a, const ConvElement& x);
int filtration_degree(const ConvElement& f);

// Homogeneous components Z_1..Z_w of log(exp(a) exp(b)) in the free
// associative algebra on letters 0 (= a) and 1 (= b).
using Word = std::vector<int>;
using FreePoly = std::map<Word, Rational>;
const std::vector<FreePoly>& bch_series(int weight);

// Where an element leaves its flavor: shuffle products or the unit line.
struct FlavorWitness {
	int arity = 0;
	std::string reason;
	Tuple tuple; // offending input tuple (tuple side)
	int p = 0, q = 0;
};
std::optional<FlavorWitness> flavor_witness(const ConvElement& f);

// Shuffle-product annihilation of a single component, with witness.
struct HarrisonWitness {
	int p = 0, q = 0;
	Tuple tuple;
};
std::optional<HarrisonWitness> harrison_witness(const MultilinearMap& f);

// Project onto the flavor: Eulerian projection for commutative flavors,
// zeroing unit-line entries for strictly unital flavors.
ConvElement project_to_flavor(const ConvElement& f);

// Unshifted <-> shifted components. For the algebra orientation
// m~(sx_1..sx_n) = (-1)^{(n-1)(n-2)/2 + sum_j (n-j)(|x_j|+1)} s m(x_1..x_n);
// for the coalgebra orientation the sign is (-1)^{sum_j (n-j)|y_j|} over the
// unshifted output degrees, with no arity term. Either way MC elements
// unshift to the usual Stasheff signs
// sum (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0, with m_1, m_2 unchanged.
MultilinearMap shift_map(const MultilinearMap& m, const ContextPtr& ctx);
MultilinearMap unshift_map(const MultilinearMap& m, const ContextPtr& ctx);

// Seeded random element. Entries are dense with probability `density`,
// coefficients are small rationals; the result is projected to the flavor.
ConvElement random_element(const ContextPtr& ctx, int degree, std::mt19937_64& rng, int min_arity = 2,
                           int max_arity = -1, double density = 0.5);
Rational random_rational(std::mt19937_64& rng);

} // namespace cdef
